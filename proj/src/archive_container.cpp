#include "qd/archive_container.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qd/parallel.hpp"

namespace qd {

bool exclusive_eps_dominates(double n1, double q1, double n2, double q2, double epsilon)
{
    if (q1 <= 0.0 || q2 <= 0.0)
        throw std::invalid_argument("exclusive eps-dominance requires strictly positive qualities");
    if (n1 < 0.0 || n2 < 0.0)
        throw std::invalid_argument("exclusive eps-dominance requires non-negative novelties");
    return n1 >= (1.0 - epsilon) * n2 && q1 >= (1.0 - epsilon) * q2 &&
           (n1 - n2) * q2 > -(q1 - q2) * n2;
}

namespace {

    bool closer(const ArchiveContainer::Neighbor& a, const ArchiveContainer::Neighbor& b)
    {
        return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
    }

    // Mean over the first k neighbors, summed in ascending (dist, id) order
    // so the indexed and exhaustive searches produce bit-identical results.
    KnnStats stats_from_sorted(const std::vector<ArchiveContainer::Neighbor>& sorted,
                               double fitness, int k)
    {
        KnnStats st;
        st.found = std::min<int>(k, static_cast<int>(sorted.size()));
        double sum = 0.0;
        for (int i = 0; i < st.found; ++i) {
            sum += sorted[i].dist;
            if (sorted[i].fitness < fitness)
                ++st.lower_fitness;
        }
        st.mean_distance = st.found > 0 ? sum / st.found : 0.0;
        return st;
    }

} // namespace

// Uniform bucket grid over [0,1]^D; queries expand Chebyshev rings of
// buckets until the ring bound exceeds the current kth distance, which makes
// them exact.
struct ArchiveContainer::BucketIndex {
    int per_dim = 0; // 0 = not built
    double cell_w = 1.0;
    std::size_t dims = 1;
    std::size_t built_at_size = 0;
    std::vector<std::vector<std::uint32_t>> buckets;

    static int bucket_coord(double c, int per_dim)
    {
        c = c < 0.0 ? 0.0 : (c > 1.0 ? 1.0 : c);
        int b = static_cast<int>(c * per_dim);
        return b >= per_dim ? per_dim - 1 : b;
    }

    std::size_t flat_of(const Descriptor& desc) const
    {
        std::size_t f = 0;
        for (std::size_t d = 0; d < dims; ++d)
            f = f * static_cast<std::size_t>(per_dim) +
                static_cast<std::size_t>(bucket_coord(desc.coords[d], per_dim));
        return f;
    }

    void build(const std::vector<Individual>& members, std::size_t descriptor_dim)
    {
        dims = descriptor_dim;
        double target = std::pow(static_cast<double>(std::max<std::size_t>(members.size(), 1)),
                                 1.0 / static_cast<double>(dims));
        per_dim = std::clamp(static_cast<int>(target / 2.0), 1, 64);
        cell_w = 1.0 / per_dim;
        built_at_size = members.size();
        std::size_t total = 1;
        for (std::size_t d = 0; d < dims; ++d)
            total *= static_cast<std::size_t>(per_dim);
        buckets.assign(total, {});
        for (std::size_t i = 0; i < members.size(); ++i)
            buckets[flat_of(members[i].descriptor)].push_back(static_cast<std::uint32_t>(i));
    }

    void insert(const Individual& ind, std::uint32_t slot)
    {
        buckets[flat_of(ind.descriptor)].push_back(slot);
    }

    void erase(const Individual& ind, std::uint32_t slot)
    {
        auto& bucket = buckets[flat_of(ind.descriptor)];
        auto it = std::find(bucket.begin(), bucket.end(), slot);
        if (it != bucket.end()) {
            *it = bucket.back();
            bucket.pop_back();
        }
    }

    std::vector<Neighbor> knn(const std::vector<Individual>& members, const Descriptor& desc,
                              int k, std::uint64_t exclude_a, std::uint64_t exclude_b) const
    {
        std::vector<int> home(dims);
        for (std::size_t d = 0; d < dims; ++d)
            home[d] = bucket_coord(desc.coords[d], per_dim);

        std::vector<Neighbor> best; // ascending (dist, id), size <= k
        best.reserve(k + 1);
        auto offer = [&](std::uint32_t slot) {
            const Individual& m = members[slot];
            if (m.id == exclude_a || m.id == exclude_b)
                return;
            Neighbor nb{euclidean(m.descriptor, desc), m.id, m.fitness};
            if (static_cast<int>(best.size()) == k && !closer(nb, best.back()))
                return;
            best.insert(std::upper_bound(best.begin(), best.end(), nb, closer), nb);
            if (static_cast<int>(best.size()) > k)
                best.pop_back();
        };

        int max_ring = 0;
        for (std::size_t d = 0; d < dims; ++d)
            max_ring = std::max({max_ring, home[d], per_dim - 1 - home[d]});

        std::vector<int> b(dims), lo(dims), hi(dims);
        for (int r = 0; r <= max_ring; ++r) {
            if (static_cast<int>(best.size()) == k && (r - 1) * cell_w > best.back().dist)
                break;
            for (std::size_t d = 0; d < dims; ++d) {
                lo[d] = std::max(0, home[d] - r);
                hi[d] = std::min(per_dim - 1, home[d] + r);
                b[d] = lo[d];
            }
            while (true) {
                int cheb = 0;
                for (std::size_t d = 0; d < dims; ++d)
                    cheb = std::max(cheb, std::abs(b[d] - home[d]));
                if (cheb == r) {
                    std::size_t f = 0;
                    for (std::size_t d = 0; d < dims; ++d)
                        f = f * static_cast<std::size_t>(per_dim) + static_cast<std::size_t>(b[d]);
                    for (std::uint32_t slot : buckets[f])
                        offer(slot);
                }
                std::size_t d = 0;
                while (d < dims && ++b[d] > hi[d]) {
                    b[d] = lo[d];
                    ++d;
                }
                if (d == dims)
                    break;
            }
        }
        return best;
    }
};

ArchiveContainer::ArchiveContainer(ArchiveParams params) : params_(std::move(params))
{
    if (params_.descriptor_dim < 1)
        throw std::invalid_argument("archive needs at least one descriptor dimension");
    if (params_.l <= 0.0)
        throw std::invalid_argument("archive distance threshold l must be positive");
    if (params_.epsilon < 0.0 || params_.epsilon >= 1.0)
        throw std::invalid_argument("epsilon must lie in [0,1)");
    if (params_.knn < 1)
        throw std::invalid_argument("neighbor count must be >= 1");
}

ArchiveContainer::~ArchiveContainer() = default;

double ArchiveContainer::max_novelty() const
{
    return std::sqrt(static_cast<double>(params_.descriptor_dim));
}

double ArchiveContainer::offset_quality(const Individual& ind) const
{
    return ind.fitness + params_.quality_offset;
}

std::vector<ArchiveContainer::Neighbor>
ArchiveContainer::nearest(const Descriptor& desc, int k, std::uint64_t exclude_a,
                          std::uint64_t exclude_b) const
{
    if (index_ != nullptr && index_->per_dim > 0)
        return index_->knn(members_, desc, k, exclude_a, exclude_b);
    std::vector<Neighbor> entries;
    entries.reserve(members_.size());
    for (const auto& m : members_) {
        if (m.id == exclude_a || m.id == exclude_b)
            continue;
        entries.push_back({euclidean(m.descriptor, desc), m.id, m.fitness});
    }
    std::size_t k_eff = std::min<std::size_t>(k, entries.size());
    std::partial_sort(entries.begin(), entries.begin() + k_eff, entries.end(), closer);
    entries.resize(k_eff);
    return entries;
}

KnnStats ArchiveContainer::knn_stats(const Descriptor& desc, double fitness,
                                     std::uint64_t exclude_a, std::uint64_t exclude_b) const
{
    return stats_from_sorted(nearest(desc, params_.knn, exclude_a, exclude_b), fitness,
                             params_.knn);
}

void ArchiveContainer::maybe_rebuild_index()
{
    if (!params_.use_spatial_index)
        return;
    if (index_ == nullptr)
        index_ = std::make_unique<BucketIndex>();
    // Retune the bucket width whenever the archive has grown substantially.
    if (index_->per_dim == 0 || members_.size() >= 2 * index_->built_at_size + 64)
        index_->build(members_, params_.descriptor_dim);
}

AddOutcome ArchiveContainer::add(const Individual& ind)
{
    if (offset_quality(ind) <= 0.0)
        throw std::invalid_argument("candidate quality must be positive after the offset");

    auto push = [&]() {
        auto slot = static_cast<std::uint32_t>(members_.size());
        slot_by_id_[ind.id] = slot;
        members_.push_back(ind);
        if (index_ != nullptr && index_->per_dim > 0)
            index_->insert(ind, slot);
        maybe_rebuild_index();
    };
    if (members_.empty()) {
        maybe_rebuild_index();
        push();
        return AddOutcome::added();
    }

    auto two = nearest(ind.descriptor, 2, 0, 0);
    double d1 = two[0].dist;
    if (d1 > params_.l) {
        push();
        return AddOutcome::added();
    }
    if (two.size() > 1 && two[1].dist <= params_.l)
        return AddOutcome::rejected("second-nearest neighbor within l");

    // Competition against the nearest: both contenders scored without it.
    std::size_t slot = slot_by_id_.at(two[0].id);
    const Individual incumbent = members_[slot];
    auto cand_stats = stats_from_sorted(
        nearest(ind.descriptor, params_.knn, ind.id, incumbent.id), ind.fitness, params_.knn);
    auto inc_stats = stats_from_sorted(
        nearest(incumbent.descriptor, params_.knn, incumbent.id, 0), incumbent.fitness,
        params_.knn);
    double cand_novelty = cand_stats.found > 0 ? cand_stats.mean_distance : max_novelty();
    double inc_novelty = inc_stats.found > 0 ? inc_stats.mean_distance : max_novelty();
    if (!exclusive_eps_dominates(cand_novelty, offset_quality(ind), inc_novelty,
                                 offset_quality(incumbent), params_.epsilon))
        return AddOutcome::rejected("does not exclusive-eps-dominate its nearest neighbor");

    slot_by_id_.erase(incumbent.id);
    if (index_ != nullptr && index_->per_dim > 0) {
        index_->erase(incumbent, static_cast<std::uint32_t>(slot));
        index_->insert(ind, static_cast<std::uint32_t>(slot));
    }
    members_[slot] = ind;
    slot_by_id_[ind.id] = slot;
    return AddOutcome::replaced(incumbent.id);
}

void ArchiveContainer::update()
{
    par::parallel_for(members_.size(), [&](std::size_t i) {
        auto st = knn_stats(members_[i].descriptor, members_[i].fitness, members_[i].id, 0);
        members_[i].novelty = st.found > 0 ? st.mean_distance : max_novelty();
        members_[i].local_quality = st.lower_fitness;
    });
}

std::vector<const Individual*> ArchiveContainer::members_by_id() const
{
    std::vector<const Individual*> out;
    out.reserve(members_.size());
    for (const auto& m : members_)
        out.push_back(&m);
    std::sort(out.begin(), out.end(),
              [](const Individual* a, const Individual* b) { return a->id < b->id; });
    return out;
}

Individual* ArchiveContainer::find(std::uint64_t id)
{
    auto it = slot_by_id_.find(id);
    return it == slot_by_id_.end() ? nullptr : &members_[it->second];
}

double ArchiveContainer::novelty_of(const Individual& ind) const
{
    auto st = knn_stats(ind.descriptor, ind.fitness, ind.id, 0);
    return st.found > 0 ? st.mean_distance : max_novelty();
}

int ArchiveContainer::local_quality_of(const Individual& ind) const
{
    return knn_stats(ind.descriptor, ind.fitness, ind.id, 0).lower_fitness;
}

} // namespace qd
