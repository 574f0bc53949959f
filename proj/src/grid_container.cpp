#include "qd/grid_container.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qd/parallel.hpp"

namespace qd {

std::vector<int> discretize(const Descriptor& desc, const std::vector<int>& resolution)
{
    std::vector<int> cell(desc.coords.size());
    for (std::size_t d = 0; d < desc.coords.size(); ++d) {
        double c = desc.coords[d];
        c = c < 0.0 ? 0.0 : (c > 1.0 ? 1.0 : c);
        int idx = static_cast<int>(std::floor(c * resolution[d]));
        cell[d] = std::clamp(idx, 0, resolution[d] - 1);
    }
    return cell;
}

GridContainer::GridContainer(GridParams params) : params_(std::move(params))
{
    if (params_.resolution.empty())
        throw std::invalid_argument("grid needs at least one dimension");
    std::size_t total = 1;
    strides_.resize(params_.resolution.size());
    for (std::size_t d = 0; d < params_.resolution.size(); ++d) {
        if (params_.resolution[d] < 1)
            throw std::invalid_argument("grid resolution must be >= 1 per dimension");
        strides_[d] = total;
        total *= static_cast<std::size_t>(params_.resolution[d]);
    }
    cells_.resize(total);
}

std::size_t GridContainer::flat_index(const std::vector<int>& cell_index) const
{
    std::size_t flat = 0;
    for (std::size_t d = 0; d < cell_index.size(); ++d)
        flat += strides_[d] * static_cast<std::size_t>(cell_index[d]);
    return flat;
}

AddOutcome GridContainer::add(const Individual& ind)
{
    std::size_t flat = flat_index(discretize(ind.descriptor, params_.resolution));
    auto& slot = cells_[flat];
    if (!slot.has_value()) {
        slot = ind;
        slot_by_id_[ind.id] = flat;
        ++count_;
        return AddOutcome::added();
    }
    if (ind.fitness > slot->fitness) {
        std::uint64_t evicted = slot->id;
        slot_by_id_.erase(evicted);
        slot = ind;
        slot_by_id_[ind.id] = flat;
        return AddOutcome::replaced(evicted);
    }
    return AddOutcome::rejected("cell holds an equal-or-better individual");
}

double GridContainer::subgrid_novelty(const std::vector<int>& center) const
{
    const auto& res = params_.resolution;
    const int k = params_.subgrid_depth;
    std::size_t dims = res.size();

    // Walk the (2k+1)^D window, truncated at the borders.
    std::vector<int> lo(dims), hi(dims), idx(dims);
    for (std::size_t d = 0; d < dims; ++d) {
        lo[d] = std::max(0, center[d] - k);
        hi[d] = std::min(res[d] - 1, center[d] + k);
        idx[d] = lo[d];
    }
    long total = 0, filled = 0;
    while (true) {
        ++total;
        if (cells_[flat_index(idx)].has_value())
            ++filled;
        std::size_t d = 0;
        while (d < dims && ++idx[d] > hi[d]) {
            idx[d] = lo[d];
            ++d;
        }
        if (d == dims)
            break;
    }
    return 1.0 - static_cast<double>(filled) / static_cast<double>(total);
}

double GridContainer::novelty_of(const Individual& ind) const
{
    return subgrid_novelty(discretize(ind.descriptor, params_.resolution));
}

int GridContainer::local_quality_of(const Individual& ind) const
{
    // k-nearest occupants by descriptor distance, ties broken by id.
    struct Entry {
        double dist;
        std::uint64_t id;
        double fitness;
    };
    std::vector<Entry> entries;
    entries.reserve(count_);
    for (const auto& slot : cells_) {
        if (!slot.has_value() || slot->id == ind.id)
            continue;
        entries.push_back({euclidean(slot->descriptor, ind.descriptor), slot->id, slot->fitness});
    }
    auto cmp = [](const Entry& a, const Entry& b) {
        return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
    };
    std::size_t k = std::min<std::size_t>(params_.knn, entries.size());
    std::partial_sort(entries.begin(), entries.begin() + k, entries.end(), cmp);
    int lower = 0;
    for (std::size_t i = 0; i < k; ++i)
        if (entries[i].fitness < ind.fitness)
            ++lower;
    return lower;
}

void GridContainer::update()
{
    std::vector<std::size_t> occupied;
    occupied.reserve(count_);
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (cells_[i].has_value())
            occupied.push_back(i);
    par::parallel_for(occupied.size(), [&](std::size_t i) {
        auto& ind = *cells_[occupied[i]];
        ind.novelty = subgrid_novelty(discretize(ind.descriptor, params_.resolution));
    });
}

std::vector<const Individual*> GridContainer::members_by_id() const
{
    std::vector<const Individual*> out;
    out.reserve(count_);
    for (const auto& slot : cells_)
        if (slot.has_value())
            out.push_back(&*slot);
    std::sort(out.begin(), out.end(),
              [](const Individual* a, const Individual* b) { return a->id < b->id; });
    return out;
}

Individual* GridContainer::find(std::uint64_t id)
{
    auto it = slot_by_id_.find(id);
    return it == slot_by_id_.end() ? nullptr : &*cells_[it->second];
}

std::string GridContainer::cell_label(const Individual& ind) const
{
    auto cell = discretize(ind.descriptor, params_.resolution);
    std::string label;
    for (std::size_t d = 0; d < cell.size(); ++d) {
        if (d > 0)
            label += ':';
        label += std::to_string(cell[d]);
    }
    return label;
}

} // namespace qd
