#ifndef QD_ARCHIVE_CONTAINER_HPP
#define QD_ARCHIVE_CONTAINER_HPP

#include <memory>
#include <unordered_map>
#include <vector>

#include "qd/container.hpp"

namespace qd {

struct ArchiveParams {
    std::size_t descriptor_dim = 2;
    double l = 0.01;       // minimum inter-member descriptor distance
    double epsilon = 0.1;  // exclusive eps-dominance tolerance
    int knn = 15;          // neighbor count for novelty / local quality
    double quality_offset = 1.0;
    bool use_spatial_index = true; // fast path for update(); exhaustive scan is the reference
};

/// True iff x1 = (n1, q1) exclusive-eps-dominates x2 = (n2, q2):
///   n1 >= (1-eps) * n2,  q1 >= (1-eps) * q2,  (n1-n2)*q2 > -(q1-q2)*n2.
/// Both qualities must be strictly positive; throws std::invalid_argument
/// otherwise.
bool exclusive_eps_dominates(double n1, double q1, double n2, double q2, double epsilon);

/// kNN statistics of a query against a member set: mean distance over the k
/// nearest (ties broken by id) and how many of them have strictly lower
/// fitness than the query.
struct KnnStats {
    double mean_distance = 0.0;
    int lower_fitness = 0;
    int found = 0;
};

/// Unstructured container: members are kept pairwise further than l apart.
/// A candidate closer than l to its nearest neighbor may replace it when the
/// second-nearest is beyond l and the candidate exclusive-eps-dominates the
/// incumbent on (novelty, offset quality), both scored against the archive
/// without the incumbent.
class ArchiveContainer final : public Container {
public:
    explicit ArchiveContainer(ArchiveParams params);
    ~ArchiveContainer() override;

    AddOutcome add(const Individual& ind) override;
    void update() override;
    std::size_t size() const override { return members_.size(); }
    std::vector<const Individual*> members_by_id() const override;
    Individual* find(std::uint64_t id) override;
    double novelty_of(const Individual& ind) const override;
    int local_quality_of(const Individual& ind) const override;
    double quality_offset() const override { return params_.quality_offset; }
    bool tracks_total_novelty() const override { return true; }
    std::string cell_label(const Individual&) const override { return "—"; }

    const ArchiveParams& params() const { return params_; }
    const std::vector<Individual>& members() const { return members_; }

    /// Novelty of an empty-archive query: the descriptor-space diameter.
    double max_novelty() const;

    /// kNN statistics excluding up to two ids (the query's own record and,
    /// during replacement competition, the incumbent). Served by the bucket
    /// index when enabled, by the exhaustive reference scan otherwise; the
    /// two are bit-identical.
    KnnStats knn_stats(const Descriptor& desc, double fitness, std::uint64_t exclude_a,
                       std::uint64_t exclude_b) const;

    struct Neighbor {
        double dist;
        std::uint64_t id;
        double fitness;
    };

private:
    struct BucketIndex;

    std::vector<Neighbor> nearest(const Descriptor& desc, int k, std::uint64_t exclude_a,
                                  std::uint64_t exclude_b) const;
    void maybe_rebuild_index();
    double offset_quality(const Individual& ind) const;

    ArchiveParams params_;
    std::vector<Individual> members_;
    std::unordered_map<std::uint64_t, std::size_t> slot_by_id_;
    std::unique_ptr<BucketIndex> index_;
};

} // namespace qd

#endif
