#ifndef QD_NSLC_HPP
#define QD_NSLC_HPP

#include "qd/core.hpp"

namespace qd {

/// Exploration archive of novelty search: append-only, members were novel
/// enough (novelty > rho) when inserted.
struct NoveltyArchive {
    std::vector<Individual> members;
    double rho = 0.01;
    int knn = 15;
    std::size_t descriptor_dim = 2;

    double max_novelty() const;
    KnnStats knn_stats(const Descriptor& desc, double fitness) const;
};

struct NslcState {
    Batch population;
    NoveltyArchive archive;
    std::unique_ptr<GridContainer> result_grid;
    long batches_without_addition = 0;
    std::uint64_t next_id = 1;
};

/// One NSLC generation: mutate the population, score parents + offspring
/// against the novelty archive, keep the NSGA-II survivors as the next
/// population, archive offspring above the rho threshold, offer every
/// offspring to the result grid, then adapt rho.
void nslc_step(NslcState& state, const RunConfig& cfg, const Task& task, long batch,
               RunStats& stats);

/// Full NSLC baseline run; the result grid is the delivered collection and
/// is measured by the same metrics as every other variant.
RunResult run_nslc(const RunConfig& cfg, const Task& task);

} // namespace qd

#endif
