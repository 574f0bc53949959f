#include "qd/nslc.hpp"

#include <algorithm>
#include <cmath>

#include "qd/pareto.hpp"
#include "qd/selection.hpp"

namespace qd {

double NoveltyArchive::max_novelty() const
{
    return std::sqrt(static_cast<double>(descriptor_dim));
}

KnnStats NoveltyArchive::knn_stats(const Descriptor& desc, double fitness) const
{
    struct Neighbor {
        double dist;
        std::uint64_t id;
        double fitness;
    };
    std::vector<Neighbor> entries;
    entries.reserve(members.size());
    for (const auto& m : members)
        entries.push_back({euclidean(m.descriptor, desc), m.id, m.fitness});
    auto cmp = [](const Neighbor& a, const Neighbor& b) {
        return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
    };
    std::size_t k = std::min<std::size_t>(knn, entries.size());
    std::partial_sort(entries.begin(), entries.begin() + k, entries.end(), cmp);
    KnnStats st;
    st.found = static_cast<int>(k);
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum += entries[i].dist;
        if (entries[i].fitness < fitness)
            ++st.lower_fitness;
    }
    st.mean_distance = k > 0 ? sum / static_cast<double>(k) : 0.0;
    return st;
}

namespace {

    void offer_to_grid(const Individual& ind, GridContainer& grid, RunStats& stats)
    {
        auto outcome = grid.add(ind);
        ++stats.evaluated;
        switch (outcome.kind) {
        case AddOutcome::Kind::AddedNew: ++stats.added; break;
        case AddOutcome::Kind::Replaced: ++stats.replaced; break;
        case AddOutcome::Kind::Rejected: ++stats.rejected; break;
        }
    }

    // Novelty and local quality of one batch against the exploration
    // archive; an empty archive yields the maximal novelty for everyone.
    void score_against_archive(Batch& batch, const NoveltyArchive& archive)
    {
        for (auto& ind : batch) {
            auto st = archive.knn_stats(ind.descriptor, ind.fitness);
            ind.novelty = st.found > 0 ? st.mean_distance : archive.max_novelty();
            ind.local_quality = st.lower_fitness;
        }
    }

} // namespace

void nslc_step(NslcState& state, const RunConfig& cfg, const Task& task, long batch,
               RunStats& stats)
{
    Batch offspring = produce_offspring(state.population, cfg, task, batch, state.next_id);
    state.next_id += static_cast<std::uint64_t>(offspring.size());

    // Scores are computed against the archive as it stood at batch start.
    score_against_archive(state.population, state.archive);
    score_against_archive(offspring, state.archive);

    // NSGA-II survivor selection over parents + offspring.
    std::vector<Individual> pool;
    pool.reserve(state.population.size() + offspring.size());
    pool.insert(pool.end(), state.population.begin(), state.population.end());
    pool.insert(pool.end(), offspring.begin(), offspring.end());
    std::vector<ParetoPoint> points;
    points.reserve(pool.size());
    for (const auto& ind : pool)
        points.push_back({ind.novelty, static_cast<double>(ind.local_quality), ind.id});
    auto order = pareto_order(points);
    Batch next_population;
    next_population.reserve(cfg.batch_size);
    for (int i = 0; i < cfg.batch_size; ++i)
        next_population.push_back(pool[order[i % order.size()]]);

    // Archive additions (append-only) and the passive result grid.
    long additions = 0;
    for (const auto& ind : offspring) {
        if (ind.novelty > state.archive.rho) {
            state.archive.members.push_back(ind);
            ++additions;
        }
        offer_to_grid(ind, *state.result_grid, stats);
    }

    // rho adaptation: grow when the archive floods, shrink after a drought.
    if (additions > 10)
        state.archive.rho *= 1.2;
    if (additions == 0) {
        if (++state.batches_without_addition >= 25) {
            state.archive.rho *= 0.95;
            state.batches_without_addition = 0;
        }
    } else {
        state.batches_without_addition = 0;
    }

    state.population = std::move(next_population);
}

RunResult run_nslc(const RunConfig& cfg, const Task& task)
{
    cfg.validate(task);
    RunResult result;
    auto grid = std::make_unique<GridContainer>(cfg.grid);

    NslcState state;
    state.archive.rho = cfg.rho_init;
    state.archive.knn = cfg.grid.knn;
    state.archive.descriptor_dim = task.descriptor_size;
    state.result_grid = std::move(grid);

    Rng rng(cfg.seed);
    long evals = 0;

    for (long iter = 1; iter <= cfg.iterations; ++iter) {
        if (iter == 1) {
            for (int i = 0; i < cfg.batch_size; ++i)
                state.population.push_back(random_individual(task, rng, state.next_id));
            evaluate_batch(state.population, task, iter);
            for (const auto& ind : state.population)
                offer_to_grid(ind, *state.result_grid, result.stats);
            evals += cfg.batch_size;
        } else {
            nslc_step(state, cfg, task, iter, result.stats);
            evals += cfg.batch_size;
        }
        state.result_grid->update();
        if (iter % cfg.log_interval == 0)
            result.trace.push_back(compute_metrics(*state.result_grid, iter, evals));
    }
    result.container = std::move(state.result_grid);
    return result;
}

} // namespace qd
