#include "qd/selection.hpp"

#include <algorithm>
#include <stdexcept>

#include "qd/core.hpp"
#include "qd/pareto.hpp"

namespace qd {

double score_value(const Individual& ind, ScoreKind score)
{
    switch (score) {
    case ScoreKind::Fitness: return ind.fitness;
    case ScoreKind::Novelty: return ind.novelty;
    case ScoreKind::Curiosity: return ind.curiosity;
    }
    return ind.fitness;
}

Batch select_no_selection(const Task& task, int batch_size, Rng& rng, std::uint64_t& next_id)
{
    Batch batch;
    batch.reserve(batch_size);
    for (int i = 0; i < batch_size; ++i)
        batch.push_back(random_individual(task, rng, next_id));
    return batch;
}

Batch select_uniform(const Container& container, int batch_size, Rng& rng)
{
    auto members = container.members_by_id();
    Batch batch;
    batch.reserve(batch_size);
    for (int i = 0; i < batch_size; ++i)
        batch.push_back(*members[rng.uniform_index(members.size())]);
    return batch;
}

Batch select_score_proportionate(const Container& container, ScoreKind score, int batch_size,
                                 Rng& rng)
{
    auto members = container.members_by_id();
    double s_min = score_value(*members.front(), score);
    double s_max = s_min;
    for (const auto* m : members) {
        s_min = std::min(s_min, score_value(*m, score));
        s_max = std::max(s_max, score_value(*m, score));
    }
    // Shifted weights with a floor: the worst member keeps a vanishing but
    // nonzero chance, and all-equal scores degrade to uniform selection.
    double delta = 1e-6 * std::max(s_max - s_min, 1.0);
    std::vector<double> cumulative(members.size());
    double total = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        total += (score_value(*members[i], score) - s_min) + delta;
        cumulative[i] = total;
    }

    Batch batch;
    batch.reserve(batch_size);
    for (int i = 0; i < batch_size; ++i) {
        double target = rng.uniform() * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
        std::size_t idx = std::min<std::size_t>(it - cumulative.begin(), members.size() - 1);
        batch.push_back(*members[idx]);
    }
    return batch;
}

namespace {

    // Partial Fisher-Yates: k distinct indices from [0, n).
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng)
    {
        std::vector<std::size_t> indices(n);
        for (std::size_t i = 0; i < n; ++i)
            indices[i] = i;
        for (std::size_t i = 0; i < k; ++i)
            std::swap(indices[i], indices[i + rng.uniform_index(n - i)]);
        indices.resize(k);
        return indices;
    }

} // namespace

Batch select_population(const std::vector<Individual>& pool, ScoreKind score, int tournament_size,
                        int batch_size, Rng& rng)
{
    if (pool.empty())
        throw std::invalid_argument("population selection needs a non-empty pool");
    std::size_t k = std::min<std::size_t>(tournament_size, pool.size());
    Batch batch;
    batch.reserve(batch_size);
    for (int t = 0; t < batch_size; ++t) {
        auto contestants = sample_without_replacement(pool.size(), k, rng);
        std::size_t best = contestants[0];
        for (std::size_t c : contestants) {
            double sc = score_value(pool[c], score);
            double sb = score_value(pool[best], score);
            if (sc > sb || (sc == sb && pool[c].id < pool[best].id))
                best = c;
        }
        batch.push_back(pool[best]);
    }
    return batch;
}

Batch select_pareto(const std::vector<Individual>& pool, int batch_size)
{
    std::vector<ParetoPoint> points;
    points.reserve(pool.size());
    for (const auto& ind : pool)
        points.push_back({ind.novelty, static_cast<double>(ind.local_quality), ind.id});
    auto order = pareto_order(points);
    Batch batch;
    batch.reserve(batch_size);
    for (int i = 0; i < batch_size; ++i)
        batch.push_back(pool[order[i % order.size()]]);
    return batch;
}

std::vector<Individual> scored_union(const Batch& parents, const Batch& offspring,
                                     Container& container, bool need_novelty,
                                     bool need_local_quality, bool need_curiosity)
{
    std::vector<Individual> pool;
    pool.reserve(parents.size() + offspring.size());
    pool.insert(pool.end(), parents.begin(), parents.end());
    pool.insert(pool.end(), offspring.begin(), offspring.end());
    for (auto& ind : pool) {
        if (need_novelty)
            ind.novelty = container.novelty_of(ind);
        if (need_local_quality)
            ind.local_quality = container.local_quality_of(ind);
        if (need_curiosity) {
            // The container-resident record carries the live score.
            if (const Individual* resident = container.find(ind.id))
                ind.curiosity = resident->curiosity;
        }
    }
    return pool;
}

Batch select_parents(const SelectorConfig& cfg, Container& container, const Batch& prev_parents,
                     const Batch& prev_offspring, const Task& task, int batch_size, Rng& rng,
                     std::uint64_t& next_id)
{
    if (cfg.kind == SelectorKind::NoSelection)
        return select_no_selection(task, batch_size, rng, next_id);
    if (container.size() == 0)
        return select_no_selection(task, batch_size, rng, next_id);

    switch (cfg.kind) {
    case SelectorKind::Uniform: return select_uniform(container, batch_size, rng);
    case SelectorKind::ScoreProportionate:
        return select_score_proportionate(container, cfg.score, batch_size, rng);
    case SelectorKind::Population: {
        auto pool = scored_union(prev_parents, prev_offspring, container,
                                 cfg.score == ScoreKind::Novelty, false,
                                 cfg.score == ScoreKind::Curiosity);
        return select_population(pool, cfg.score, cfg.tournament_size, batch_size, rng);
    }
    case SelectorKind::Pareto: {
        auto pool = scored_union(prev_parents, prev_offspring, container, true, true, false);
        return select_pareto(pool, batch_size);
    }
    default: break;
    }
    throw std::invalid_argument("unknown selector");
}

} // namespace qd
