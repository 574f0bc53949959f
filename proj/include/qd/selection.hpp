#ifndef QD_SELECTION_HPP
#define QD_SELECTION_HPP

#include "qd/container.hpp"
#include "qd/rng.hpp"
#include "qd/task.hpp"
#include "qd/types.hpp"

namespace qd {

enum class SelectorKind { NoSelection, Uniform, ScoreProportionate, Population, Pareto };
enum class ScoreKind { Fitness, Novelty, Curiosity };

struct SelectorConfig {
    SelectorKind kind = SelectorKind::Uniform;
    ScoreKind score = ScoreKind::Fitness; // for ScoreProportionate / Population
    int tournament_size = 2;              // for Population
};

double score_value(const Individual& ind, ScoreKind score);

/// Fresh random individuals; the container is ignored.
Batch select_no_selection(const Task& task, int batch_size, Rng& rng, std::uint64_t& next_id);

/// i.i.d. uniform draws with replacement over the container members.
Batch select_uniform(const Container& container, int batch_size, Rng& rng);

/// Roulette wheel over w_i = (s_i - s_min) + delta with
/// delta = 1e-6 * max(s_max - s_min, 1); all-equal scores degrade to
/// uniform and the worst member keeps a vanishing chance.
Batch select_score_proportionate(const Container& container, ScoreKind score, int batch_size,
                                 Rng& rng);

/// Tournaments over the previous parents + offspring; contestants are drawn
/// without replacement, the winner has the highest score, ties go to the
/// lower id.
Batch select_population(const std::vector<Individual>& pool, ScoreKind score, int tournament_size,
                        int batch_size, Rng& rng);

/// NSGA-II ranking of the previous parents + offspring on
/// (novelty, local quality); takes the best batch_size individuals.
Batch select_pareto(const std::vector<Individual>& pool, int batch_size);

/// Copies of parents + offspring with scores refreshed against the
/// container: novelty/local quality recomputed on demand, curiosity re-read
/// from the container-resident record when one exists.
std::vector<Individual> scored_union(const Batch& parents, const Batch& offspring,
                                     Container& container, bool need_novelty,
                                     bool need_local_quality, bool need_curiosity);

/// Dispatch on the configured selector; falls back to random individuals
/// while the container is empty.
Batch select_parents(const SelectorConfig& cfg, Container& container, const Batch& prev_parents,
                     const Batch& prev_offspring, const Task& task, int batch_size, Rng& rng,
                     std::uint64_t& next_id);

} // namespace qd

#endif
