#ifndef QD_CORE_HPP
#define QD_CORE_HPP

#include <memory>

#include "qd/archive_container.hpp"
#include "qd/container.hpp"
#include "qd/grid_container.hpp"
#include "qd/metrics.hpp"
#include "qd/selection.hpp"
#include "qd/task.hpp"
#include "qd/variation.hpp"

namespace qd {

enum class ContainerKind { Grid, Archive };

struct RunConfig {
    int batch_size = 200;
    long iterations = 1;
    double reward = 1.0;
    double penalty = 0.5;
    ContainerKind container = ContainerKind::Grid;
    GridParams grid;
    ArchiveParams archive;
    SelectorConfig selector;
    MutationConfig mutation;
    std::uint64_t seed = 1;
    long log_interval = 10;
    double rho_init = 0.01; // NSLC novelty-archive threshold

    void validate(const Task& task) const; // throws std::invalid_argument
};

/// One container offer, kept for replaying the curiosity ledger. applied is
/// false when the parent had no surviving container record at update time.
struct CuriosityEvent {
    long batch = 0;
    std::uint64_t offspring_id = 0;
    std::uint64_t parent_id = 0; // 0 for the initial random batches
    bool accepted = false;
    bool applied = false;
};

struct RunStats {
    long evaluated = 0;
    long added = 0;
    long replaced = 0;
    long rejected = 0;
};

struct RunResult {
    std::unique_ptr<Container> container;
    MetricsTrace trace;
    std::vector<CuriosityEvent> events;
    RunStats stats;
};

/// Uniform random genotype: i.i.d. on [0,1) per gene, or uniform over the
/// sample lattice {0, step, ..., 1} for sampled encodings.
Genotype random_genotype(EncodingKind kind, std::size_t size, double step, Rng& rng);

Individual random_individual(const Task& task, Rng& rng, std::uint64_t& next_id);

/// Reward/penalty bookkeeping for one offer. The update targets the
/// container-resident copy of the parent; when none survives the event is
/// recorded as not applied.
void curiosity_update(Container& container, CuriosityEvent& event, double reward, double penalty);

std::unique_ptr<Container> make_container(const RunConfig& cfg);

/// The generic loop: iteration 1 evaluates two random batches; every later
/// iteration selects parents, mutates, evaluates (possibly in parallel),
/// offers each offspring to the container in ascending index order, applies
/// the curiosity reward/penalty, then refreshes container scores and logs
/// metrics every log_interval batches. Deterministic for a fixed seed at
/// any thread count.
RunResult run_qd(const RunConfig& cfg, const Task& task);

/// Mutates each parent into one offspring and evaluates it; offspring i
/// gets id base_id + i and an rng stream derived from (seed, batch, i).
/// Throws with the batch index and individual id on evaluation failure.
Batch produce_offspring(const Batch& parents, const RunConfig& cfg, const Task& task, long batch,
                        std::uint64_t base_id);

/// Evaluate every individual in place (parallel kernel).
void evaluate_batch(Batch& batch, const Task& task, long batch_index);

} // namespace qd

#endif
