#include "qd/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qd/parallel.hpp"

namespace qd {

double euclidean(const Descriptor& a, const Descriptor& b)
{
    double sum = 0.0;
    for (std::size_t d = 0; d < a.coords.size(); ++d) {
        double diff = a.coords[d] - b.coords[d];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

bool Genotype::valid(double tol) const
{
    for (double v : values) {
        if (!(v >= 0.0 && v <= 1.0))
            return false;
        if (kind == EncodingKind::Sampled) {
            double multiple = v / step;
            if (std::abs(multiple - std::llround(multiple)) > tol)
                return false;
        }
    }
    return true;
}

std::string to_string(EncodingKind k)
{
    return k == EncodingKind::Continuous ? "continuous" : "sampled";
}

void RunConfig::validate(const Task& task) const
{
    if (batch_size < 1)
        throw std::invalid_argument("batch size must be >= 1");
    if (iterations < 1)
        throw std::invalid_argument("iteration count must be >= 1");
    if (reward < 0.0 || penalty < 0.0)
        throw std::invalid_argument("reward and penalty must be non-negative");
    if (log_interval < 1)
        throw std::invalid_argument("log interval must be >= 1");
    if (mutation.kind == MutationKind::Polynomial && mutation.eta <= 0.0)
        throw std::invalid_argument("polynomial eta must be positive");
    if (mutation.kind == MutationKind::Polynomial && task.encoding == EncodingKind::Sampled)
        throw std::invalid_argument("polynomial mutation requires a continuous genotype");
    if (mutation.per_gene_rate <= 0.0 || mutation.per_gene_rate > 1.0)
        throw std::invalid_argument("per-gene mutation rate must be in (0,1]");
    if (container == ContainerKind::Grid) {
        if (grid.resolution.size() != task.descriptor_size)
            throw std::invalid_argument("grid resolution does not match the task descriptor size");
        if (grid.subgrid_depth < 1)
            throw std::invalid_argument("sub-grid depth must be >= 1");
        if (grid.knn < 1)
            throw std::invalid_argument("grid neighbor count must be >= 1");
    } else {
        if (archive.descriptor_dim != task.descriptor_size)
            throw std::invalid_argument("archive dimension does not match the task descriptor size");
        if (archive.l <= 0.0)
            throw std::invalid_argument("archive l must be positive");
        if (archive.epsilon < 0.0 || archive.epsilon >= 1.0)
            throw std::invalid_argument("epsilon must lie in [0,1)");
        if (archive.knn < 1)
            throw std::invalid_argument("archive neighbor count must be >= 1");
    }
    if (selector.kind == SelectorKind::Population && selector.tournament_size < 2)
        throw std::invalid_argument("tournament size must be >= 2");
    if (task.encoding == EncodingKind::Sampled) {
        if (task.sample_step <= 0.0 || task.sample_step > 1.0)
            throw std::invalid_argument("sample step must lie in (0,1]");
        double levels = 1.0 / task.sample_step;
        if (std::abs(levels - std::llround(levels)) > 1e-9)
            throw std::invalid_argument("sample step must divide 1");
    }
}

Genotype random_genotype(EncodingKind kind, std::size_t size, double step, Rng& rng)
{
    Genotype g;
    g.kind = kind;
    g.step = step;
    g.values.resize(size);
    if (kind == EncodingKind::Continuous) {
        for (auto& v : g.values)
            v = rng.uniform();
    } else {
        auto levels = static_cast<std::size_t>(std::llround(1.0 / step)) + 1;
        for (auto& v : g.values)
            v = static_cast<double>(rng.uniform_index(levels)) * step;
    }
    return g;
}

Individual random_individual(const Task& task, Rng& rng, std::uint64_t& next_id)
{
    Individual ind;
    ind.genotype = random_genotype(task.encoding, task.genotype_size, task.sample_step, rng);
    ind.id = next_id++;
    return ind;
}

void curiosity_update(Container& container, CuriosityEvent& event, double reward, double penalty)
{
    if (event.parent_id == 0)
        return;
    Individual* parent = container.find(event.parent_id);
    if (parent == nullptr)
        return; // parent was displaced before the update; drop it
    parent->curiosity += event.accepted ? reward : -penalty;
    event.applied = true;
}

std::unique_ptr<Container> make_container(const RunConfig& cfg)
{
    if (cfg.container == ContainerKind::Grid)
        return std::make_unique<GridContainer>(cfg.grid);
    return std::make_unique<ArchiveContainer>(cfg.archive);
}

namespace {

    void clamp_descriptor(Descriptor& desc)
    {
        for (auto& c : desc.coords)
            c = c < 0.0 ? 0.0 : (c > 1.0 ? 1.0 : c);
    }

    [[noreturn]] void evaluation_failure(long batch, std::uint64_t id, const std::string& why)
    {
        throw std::runtime_error("evaluation failed at batch " + std::to_string(batch) +
                                 ", individual " + std::to_string(id) + ": " + why);
    }

} // namespace

void evaluate_batch(Batch& batch, const Task& task, long batch_index)
{
    std::vector<std::string> errors(batch.size());
    par::parallel_for(batch.size(), [&](std::size_t i) {
        try {
            auto [desc, fitness] = task.evaluate(batch[i].genotype);
            if (desc.coords.size() != task.descriptor_size || !std::isfinite(fitness))
                throw std::runtime_error("malformed evaluation result");
            clamp_descriptor(desc);
            batch[i].descriptor = std::move(desc);
            batch[i].fitness = fitness;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < batch.size(); ++i)
        if (!errors[i].empty())
            evaluation_failure(batch_index, batch[i].id, errors[i]);
}

Batch produce_offspring(const Batch& parents, const RunConfig& cfg, const Task& task, long batch,
                        std::uint64_t base_id)
{
    Batch offspring(parents.size());
    std::vector<std::string> errors(parents.size());
    par::parallel_for(parents.size(), [&](std::size_t i) {
        try {
            Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(batch), i));
            offspring[i].id = base_id + i;
            offspring[i].genotype = mutate(parents[i].genotype, cfg.mutation, rng);
            offspring[i].parent_id = parents[i].id;
            auto [desc, fitness] = task.evaluate(offspring[i].genotype);
            if (desc.coords.size() != task.descriptor_size || !std::isfinite(fitness))
                throw std::runtime_error("malformed evaluation result");
            clamp_descriptor(desc);
            offspring[i].descriptor = std::move(desc);
            offspring[i].fitness = fitness;
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < parents.size(); ++i)
        if (!errors[i].empty())
            evaluation_failure(batch, offspring[i].id, errors[i]);
    return offspring;
}

namespace {

    // Insertions, curiosity rewards/penalties and the event ledger run in
    // ascending offspring order on the control thread.
    void offer_batch(Batch& batch, Container& container, const RunConfig& cfg, long batch_index,
                     bool with_curiosity, RunResult& result)
    {
        for (auto& ind : batch) {
            AddOutcome outcome = container.add(ind);
            CuriosityEvent event;
            event.batch = batch_index;
            event.offspring_id = ind.id;
            event.parent_id = with_curiosity ? ind.parent_id : 0;
            event.accepted = outcome.accepted();
            if (with_curiosity)
                curiosity_update(container, event, cfg.reward, cfg.penalty);
            result.events.push_back(event);

            ++result.stats.evaluated;
            switch (outcome.kind) {
            case AddOutcome::Kind::AddedNew: ++result.stats.added; break;
            case AddOutcome::Kind::Replaced: ++result.stats.replaced; break;
            case AddOutcome::Kind::Rejected: ++result.stats.rejected; break;
            }
        }
    }

} // namespace

RunResult run_qd(const RunConfig& cfg, const Task& task)
{
    cfg.validate(task);
    RunResult result;
    result.container = make_container(cfg);
    Container& container = *result.container;

    Rng rng(cfg.seed);
    std::uint64_t next_id = 1;
    Batch parents, offspring;
    long evals = 0;

    for (long iter = 1; iter <= cfg.iterations; ++iter) {
        if (iter == 1) {
            // Two random batches seed the container; no curiosity yet.
            parents.clear();
            offspring.clear();
            for (int i = 0; i < cfg.batch_size; ++i)
                parents.push_back(random_individual(task, rng, next_id));
            for (int i = 0; i < cfg.batch_size; ++i)
                offspring.push_back(random_individual(task, rng, next_id));
            evaluate_batch(parents, task, iter);
            evaluate_batch(offspring, task, iter);
            offer_batch(parents, container, cfg, iter, false, result);
            offer_batch(offspring, container, cfg, iter, false, result);
            evals += 2L * cfg.batch_size;
        } else {
            parents = select_parents(cfg.selector, container, parents, offspring, task,
                                     cfg.batch_size, rng, next_id);
            offspring = produce_offspring(parents, cfg, task, iter, next_id);
            next_id += static_cast<std::uint64_t>(offspring.size());
            offer_batch(offspring, container, cfg, iter, true, result);
            evals += cfg.batch_size;
        }
        container.update();
        if (iter % cfg.log_interval == 0)
            result.trace.push_back(compute_metrics(container, iter, evals));
    }
    return result;
}

} // namespace qd
