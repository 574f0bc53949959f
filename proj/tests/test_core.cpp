#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "qd/core.hpp"
#include "qd/metrics.hpp"
#include "qd/parallel.hpp"

using namespace qd;

namespace {

RunConfig arm_grid_config(long iterations, int batch_size, std::uint64_t seed)
{
    RunConfig cfg;
    cfg.batch_size = batch_size;
    cfg.iterations = iterations;
    cfg.seed = seed;
    cfg.container = ContainerKind::Grid;
    cfg.grid = {{100, 100}, 3, 15, 1.0};
    cfg.selector.kind = SelectorKind::Uniform;
    cfg.mutation = {MutationKind::Polynomial, 0.125, 10.0};
    return cfg;
}

// Replays the event ledger: curiosity of every surviving member must equal
// reward * accepts - penalty * rejects over its applied events.
void check_ledger(const RunResult& result, double reward, double penalty)
{
    std::map<std::uint64_t, double> replayed;
    for (const auto& e : result.events)
        if (e.applied)
            replayed[e.parent_id] += e.accepted ? reward : -penalty;
    for (const auto* m : result.container->members_by_id()) {
        double expected = replayed.count(m->id) ? replayed[m->id] : 0.0;
        CHECK(m->curiosity == expected);
    }
}

} // namespace

TEST_CASE("random genotypes: range, lattice and uniformity")
{
    Rng rng(3);
    auto g = random_genotype(EncodingKind::Continuous, 8, 0.0, rng);
    CHECK(g.values.size() == 8);
    CHECK(g.valid());

    auto s = random_genotype(EncodingKind::Sampled, 36, 0.05, rng);
    CHECK(s.values.size() == 36);
    CHECK(s.valid());
    for (double v : s.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(std::abs(v / 0.05 - std::llround(v / 0.05)) < 1e-9);
    }

    // Per-gene mean over 1e5 draws stays within [0.49, 0.51].
    const int n = 100000;
    std::vector<double> sums(8, 0.0);
    for (int i = 0; i < n; ++i) {
        auto draw = random_genotype(EncodingKind::Continuous, 8, 0.0, rng);
        for (int j = 0; j < 8; ++j)
            sums[j] += draw.values[j];
    }
    for (double sum : sums) {
        CHECK(sum / n > 0.49);
        CHECK(sum / n < 0.51);
    }
}

TEST_CASE("different seeds give different genotypes")
{
    Rng a(1), b(2);
    auto ga = random_genotype(EncodingKind::Continuous, 8, 0.0, a);
    auto gb = random_genotype(EncodingKind::Continuous, 8, 0.0, b);
    CHECK(ga.values != gb.values);
}

TEST_CASE("curiosity updates: reward, penalty, mixed ledger")
{
    GridContainer grid({{10, 10}, 1, 15, 1.0});
    Individual parent;
    parent.id = 42;
    parent.descriptor.coords = {0.5, 0.5};
    parent.fitness = -0.1;
    grid.add(parent);

    auto apply = [&](bool accepted) {
        CuriosityEvent e;
        e.parent_id = 42;
        e.accepted = accepted;
        curiosity_update(grid, e, 1.0, 0.5);
        return e.applied;
    };
    CHECK(apply(true));
    CHECK(grid.find(42)->curiosity == 1.0);
    grid.find(42)->curiosity = 0.0;
    CHECK(apply(false));
    CHECK(grid.find(42)->curiosity == -0.5);

    // 2 accepts and 4 rejects from zero: 2*1 - 4*0.5 = 0.
    grid.find(42)->curiosity = 0.0;
    for (int i = 0; i < 2; ++i)
        apply(true);
    for (int i = 0; i < 4; ++i)
        apply(false);
    CHECK(grid.find(42)->curiosity == 0.0);

    // Parent no longer resident: the update is dropped, not resurrected.
    CuriosityEvent gone;
    gone.parent_id = 777;
    gone.accepted = true;
    curiosity_update(grid, gone, 1.0, 0.5);
    CHECK_FALSE(gone.applied);
}

TEST_CASE("initialization-only run offers two random batches")
{
    auto cfg = arm_grid_config(1, 200, 9);
    auto task = make_arm_task();
    auto result = run_qd(cfg, task);
    CHECK(result.stats.evaluated == 400);
    CHECK(result.container->size() <= 400);
    CHECK(result.container->size() > 0);
    // No curiosity at iteration 1.
    for (const auto& e : result.events) {
        CHECK(e.parent_id == 0);
        CHECK_FALSE(e.applied);
    }
}

TEST_CASE("metrics trace has iterations / log_interval rows")
{
    auto cfg = arm_grid_config(100, 200, 4);
    cfg.log_interval = 10;
    auto result = run_qd(cfg, make_arm_task());
    CHECK(result.trace.size() == 10);
    CHECK(result.trace.front().batch == 10);
    CHECK(result.trace.back().batch == 100);
    CHECK(result.trace.back().evals == 200 * 101); // first batch counts double
}

TEST_CASE("conservation: every evaluation is accepted or rejected")
{
    for (auto kind : {SelectorKind::Uniform, SelectorKind::ScoreProportionate,
                      SelectorKind::Population, SelectorKind::Pareto, SelectorKind::NoSelection}) {
        auto cfg = arm_grid_config(20, 50, 11);
        cfg.selector.kind = kind;
        cfg.selector.score = ScoreKind::Curiosity;
        auto result = run_qd(cfg, make_arm_task());
        CHECK(result.stats.evaluated == 50 * 21);
        CHECK(result.stats.evaluated ==
              result.stats.added + result.stats.replaced + result.stats.rejected);
        CHECK(result.container->size() == static_cast<std::size_t>(result.stats.added));
        CHECK(static_cast<long>(result.events.size()) == result.stats.evaluated);
    }
}

TEST_CASE("curiosity ledger replays exactly")
{
    auto cfg = arm_grid_config(60, 40, 21);
    cfg.selector.kind = SelectorKind::ScoreProportionate;
    cfg.selector.score = ScoreKind::Curiosity;
    auto result = run_qd(cfg, make_arm_task());
    check_ledger(result, cfg.reward, cfg.penalty);

    // Also with the archive container and non-default reward/penalty.
    RunConfig acfg = cfg;
    acfg.container = ContainerKind::Archive;
    acfg.archive = {2, 0.02, 0.1, 15, 1.0, true};
    acfg.reward = 2.0;
    acfg.penalty = 0.25;
    auto aresult = run_qd(acfg, make_arm_task());
    check_ledger(aresult, acfg.reward, acfg.penalty);
}

TEST_CASE("identical seeds reproduce the collection byte for byte")
{
    auto task = make_arm_task();
    auto cfg = arm_grid_config(30, 50, 77);
    par::set_thread_count(1);
    auto a = run_qd(cfg, task);
    auto b = run_qd(cfg, task);
    auto csv_a = collection_csv(*a.container, task.descriptor_size, task.genotype_size);
    auto csv_b = collection_csv(*b.container, task.descriptor_size, task.genotype_size);
    CHECK(csv_a == csv_b);

    std::string rows_a, rows_b;
    for (const auto& row : a.trace)
        rows_a += metrics_csv_row(row) + "\n";
    for (const auto& row : b.trace)
        rows_b += metrics_csv_row(row) + "\n";
    CHECK(rows_a == rows_b);
}

TEST_CASE("parallel evaluation equals the serial reference")
{
    auto task = make_arm_task();
    for (auto container : {ContainerKind::Grid, ContainerKind::Archive}) {
        auto cfg = arm_grid_config(25, 60, 5);
        cfg.container = container;
        cfg.archive = {2, 0.02, 0.1, 15, 1.0, true};
        par::set_thread_count(1);
        auto serial = run_qd(cfg, task);
        par::set_thread_count(4);
        auto parallel = run_qd(cfg, task);
        par::set_thread_count(1);
        CHECK(collection_csv(*serial.container, 2, 8) == collection_csv(*parallel.container, 2, 8));
    }
}

TEST_CASE("evaluation failure names the batch and individual")
{
    Task bad = make_arm_task();
    bad.evaluate = [](const Genotype&) -> std::pair<Descriptor, double> {
        throw std::runtime_error("boom");
    };
    auto cfg = arm_grid_config(3, 10, 1);
    try {
        run_qd(cfg, bad);
        FAIL("expected an evaluation failure");
    } catch (const std::runtime_error& e) {
        std::string what = e.what();
        CHECK(what.find("batch 1") != std::string::npos);
        CHECK(what.find("individual 1") != std::string::npos);
        CHECK(what.find("boom") != std::string::npos);
    }
}

TEST_CASE("config validation rejects bad parameters")
{
    auto task = make_arm_task();
    auto cfg = arm_grid_config(10, 50, 1);
    cfg.batch_size = 0;
    CHECK_THROWS_AS(cfg.validate(task), std::invalid_argument);
    cfg = arm_grid_config(0, 50, 1);
    CHECK_THROWS_AS(cfg.validate(task), std::invalid_argument);
    cfg = arm_grid_config(10, 50, 1);
    cfg.grid.resolution = {100};
    CHECK_THROWS_AS(cfg.validate(task), std::invalid_argument);
    cfg = arm_grid_config(10, 50, 1);
    cfg.mutation.kind = MutationKind::Polynomial;
    CHECK_THROWS_AS(cfg.validate(make_synthetic6_task()), std::invalid_argument);
}
