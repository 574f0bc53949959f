// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Run via ctest or directly; QD_THREADS caps kernel parallelism.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numbers>

#include "qd/cli.hpp"
#include "qd/core.hpp"
#include "qd/nslc.hpp"
#include "qd/parallel.hpp"
#include "qd/pareto.hpp"

using namespace qd;
namespace fs = std::filesystem;

namespace {

void report(int criterion, const char* name, bool pass)
{
    std::printf("criterion %2d %-28s %s\n", criterion, name, pass ? "PASS" : "FAIL");
    std::fflush(stdout);
    CHECK_MESSAGE(pass, "criterion ", criterion, " (", name, ")");
}

Individual make_ind(std::uint64_t id, std::vector<double> desc, double fitness)
{
    Individual ind;
    ind.id = id;
    ind.descriptor.coords = std::move(desc);
    ind.fitness = fitness;
    return ind;
}

RunConfig arm_config(ContainerKind container, SelectorKind selector, ScoreKind score,
                     long iterations, std::uint64_t seed)
{
    RunConfig cfg;
    cfg.batch_size = 200;
    cfg.iterations = iterations;
    cfg.seed = seed;
    cfg.container = container;
    cfg.grid = {{100, 100}, 3, 15, 1.0};
    cfg.archive = {2, 0.01, 0.1, 15, 1.0, true};
    cfg.selector.kind = selector;
    cfg.selector.score = score;
    cfg.mutation = {MutationKind::Polynomial, 0.125, 10.0};
    cfg.log_interval = 100;
    return cfg;
}

double final_total_quality(const RunResult& result)
{
    return result.trace.back().total_quality;
}

} // namespace

TEST_CASE("1: archive spacing invariant under 1e5 offers")
{
    ArchiveContainer archive({2, 0.01, 0.1, 15, 1.0, true});
    Rng rng(12345);
    for (int i = 0; i < 100000; ++i)
        archive.add(make_ind(i + 1, {rng.uniform(), rng.uniform()}, -rng.uniform() * 0.25));

    const auto& members = archive.members();
    std::vector<double> row_min(members.size(), std::numeric_limits<double>::infinity());
    par::parallel_for(members.size(), [&](std::size_t i) {
        for (std::size_t j = i + 1; j < members.size(); ++j)
            row_min[i] = std::min(row_min[i], euclidean(members[i].descriptor, members[j].descriptor));
    });
    double min_pair = std::numeric_limits<double>::infinity();
    for (double m : row_min)
        min_pair = std::min(min_pair, m);
    bool pass = members.size() > 1000 && min_pair > 0.01;
    std::printf("  archive size %zu, min pairwise distance %.6f\n", members.size(), min_pair);
    report(1, "archive spacing", pass);
}

TEST_CASE("2: oracle equivalence on 200 random instances")
{
    Rng rng(777);
    long mismatches = 0;

    for (int inst = 0; inst < 200; ++inst) {
        std::size_t n = 1 + rng.uniform_index(200);
        int k = 1 + static_cast<int>(rng.uniform_index(20));

        // Archive novelty and local quality vs a full sort.
        ArchiveContainer archive({2, 1e-9, 0.1, k, 1.0, true});
        std::vector<Individual> points;
        for (std::size_t i = 0; i < n; ++i) {
            auto ind = make_ind(i + 1, {rng.uniform(), rng.uniform()}, -rng.uniform() * 0.25);
            points.push_back(ind);
            archive.add(ind);
        }
        auto probe = make_ind(90000, {rng.uniform(), rng.uniform()}, -rng.uniform() * 0.25);
        struct Entry {
            double dist;
            std::uint64_t id;
            double fitness;
        };
        std::vector<Entry> all;
        for (const auto& p : points)
            all.push_back({euclidean(p.descriptor, probe.descriptor), p.id, p.fitness});
        std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
            return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
        });
        std::size_t kk = std::min<std::size_t>(k, all.size());
        double mean = 0.0;
        int lower = 0;
        for (std::size_t i = 0; i < kk; ++i) {
            mean += all[i].dist;
            if (all[i].fitness < probe.fitness)
                ++lower;
        }
        mean = kk > 0 ? mean / kk : std::sqrt(2.0);
        if (archive.novelty_of(probe) != mean || archive.local_quality_of(probe) != lower)
            ++mismatches;

        // Grid novelty vs a whole-grid walk.
        int res = 5 + static_cast<int>(rng.uniform_index(30));
        int depth = 1 + static_cast<int>(rng.uniform_index(4));
        GridContainer grid({{res, res}, depth, 15, 1.0});
        for (std::size_t i = 0; i < n; ++i)
            grid.add(make_ind(i + 1, {rng.uniform(), rng.uniform()}, -rng.uniform()));
        auto gprobe = make_ind(90001, {rng.uniform(), rng.uniform()}, 0.0);
        auto center = discretize(gprobe.descriptor, grid.params().resolution);
        long total = 0, filled = 0;
        for (int x = 0; x < res; ++x)
            for (int y = 0; y < res; ++y) {
                if (std::abs(x - center[0]) > depth || std::abs(y - center[1]) > depth)
                    continue;
                ++total;
                if (grid.cell(grid.flat_index({x, y})).has_value())
                    ++filled;
            }
        double expected = 1.0 - static_cast<double>(filled) / static_cast<double>(total);
        if (grid.novelty_of(gprobe) != expected)
            ++mismatches;

        // Non-dominated sorting vs iterative peeling.
        std::size_t pn = 1 + rng.uniform_index(60);
        std::vector<ParetoPoint> pareto;
        for (std::size_t i = 0; i < pn; ++i)
            pareto.push_back({static_cast<double>(rng.uniform_index(8)),
                              static_cast<double>(rng.uniform_index(8)), i + 1});
        auto fronts = non_dominated_sort(pareto);
        std::vector<bool> assigned(pn, false);
        for (const auto& front : fronts) {
            std::vector<std::size_t> expected_front;
            for (std::size_t i = 0; i < pn; ++i) {
                if (assigned[i])
                    continue;
                bool dominated = false;
                for (std::size_t j = 0; j < pn; ++j)
                    if (!assigned[j] && j != i && dominates(pareto[j], pareto[i]))
                        dominated = true;
                if (!dominated)
                    expected_front.push_back(i);
            }
            auto got = front;
            std::sort(got.begin(), got.end());
            if (got != expected_front)
                ++mismatches;
            for (std::size_t i : expected_front)
                assigned[i] = true;
        }
    }
    std::printf("  mismatches: %ld\n", mismatches);
    report(2, "oracle equivalence", mismatches == 0);
}

TEST_CASE("3: exclusive eps-dominance matches the printed inequalities")
{
    Rng rng(31337);
    long mismatches = 0;
    for (int i = 0; i < 10000; ++i) {
        double n1 = rng.uniform() * 2.0, n2 = rng.uniform() * 2.0;
        double q1 = rng.uniform() + 1e-3, q2 = rng.uniform() + 1e-3;
        double eps = rng.uniform() * 0.99;
        bool expected = n1 >= (1.0 - eps) * n2 && q1 >= (1.0 - eps) * q2 &&
                        (n1 - n2) * q2 > -(q1 - q2) * n2;
        if (exclusive_eps_dominates(n1, q1, n2, q2, eps) != expected)
            ++mismatches;
        if (exclusive_eps_dominates(n1, q1, n1, q1, eps))
            ++mismatches; // irreflexivity
    }
    report(3, "exclusive eps-dominance", mismatches == 0);
}

TEST_CASE("4: grid total quality and size never decrease")
{
    bool pass = true;
    for (std::uint64_t seed : {1ull, 2ull}) {
        auto cfg = arm_config(ContainerKind::Grid, SelectorKind::Uniform, ScoreKind::Fitness, 300,
                              seed);
        cfg.log_interval = 1;
        auto result = run_qd(cfg, make_arm_task());
        for (std::size_t i = 1; i < result.trace.size(); ++i) {
            if (result.trace[i].total_quality < result.trace[i - 1].total_quality)
                pass = false;
            if (result.trace[i].size < result.trace[i - 1].size)
                pass = false;
        }
    }
    report(4, "grid monotonicity", pass);
}

TEST_CASE("5: the curiosity ledger replays exactly")
{
    bool pass = true;
    for (auto container : {ContainerKind::Grid, ContainerKind::Archive}) {
        auto cfg = arm_config(container, SelectorKind::ScoreProportionate, ScoreKind::Curiosity,
                              150, 5);
        auto result = run_qd(cfg, make_arm_task());
        std::map<std::uint64_t, double> replayed;
        for (const auto& e : result.events)
            if (e.applied)
                replayed[e.parent_id] += e.accepted ? cfg.reward : -cfg.penalty;
        for (const auto* m : result.container->members_by_id()) {
            double expected = replayed.count(m->id) ? replayed[m->id] : 0.0;
            if (m->curiosity != expected)
                pass = false;
        }
        // Conservation: every evaluation is accounted for.
        if (result.stats.evaluated !=
            result.stats.added + result.stats.replaced + result.stats.rejected)
            pass = false;
        if (result.container->size() != static_cast<std::size_t>(result.stats.added))
            pass = false;
    }
    report(5, "curiosity ledger", pass);
}

TEST_CASE("6: collection-wide selection beats population/none at desk scale")
{
    const long batches = 2000;
    const int seeds = 5;
    struct VariantSpec {
        const char* name;
        SelectorKind kind;
        ScoreKind score;
    };
    const VariantSpec winners[] = {{"random", SelectorKind::Uniform, ScoreKind::Fitness},
                                   {"curiosity", SelectorKind::ScoreProportionate,
                                    ScoreKind::Curiosity}};
    const VariantSpec losers[] = {{"no_selection", SelectorKind::NoSelection, ScoreKind::Fitness},
                                  {"pop_fitness", SelectorKind::Population, ScoreKind::Fitness}};

    bool pass = true;
    for (auto container : {ContainerKind::Grid, ContainerKind::Archive}) {
        const char* cname = container == ContainerKind::Grid ? "grid" : "arch";
        std::map<std::string, std::vector<double>> totals;
        for (const auto& v : {winners[0], winners[1], losers[0], losers[1]}) {
            for (int s = 0; s < seeds; ++s) {
                auto cfg = arm_config(container, v.kind, v.score, batches, 1000 + s);
                auto result = run_qd(cfg, make_arm_task());
                totals[v.name].push_back(final_total_quality(result));
            }
        }
        for (const auto& w : winners)
            for (const auto& l : losers) {
                int wins = 0;
                for (int s = 0; s < seeds; ++s)
                    if (totals[w.name][s] > totals[l.name][s])
                        ++wins;
                std::printf("  %s_%s vs %s_%s: %d/%d seeds\n", cname, w.name, cname, l.name, wins,
                            seeds);
                if (wins < 4)
                    pass = false;
            }
        for (const auto& [name, values] : totals) {
            std::vector<double> sorted = values;
            std::sort(sorted.begin(), sorted.end());
            std::printf("  %s_%-13s median total quality %.2f\n", cname, name.c_str(), sorted[2]);
        }
    }
    report(6, "selection-pressure ranking", pass);
}

TEST_CASE("7: arm kinematics oracle values")
{
    auto task = make_arm_task();
    bool pass = true;

    auto straight = task.evaluate(Genotype{std::vector<double>(8, 0.5)});
    if (straight.second != 0.0)
        pass = false;
    if (std::abs(straight.first.coords[0] - 2.1 / 2.2) > 1e-9)
        pass = false;
    if (std::abs(straight.first.coords[1] - 0.5) > 1e-9)
        pass = false;

    // Constant genotypes: zero variance, gripper on the equal-angle curve.
    for (double c : {0.0, 0.2, 0.35, 0.5, 0.65, 0.8, 1.0}) {
        auto [desc, fitness] = task.evaluate(Genotype{std::vector<double>(8, c)});
        if (fitness != 0.0)
            pass = false;
        double theta = (c - 0.5) * std::numbers::pi;
        double ex = 0.0, ey = 0.0;
        for (int j = 1; j <= 8; ++j) {
            ex += std::cos(j * theta) / 8.0;
            ey += std::sin(j * theta) / 8.0;
        }
        if (std::abs(desc.coords[0] - (ex + 1.1) / 2.2) > 1e-9)
            pass = false;
        if (std::abs(desc.coords[1] - (ey + 1.1) / 2.2) > 1e-9)
            pass = false;
    }

    auto alternating = task.evaluate(Genotype{{0, 1, 0, 1, 0, 1, 0, 1}});
    if (alternating.second != -0.25)
        pass = false;
    report(7, "arm kinematics", pass);
}

TEST_CASE("8: grid_random reaches max quality -0.01 within 1000 batches")
{
    std::vector<double> max_qualities;
    for (int s = 0; s < 5; ++s) {
        auto cfg = arm_config(ContainerKind::Grid, SelectorKind::Uniform, ScoreKind::Fitness, 1000,
                              2000 + s);
        auto result = run_qd(cfg, make_arm_task());
        max_qualities.push_back(*result.trace.back().max_quality);
    }
    std::sort(max_qualities.begin(), max_qualities.end());
    double median = max_qualities[2];
    std::printf("  median max quality %.6f\n", median);
    report(8, "max-quality attainment", median >= -0.01);
}

TEST_CASE("9: byte-identical reruns; parallel equals serial")
{
    auto task = make_arm_task();
    bool pass = true;
    for (auto container : {ContainerKind::Grid, ContainerKind::Archive}) {
        auto cfg = arm_config(container, SelectorKind::Uniform, ScoreKind::Fitness, 60, 99);
        cfg.log_interval = 10;

        par::set_thread_count(1); // QD_THREADS=0 reference mode
        auto a = run_qd(cfg, task);
        auto b = run_qd(cfg, task);
        auto csv = [&](const RunResult& r) {
            std::string text = collection_csv(*r.container, 2, 8);
            for (const auto& row : r.trace)
                text += metrics_csv_row(row) + "\n";
            return text;
        };
        if (csv(a) != csv(b))
            pass = false;

        par::set_thread_count(4);
        auto c = run_qd(cfg, task);
        if (collection_csv(*a.container, 2, 8) != collection_csv(*c.container, 2, 8))
            pass = false;
    }
    par::set_thread_count(0);
    report(9, "determinism", pass);
}

TEST_CASE("10: every variant runs on both tasks and emits its artifacts")
{
    bool pass = true;
    fs::path root = fs::temp_directory_path() / "qd_acceptance_smoke";
    fs::remove_all(root);
    for (const char* task : {"arm", "synthetic6"}) {
        for (const auto& variant : all_variant_names()) {
            fs::path out = root / task / variant;
            int rc = cli_main({"run", "--task", task, "--variant", variant, "--iterations", "50",
                               "--batch-size", "50", "--seed", "11", "--out", out.string()});
            bool ok = rc == 0 && fs::exists(out / "config.json") &&
                      fs::exists(out / "metrics.csv") && fs::exists(out / "collection.csv");
            if (std::string(task) == "arm")
                ok = ok && fs::exists(out / "collection.svg");
            else
                ok = ok && !fs::exists(out / "collection.svg");
            if (!ok) {
                std::printf("  FAILED: %s / %s (rc=%d)\n", task, variant.c_str(), rc);
                pass = false;
            }
        }
    }
    fs::remove_all(root);
    report(10, "variant matrix smoke", pass);
}
