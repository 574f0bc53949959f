#include "qd/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qd/nslc.hpp"

namespace fs = std::filesystem;

namespace qd {

namespace {

    std::string read_file(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::invalid_argument("cannot read config file: " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_file(const std::string& path, const std::string& content)
    {
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write " + path);
        out << content;
    }

} // namespace

int cmd_run(const ResolvedConfig& cfg)
{
    Task task = make_task(cfg.task_name);
    cfg.run.validate(task); // reject before any filesystem work

    fs::create_directories(cfg.out_dir);
    write_file(cfg.out_dir + "/config.json", to_json(cfg));

    RunResult result = cfg.nslc ? run_nslc(cfg.run, task) : run_qd(cfg.run, task);

    write_metrics_csv(result.trace, cfg.out_dir + "/metrics.csv");
    write_collection_csv(*result.container, task.descriptor_size, task.genotype_size,
                         cfg.out_dir + "/collection.csv");
    if (task.descriptor_size == 2)
        write_file(cfg.out_dir + "/collection.svg",
                   render_collection_svg(*result.container, task.descriptor_size));
    else
        std::cout << "collection.svg skipped: descriptor dimension "
                  << task.descriptor_size << " != 2\n";

    std::cout << (cfg.variant.empty() ? variant_name(cfg) : cfg.variant) << " seed "
              << cfg.run.seed << ": " << cfg.run.iterations << " batches, collection size "
              << result.container->size() << " -> " << cfg.out_dir << "\n";
    return 0;
}

double quantile_type7(std::vector<double> values, double p)
{
    if (values.empty())
        throw std::invalid_argument("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    double h = (static_cast<double>(values.size()) - 1.0) * p;
    auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size())
        return values.back();
    return values[lo] + (h - lo) * (values[lo + 1] - values[lo]);
}

std::string summarize_traces(const std::vector<MetricsTrace>& traces)
{
    std::string csv = "batch,evals";
    for (const char* metric : {"size", "max_quality", "total_quality", "total_novelty"})
        for (const char* q : {"q1", "median", "q3"})
            csv += std::string(",") + metric + "_" + q;
    csv += "\n";
    if (traces.empty())
        return csv;

    std::size_t rows = traces.front().size();
    for (const auto& t : traces)
        rows = std::min(rows, t.size());

    for (std::size_t r = 0; r < rows; ++r) {
        csv += std::to_string(traces.front()[r].batch) + "," +
               std::to_string(traces.front()[r].evals);
        auto emit = [&](auto extract) {
            std::vector<double> values;
            for (const auto& t : traces) {
                auto v = extract(t[r]);
                if (v.has_value())
                    values.push_back(*v);
            }
            for (double p : {0.25, 0.5, 0.75})
                csv += "," + (values.empty() ? "NA" : format_value(quantile_type7(values, p)));
        };
        emit([](const MetricsRow& m) { return std::optional<double>(static_cast<double>(m.size)); });
        emit([](const MetricsRow& m) { return m.max_quality; });
        emit([](const MetricsRow& m) { return std::optional<double>(m.total_quality); });
        emit([](const MetricsRow& m) { return m.total_novelty; });
        csv += "\n";
    }
    return csv;
}

int cmd_replicate(const ResolvedConfig& cfg)
{
    Task task = make_task(cfg.task_name);
    cfg.run.validate(task);
    if (cfg.reps < 1)
        throw std::invalid_argument("replication count must be >= 1");

    fs::create_directories(cfg.out_dir);
    write_file(cfg.out_dir + "/config.json", to_json(cfg));

    std::vector<MetricsTrace> traces;
    int failures = 0;
    for (int rep = 0; rep < cfg.reps; ++rep) {
        ResolvedConfig sub = cfg;
        sub.reps = 1;
        sub.run.seed = cfg.run.seed + static_cast<std::uint64_t>(rep);
        char name[16];
        std::snprintf(name, sizeof name, "rep_%02d", rep);
        sub.out_dir = cfg.out_dir + "/" + name;
        try {
            cmd_run(sub);
            traces.push_back(read_metrics_csv(sub.out_dir + "/metrics.csv"));
        } catch (const std::exception& e) {
            ++failures;
            std::cerr << "warning: replication " << rep << " failed: " << e.what() << "\n";
        }
    }
    if (failures > 0)
        std::cerr << "warning: summary covers " << traces.size() << " of " << cfg.reps
                  << " replications\n";
    write_file(cfg.out_dir + "/summary.csv", summarize_traces(traces));
    return traces.empty() ? 1 : 0;
}

namespace {

    struct Flags {
        std::string task, container, selector, score, variant, mutation, out, config_path;
        long iterations = 0, batch_size = 0, log_interval = 0;
        std::uint64_t seed = 0;
        int reps = 1, grid_res = 0, subgrid_depth = 0, knn = 0;
        double mutation_rate = 0.0, eta = 0.0, l = 0.0, epsilon = 0.0, rho_init = 0.0;
    };

    void add_common_options(CLI::App* cmd, Flags& f)
    {
        cmd->add_option("--task", f.task, "task name: arm | synthetic6");
        cmd->add_option("--container", f.container, "container: grid | archive");
        cmd->add_option("--selector", f.selector,
                        "selector: none | uniform | score | population | pareto");
        cmd->add_option("--score", f.score, "score: fitness | novelty | curiosity");
        cmd->add_option("--variant", f.variant, "variant shorthand, e.g. grid_random or NSLC");
        cmd->add_option("--batch-size", f.batch_size, "individuals per batch");
        cmd->add_option("--iterations", f.iterations, "number of batches");
        cmd->add_option("--seed", f.seed, "base random seed");
        cmd->add_option("--out", f.out, "output directory");
        cmd->add_option("--log-interval", f.log_interval, "batches between metric rows");
        cmd->add_option("--mutation", f.mutation, "mutation: poly | resample");
        cmd->add_option("--mutation-rate", f.mutation_rate, "per-gene mutation probability");
        cmd->add_option("--eta", f.eta, "polynomial mutation index");
        cmd->add_option("--grid-res", f.grid_res, "grid cells per descriptor dimension");
        cmd->add_option("--subgrid-depth", f.subgrid_depth, "grid novelty sub-grid half-width");
        cmd->add_option("--l", f.l, "archive minimum descriptor distance");
        cmd->add_option("--epsilon", f.epsilon, "exclusive eps-dominance tolerance");
        cmd->add_option("--knn", f.knn, "neighbor count for novelty / local quality");
        cmd->add_option("--rho-init", f.rho_init, "initial NSLC novelty threshold");
        cmd->add_option("--config", f.config_path, "JSON config file; flags override it");
    }

    bool given(const CLI::App* cmd, const std::string& name)
    {
        const CLI::Option* opt = cmd->get_option_no_throw(name);
        return opt != nullptr && opt->count() > 0;
    }

    ResolvedConfig resolve(const CLI::App* cmd, const Flags& f, bool is_replicate)
    {
        ResolvedConfig cfg;
        if (given(cmd, "--config")) {
            cfg = from_json(read_file(f.config_path));
            if (given(cmd, "--task") && f.task != cfg.task_name) {
                // Flags override the file: re-derive task-shaped defaults and
                // keep the file's generic loop settings.
                ResolvedConfig fresh = default_config(f.task);
                fresh.run.batch_size = cfg.run.batch_size;
                fresh.run.iterations = cfg.run.iterations;
                fresh.run.seed = cfg.run.seed;
                fresh.run.log_interval = cfg.run.log_interval;
                fresh.run.reward = cfg.run.reward;
                fresh.run.penalty = cfg.run.penalty;
                fresh.run.selector = cfg.run.selector;
                fresh.run.container = cfg.run.container;
                fresh.nslc = cfg.nslc;
                fresh.out_dir = cfg.out_dir;
                fresh.reps = cfg.reps;
                cfg = fresh;
            }
        } else {
            if (!given(cmd, "--task") && !given(cmd, "--variant"))
                throw std::invalid_argument("missing --task (or --config)");
            cfg = default_config(given(cmd, "--task") ? f.task : "arm");
        }

        if (given(cmd, "--variant")) {
            if (given(cmd, "--container") || given(cmd, "--selector") || given(cmd, "--score"))
                throw std::invalid_argument(
                    "--variant conflicts with --container/--selector/--score");
            apply_variant(cfg, f.variant);
        } else {
            if (given(cmd, "--container")) {
                if (f.container == "grid")
                    cfg.run.container = ContainerKind::Grid;
                else if (f.container == "archive")
                    cfg.run.container = ContainerKind::Archive;
                else
                    throw std::invalid_argument("unknown --container value: " + f.container);
            }
            if (given(cmd, "--selector")) {
                if (f.selector == "none")
                    cfg.run.selector.kind = SelectorKind::NoSelection;
                else if (f.selector == "uniform")
                    cfg.run.selector.kind = SelectorKind::Uniform;
                else if (f.selector == "score")
                    cfg.run.selector.kind = SelectorKind::ScoreProportionate;
                else if (f.selector == "population")
                    cfg.run.selector.kind = SelectorKind::Population;
                else if (f.selector == "pareto")
                    cfg.run.selector.kind = SelectorKind::Pareto;
                else
                    throw std::invalid_argument("unknown --selector value: " + f.selector);
            }
            if (given(cmd, "--score")) {
                bool uses_score = cfg.run.selector.kind == SelectorKind::ScoreProportionate ||
                                  cfg.run.selector.kind == SelectorKind::Population;
                if (!uses_score)
                    throw std::invalid_argument(
                        "--score requires --selector score or --selector population");
                if (f.score == "fitness")
                    cfg.run.selector.score = ScoreKind::Fitness;
                else if (f.score == "novelty")
                    cfg.run.selector.score = ScoreKind::Novelty;
                else if (f.score == "curiosity")
                    cfg.run.selector.score = ScoreKind::Curiosity;
                else
                    throw std::invalid_argument("unknown --score value: " + f.score);
            } else if ((cfg.run.selector.kind == SelectorKind::ScoreProportionate ||
                        cfg.run.selector.kind == SelectorKind::Population) &&
                       given(cmd, "--selector") && !given(cmd, "--config")) {
                throw std::invalid_argument("--selector " + f.selector + " requires --score");
            }
            cfg.nslc = false;
        }

        if (given(cmd, "--batch-size"))
            cfg.run.batch_size = static_cast<int>(f.batch_size);
        if (given(cmd, "--iterations"))
            cfg.run.iterations = f.iterations;
        if (given(cmd, "--seed"))
            cfg.run.seed = f.seed;
        if (given(cmd, "--log-interval"))
            cfg.run.log_interval = f.log_interval;
        if (given(cmd, "--mutation")) {
            if (f.mutation == "poly")
                cfg.run.mutation.kind = MutationKind::Polynomial;
            else if (f.mutation == "resample")
                cfg.run.mutation.kind = MutationKind::Resample;
            else
                throw std::invalid_argument("unknown --mutation value: " + f.mutation);
        }
        if (given(cmd, "--mutation-rate"))
            cfg.run.mutation.per_gene_rate = f.mutation_rate;
        if (given(cmd, "--eta"))
            cfg.run.mutation.eta = f.eta;
        if (given(cmd, "--grid-res")) {
            Task task = make_task(cfg.task_name);
            cfg.run.grid.resolution.assign(task.descriptor_size, f.grid_res);
        }
        if (given(cmd, "--subgrid-depth"))
            cfg.run.grid.subgrid_depth = f.subgrid_depth;
        if (given(cmd, "--l"))
            cfg.run.archive.l = f.l;
        if (given(cmd, "--epsilon"))
            cfg.run.archive.epsilon = f.epsilon;
        if (given(cmd, "--knn")) {
            cfg.run.grid.knn = f.knn;
            cfg.run.archive.knn = f.knn;
        }
        if (given(cmd, "--rho-init"))
            cfg.run.rho_init = f.rho_init;
        if (given(cmd, "--reps"))
            cfg.reps = f.reps;
        if (given(cmd, "--out"))
            cfg.out_dir = f.out;

        if (cfg.run.iterations < 1)
            throw std::invalid_argument("missing or invalid --iterations");
        if (cfg.out_dir.empty())
            cfg.out_dir = std::string(is_replicate ? "qd_reps_" : "qd_run_") +
                          std::to_string(static_cast<long>(std::time(nullptr)));
        cfg.variant = cfg.nslc ? "NSLC" : variant_name(cfg);
        return cfg;
    }

} // namespace

int cli_main(const std::vector<std::string>& args)
{
    CLI::App app{"Quality-diversity optimization runs"};
    app.require_subcommand(1);
    Flags flags;
    CLI::App* run = app.add_subcommand("run", "execute one run");
    CLI::App* replicate = app.add_subcommand("replicate", "run several seeds and summarize");
    add_common_options(run, flags);
    add_common_options(replicate, flags);
    replicate->add_option("--reps", flags.reps, "number of replications");

    std::vector<const char*> argv;
    argv.push_back("qd");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (run->parsed())
            return cmd_run(resolve(run, flags, false));
        return cmd_replicate(resolve(replicate, flags, true));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qd
