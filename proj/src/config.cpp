#include "qd/config.hpp"

#include <json.hpp>
#include <stdexcept>

namespace qd {

using nlohmann::json;

ResolvedConfig default_config(const std::string& task_name)
{
    ResolvedConfig cfg;
    cfg.task_name = task_name;
    cfg.run.batch_size = 200;
    cfg.run.iterations = 0; // must be set by flag or config file
    cfg.run.log_interval = 10;
    cfg.run.selector.kind = SelectorKind::Uniform;

    if (task_name == "arm") {
        cfg.run.grid.resolution = {100, 100};
        cfg.run.grid.subgrid_depth = 3;
        cfg.run.archive.descriptor_dim = 2;
        cfg.run.archive.l = 0.01;
        cfg.run.mutation.kind = MutationKind::Polynomial;
        cfg.run.mutation.per_gene_rate = 0.125;
        cfg.run.mutation.eta = 10.0;
        cfg.run.rho_init = 0.01;
    } else if (task_name == "synthetic6") {
        cfg.run.grid.resolution = std::vector<int>(6, 5);
        cfg.run.grid.subgrid_depth = 1;
        cfg.run.archive.descriptor_dim = 6;
        cfg.run.archive.l = 0.25;
        cfg.run.mutation.kind = MutationKind::Resample;
        cfg.run.mutation.per_gene_rate = 0.05;
        cfg.run.rho_init = 1.0;
    } else {
        throw std::invalid_argument("unknown task: " + task_name);
    }
    cfg.run.archive.epsilon = 0.1;
    cfg.run.archive.knn = 15;
    cfg.run.grid.knn = 15;
    cfg.run.grid.quality_offset = 1.0;
    cfg.run.archive.quality_offset = 1.0;
    return cfg;
}

namespace {

    const char* score_name(ScoreKind s)
    {
        switch (s) {
        case ScoreKind::Fitness: return "fitness";
        case ScoreKind::Novelty: return "novelty";
        case ScoreKind::Curiosity: return "curiosity";
        }
        return "fitness";
    }

    ScoreKind score_from(const std::string& name)
    {
        if (name == "fitness")
            return ScoreKind::Fitness;
        if (name == "novelty")
            return ScoreKind::Novelty;
        if (name == "curiosity")
            return ScoreKind::Curiosity;
        throw std::invalid_argument("unknown score: " + name);
    }

    const char* selector_name(SelectorKind k)
    {
        switch (k) {
        case SelectorKind::NoSelection: return "none";
        case SelectorKind::Uniform: return "uniform";
        case SelectorKind::ScoreProportionate: return "score";
        case SelectorKind::Population: return "population";
        case SelectorKind::Pareto: return "pareto";
        }
        return "uniform";
    }

    SelectorKind selector_from(const std::string& name)
    {
        if (name == "none")
            return SelectorKind::NoSelection;
        if (name == "uniform")
            return SelectorKind::Uniform;
        if (name == "score")
            return SelectorKind::ScoreProportionate;
        if (name == "population")
            return SelectorKind::Population;
        if (name == "pareto")
            return SelectorKind::Pareto;
        throw std::invalid_argument("unknown selector: " + name);
    }

} // namespace

void apply_variant(ResolvedConfig& cfg, const std::string& variant)
{
    cfg.variant = variant;
    cfg.nslc = false;
    if (variant == "NSLC" || variant == "nslc") {
        cfg.nslc = true;
        cfg.variant = "NSLC";
        cfg.run.container = ContainerKind::Grid;
        return;
    }

    std::string rest;
    if (variant.rfind("grid_", 0) == 0) {
        cfg.run.container = ContainerKind::Grid;
        rest = variant.substr(5);
    } else if (variant.rfind("arch_", 0) == 0) {
        cfg.run.container = ContainerKind::Archive;
        rest = variant.substr(5);
    } else {
        throw std::invalid_argument("unknown variant: " + variant);
    }

    auto& sel = cfg.run.selector;
    if (rest == "no_selection") {
        sel.kind = SelectorKind::NoSelection;
    } else if (rest == "random") {
        sel.kind = SelectorKind::Uniform;
    } else if (rest == "pareto") {
        sel.kind = SelectorKind::Pareto;
    } else if (rest.rfind("pop_", 0) == 0) {
        sel.kind = SelectorKind::Population;
        sel.score = score_from(rest.substr(4));
    } else {
        sel.kind = SelectorKind::ScoreProportionate;
        sel.score = score_from(rest);
    }
}

std::string variant_name(const ResolvedConfig& cfg)
{
    if (cfg.nslc)
        return "NSLC";
    std::string name = cfg.run.container == ContainerKind::Grid ? "grid_" : "arch_";
    switch (cfg.run.selector.kind) {
    case SelectorKind::NoSelection: return name + "no_selection";
    case SelectorKind::Uniform: return name + "random";
    case SelectorKind::Pareto: return name + "pareto";
    case SelectorKind::Population: return name + "pop_" + score_name(cfg.run.selector.score);
    case SelectorKind::ScoreProportionate: return name + score_name(cfg.run.selector.score);
    }
    return name;
}

std::vector<std::string> all_variant_names()
{
    std::vector<std::string> names;
    for (const char* container : {"grid_", "arch_"})
        for (const char* suffix : {"no_selection", "random", "fitness", "novelty", "curiosity",
                                   "pop_fitness", "pop_novelty", "pop_curiosity", "pareto"})
            names.push_back(std::string(container) + suffix);
    names.push_back("NSLC");
    return names;
}

std::string to_json(const ResolvedConfig& cfg)
{
    json j;
    j["task"] = cfg.task_name;
    j["variant"] = cfg.variant.empty() ? variant_name(cfg) : cfg.variant;
    j["nslc"] = cfg.nslc;
    j["out"] = cfg.out_dir;
    j["reps"] = cfg.reps;

    // Informational echo of the resolved task shape.
    Task task = make_task(cfg.task_name);
    j["task_params"] = {{"genotype_size", task.genotype_size},
                        {"genotype_type", to_string(task.encoding)},
                        {"sample_step", task.sample_step},
                        {"descriptor_size", task.descriptor_size},
                        {"quality_offset", task.quality_offset}};

    json run;
    run["batch_size"] = cfg.run.batch_size;
    run["iterations"] = cfg.run.iterations;
    run["reward"] = cfg.run.reward;
    run["penalty"] = cfg.run.penalty;
    run["seed"] = cfg.run.seed;
    run["log_interval"] = cfg.run.log_interval;
    run["container"] = cfg.run.container == ContainerKind::Grid ? "grid" : "archive";
    run["selector"] = selector_name(cfg.run.selector.kind);
    run["score"] = score_name(cfg.run.selector.score);
    run["tournament_size"] = cfg.run.selector.tournament_size;
    run["rho_init"] = cfg.run.rho_init;

    run["grid"] = {{"resolution", cfg.run.grid.resolution},
                   {"subgrid_depth", cfg.run.grid.subgrid_depth},
                   {"knn", cfg.run.grid.knn},
                   {"quality_offset", cfg.run.grid.quality_offset}};
    run["archive"] = {{"descriptor_dim", cfg.run.archive.descriptor_dim},
                      {"l", cfg.run.archive.l},
                      {"epsilon", cfg.run.archive.epsilon},
                      {"knn", cfg.run.archive.knn},
                      {"quality_offset", cfg.run.archive.quality_offset},
                      {"spatial_index", cfg.run.archive.use_spatial_index}};
    run["mutation"] = {{"kind", cfg.run.mutation.kind == MutationKind::Polynomial ? "poly"
                                                                                  : "resample"},
                       {"rate", cfg.run.mutation.per_gene_rate},
                       {"eta", cfg.run.mutation.eta}};
    j["run"] = run;
    return j.dump(2) + "\n";
}

ResolvedConfig from_json(const std::string& json_text)
{
    json j = json::parse(json_text);
    ResolvedConfig cfg = default_config(j.value("task", std::string("arm")));
    cfg.nslc = j.value("nslc", false);
    cfg.out_dir = j.value("out", std::string());
    cfg.reps = j.value("reps", 1);

    if (j.contains("run")) {
        const json& run = j["run"];
        auto& r = cfg.run;
        r.batch_size = run.value("batch_size", r.batch_size);
        r.iterations = run.value("iterations", r.iterations);
        r.reward = run.value("reward", r.reward);
        r.penalty = run.value("penalty", r.penalty);
        r.seed = run.value("seed", r.seed);
        r.log_interval = run.value("log_interval", r.log_interval);
        if (run.contains("container"))
            r.container = run["container"] == "grid" ? ContainerKind::Grid : ContainerKind::Archive;
        if (run.contains("selector"))
            r.selector.kind = selector_from(run["selector"]);
        if (run.contains("score"))
            r.selector.score = score_from(run["score"]);
        r.selector.tournament_size = run.value("tournament_size", r.selector.tournament_size);
        r.rho_init = run.value("rho_init", r.rho_init);
        if (run.contains("grid")) {
            const json& g = run["grid"];
            r.grid.resolution = g.value("resolution", r.grid.resolution);
            r.grid.subgrid_depth = g.value("subgrid_depth", r.grid.subgrid_depth);
            r.grid.knn = g.value("knn", r.grid.knn);
            r.grid.quality_offset = g.value("quality_offset", r.grid.quality_offset);
        }
        if (run.contains("archive")) {
            const json& a = run["archive"];
            r.archive.descriptor_dim = a.value("descriptor_dim", r.archive.descriptor_dim);
            r.archive.l = a.value("l", r.archive.l);
            r.archive.epsilon = a.value("epsilon", r.archive.epsilon);
            r.archive.knn = a.value("knn", r.archive.knn);
            r.archive.quality_offset = a.value("quality_offset", r.archive.quality_offset);
            r.archive.use_spatial_index = a.value("spatial_index", r.archive.use_spatial_index);
        }
        if (run.contains("mutation")) {
            const json& m = run["mutation"];
            if (m.contains("kind"))
                r.mutation.kind =
                    m["kind"] == "poly" ? MutationKind::Polynomial : MutationKind::Resample;
            r.mutation.per_gene_rate = m.value("rate", r.mutation.per_gene_rate);
            r.mutation.eta = m.value("eta", r.mutation.eta);
        }
    }
    if (j.contains("variant"))
        cfg.variant = j["variant"];
    else
        cfg.variant = variant_name(cfg);
    return cfg;
}

} // namespace qd
