#ifndef QD_CONFIG_HPP
#define QD_CONFIG_HPP

#include <optional>
#include <string>

#include "qd/core.hpp"

namespace qd {

/// Everything needed to reproduce a run: task, variant, full loop
/// configuration, output location and replication count. Serialized
/// verbatim into the run directory as config.json.
struct ResolvedConfig {
    std::string task_name = "arm";
    std::string variant;      // grid_random, arch_curiosity, NSLC, ...
    bool nslc = false;
    RunConfig run;
    std::string out_dir;
    int reps = 1;
};

/// Task-appropriate defaults (grid resolution, mutation, archive l, ...).
ResolvedConfig default_config(const std::string& task_name);

/// Variant shorthand -> (container, selector, score) per the standard
/// naming scheme; throws std::invalid_argument on unknown names.
void apply_variant(ResolvedConfig& cfg, const std::string& variant);

/// Synthesized variant name for the configured container/selector pair.
std::string variant_name(const ResolvedConfig& cfg);

std::string to_json(const ResolvedConfig& cfg);
ResolvedConfig from_json(const std::string& json_text);

/// All variant shorthands (both containers x five selector families, plus
/// NSLC).
std::vector<std::string> all_variant_names();

} // namespace qd

#endif
