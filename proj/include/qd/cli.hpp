#ifndef QD_CLI_HPP
#define QD_CLI_HPP

#include <string>
#include <vector>

#include "qd/config.hpp"

namespace qd {

/// Execute one run and write config.json, metrics.csv, collection.csv and
/// (2-D descriptors only) collection.svg into cfg.out_dir. Returns the
/// process exit status.
int cmd_run(const ResolvedConfig& cfg);

/// Run cfg.reps replications with seeds base_seed + rep index, each into
/// rep_NN/ under cfg.out_dir, then write summary.csv with per-batch
/// median and quartiles of every metric over the completed runs.
int cmd_replicate(const ResolvedConfig& cfg);

/// Linear-interpolation (type-7) quantile of unsorted values; p in [0,1].
double quantile_type7(std::vector<double> values, double p);

/// Median/quartile aggregation of several metrics.csv traces.
std::string summarize_traces(const std::vector<MetricsTrace>& traces);

/// Full command-line entry point (argv form), used by main() and the CLI
/// tests.
int cli_main(const std::vector<std::string>& args);

} // namespace qd

#endif
