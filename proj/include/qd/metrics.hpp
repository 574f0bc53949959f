#ifndef QD_METRICS_HPP
#define QD_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qd/container.hpp"

namespace qd {

/// Snapshot of the four collection-quality measures at one logging point.
/// max_quality is raw fitness; total_quality includes the quality offset;
/// total_novelty is undefined for grid containers.
struct MetricsRow {
    long batch = 0;
    long evals = 0;
    std::size_t size = 0;
    std::optional<double> max_quality;
    double total_quality = 0.0;
    std::optional<double> total_novelty;
};

using MetricsTrace = std::vector<MetricsRow>;

/// Canonical 9-significant-digit rendering used by every CSV column, and
/// the matching value quantization. Metric sums run over quantized values
/// in ascending-id order so that recomputing them from collection.csv
/// reproduces metrics.csv exactly.
std::string format_value(double v);
double quantize(double v);

MetricsRow compute_metrics(const Container& container, long batch, long evals);

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsRow& row);
void write_metrics_csv(const MetricsTrace& trace, const std::string& path);
MetricsTrace read_metrics_csv(const std::string& path);

/// One row per member, ascending id: id, cell, descriptor coords, raw
/// fitness, novelty, local quality, curiosity, genotype values.
std::string collection_csv(const Container& container, std::size_t descriptor_dim,
                           std::size_t genotype_size);
void write_collection_csv(const Container& container, std::size_t descriptor_dim,
                          std::size_t genotype_size, const std::string& path);

/// 2-D collection plot: one rect per grid cell or circle per archive member,
/// colored light (best fitness) to dark (worst). Throws
/// std::invalid_argument for descriptor dimensions other than 2.
std::string render_collection_svg(const Container& container, std::size_t descriptor_dim);

} // namespace qd

#endif
