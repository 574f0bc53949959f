#ifndef QD_GRID_CONTAINER_HPP
#define QD_GRID_CONTAINER_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "qd/container.hpp"

namespace qd {

struct GridParams {
    std::vector<int> resolution; // cells per descriptor dimension
    int subgrid_depth = 3;       // +-k cells per dimension for the novelty sub-grid
    int knn = 15;                // neighbor count for local quality
    double quality_offset = 1.0;
};

/// Per-dimension cell index: floor(coord * res), clamped to the grid. Out of
/// range coordinates are clamped to [0,1] first.
std::vector<int> discretize(const Descriptor& desc, const std::vector<int>& resolution);

/// Discretized elitist container: one individual per cell, highest fitness
/// kept, ties keep the incumbent. Novelty is one minus the filled-cell
/// density of the surrounding sub-grid (truncated at the borders), so that
/// higher means more novel.
class GridContainer final : public Container {
public:
    explicit GridContainer(GridParams params);

    AddOutcome add(const Individual& ind) override;
    void update() override;
    std::size_t size() const override { return count_; }
    std::vector<const Individual*> members_by_id() const override;
    Individual* find(std::uint64_t id) override;
    double novelty_of(const Individual& ind) const override;
    int local_quality_of(const Individual& ind) const override;
    double quality_offset() const override { return params_.quality_offset; }
    bool tracks_total_novelty() const override { return false; }
    std::string cell_label(const Individual& ind) const override;

    const GridParams& params() const { return params_; }
    const std::optional<Individual>& cell(std::size_t flat_index) const { return cells_[flat_index]; }
    std::size_t cell_count() const { return cells_.size(); }
    std::size_t flat_index(const std::vector<int>& cell_index) const;

private:
    double subgrid_novelty(const std::vector<int>& center) const;

    GridParams params_;
    std::vector<std::optional<Individual>> cells_;
    std::vector<std::size_t> strides_;
    std::unordered_map<std::uint64_t, std::size_t> slot_by_id_;
    std::size_t count_ = 0;
};

} // namespace qd

#endif
