#ifndef QD_PARETO_HPP
#define QD_PARETO_HPP

#include <cstdint>
#include <vector>

namespace qd {

/// One point for bi-objective ranking; both objectives are maximized and
/// ties between equal ranks are broken by ascending id.
struct ParetoPoint {
    double novelty = 0.0;
    double local_quality = 0.0;
    std::uint64_t id = 0;
};

/// a dominates b: no worse on both objectives, strictly better on one.
bool dominates(const ParetoPoint& a, const ParetoPoint& b);

/// Fast non-dominated sorting; fronts are disjoint, exhaustive and ordered
/// from best to worst. Returned indices refer into `points`.
std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ParetoPoint>& points);

/// NSGA-II crowding distance within one front; boundary points get infinity
/// and objective scales are normalized by the front's range.
std::vector<double> crowding_distance(const std::vector<ParetoPoint>& points,
                                      const std::vector<std::size_t>& front);

/// Indices of `points` ordered by (front, crowding distance desc, id asc);
/// truncating the result implements the NSGA-II survivor selection.
std::vector<std::size_t> pareto_order(const std::vector<ParetoPoint>& points);

} // namespace qd

#endif
