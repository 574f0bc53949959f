#include "qd/pareto.hpp"

#include <algorithm>
#include <limits>

namespace qd {

bool dominates(const ParetoPoint& a, const ParetoPoint& b)
{
    return a.novelty >= b.novelty && a.local_quality >= b.local_quality &&
           (a.novelty > b.novelty || a.local_quality > b.local_quality);
}

std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<ParetoPoint>& points)
{
    const std::size_t n = points.size();
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::vector<std::size_t>> fronts;

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(points[j], points[i])) {
                dominated[j].push_back(i);
                ++domination_count[i];
            }
        }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (domination_count[i] == 0)
            current.push_back(i);
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current)
            for (std::size_t j : dominated[i])
                if (--domination_count[j] == 0)
                    next.push_back(j);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<ParetoPoint>& points,
                                      const std::vector<std::size_t>& front)
{
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> distance(points.size(), 0.0);
    if (front.empty())
        return distance;
    if (front.size() <= 2) {
        for (std::size_t i : front)
            distance[i] = inf;
        return distance;
    }

    auto accumulate = [&](auto value_of) {
        std::vector<std::size_t> order = front;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            double va = value_of(points[a]), vb = value_of(points[b]);
            return va != vb ? va < vb : points[a].id < points[b].id;
        });
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        double range = value_of(points[order.back()]) - value_of(points[order.front()]);
        if (range <= 0.0)
            return;
        for (std::size_t i = 1; i + 1 < order.size(); ++i)
            if (distance[order[i]] != inf)
                distance[order[i]] +=
                    (value_of(points[order[i + 1]]) - value_of(points[order[i - 1]])) / range;
    };
    accumulate([](const ParetoPoint& p) { return p.novelty; });
    accumulate([](const ParetoPoint& p) { return p.local_quality; });
    return distance;
}

std::vector<std::size_t> pareto_order(const std::vector<ParetoPoint>& points)
{
    auto fronts = non_dominated_sort(points);
    std::vector<std::size_t> order;
    order.reserve(points.size());
    for (const auto& front : fronts) {
        auto distance = crowding_distance(points, front);
        std::vector<std::size_t> ranked = front;
        std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
            if (distance[a] != distance[b])
                return distance[a] > distance[b];
            return points[a].id < points[b].id;
        });
        order.insert(order.end(), ranked.begin(), ranked.end());
    }
    return order;
}

} // namespace qd
