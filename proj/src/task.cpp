#include "qd/task.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qd {

double population_variance(const std::vector<double>& values)
{
    if (values.empty())
        return 0.0;
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == hi)
        return 0.0;
    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values)
        var += (v - mean) * (v - mean);
    return var / static_cast<double>(values.size());
}

namespace {

    double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

    constexpr int kArmJoints = 8;
    constexpr double kArmLength = 1.0;   // fully deployed
    constexpr double kBoxHalf = 1.1 * kArmLength; // bounding box half-side

    // Gripper position from cumulative joint angles; each gene maps to an
    // angle in [-pi/2, pi/2].
    std::pair<Descriptor, double> arm_evaluate(const Genotype& g)
    {
        if (g.values.size() != kArmJoints)
            throw std::invalid_argument("arm task expects 8 genes");
        double theta = 0.0, x = 0.0, y = 0.0;
        for (double gene : g.values) {
            theta += (gene - 0.5) * std::numbers::pi;
            x += (kArmLength / kArmJoints) * std::cos(theta);
            y += (kArmLength / kArmJoints) * std::sin(theta);
        }
        Descriptor desc;
        desc.coords = {clamp01((x + kBoxHalf) / (2.0 * kBoxHalf)),
                       clamp01((y + kBoxHalf) / (2.0 * kBoxHalf))};
        return {std::move(desc), 0.0 - population_variance(g.values)};
    }

    std::pair<Descriptor, double> synthetic6_evaluate(const Genotype& g)
    {
        if (g.values.size() != 36)
            throw std::invalid_argument("synthetic6 task expects 36 genes");
        Descriptor desc;
        desc.coords.resize(6);
        for (int d = 0; d < 6; ++d) {
            double sum = 0.0;
            for (int j = 0; j < 6; ++j)
                sum += g.values[6 * d + j];
            desc.coords[d] = clamp01(sum / 6.0);
        }
        return {std::move(desc), 0.0 - population_variance(g.values)};
    }

} // namespace

Task make_arm_task()
{
    Task task;
    task.name = "arm";
    task.genotype_size = kArmJoints;
    task.encoding = EncodingKind::Continuous;
    task.descriptor_size = 2;
    task.quality_offset = 1.0;
    task.evaluate = arm_evaluate;
    return task;
}

Task make_synthetic6_task()
{
    Task task;
    task.name = "synthetic6";
    task.genotype_size = 36;
    task.encoding = EncodingKind::Sampled;
    task.sample_step = 0.05;
    task.descriptor_size = 6;
    task.quality_offset = 1.0;
    task.evaluate = synthetic6_evaluate;
    return task;
}

Task make_task(const std::string& name)
{
    if (name == "arm")
        return make_arm_task();
    if (name == "synthetic6")
        return make_synthetic6_task();
    throw std::invalid_argument("unknown task: " + name);
}

} // namespace qd
