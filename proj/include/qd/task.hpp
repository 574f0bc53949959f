#ifndef QD_TASK_HPP
#define QD_TASK_HPP

#include <functional>
#include <string>
#include <utility>

#include "qd/types.hpp"

namespace qd {

/// Pure evaluation: genotype -> (descriptor, fitness). Evaluation must be
/// deterministic and side-effect free; descriptors land in [0,1]^D.
struct Task {
    std::string name;
    std::size_t genotype_size = 0;
    EncodingKind encoding = EncodingKind::Continuous;
    double sample_step = 0.0; // for Sampled encodings
    std::size_t descriptor_size = 0;
    double quality_offset = 1.0;
    std::function<std::pair<Descriptor, double>(const Genotype&)> evaluate;
};

/// 8-joint planar arm: descriptor = normalized gripper position, fitness =
/// negated population variance of the (normalized) joint genes.
Task make_arm_task();

/// Synthetic 6-D task on 36 sampled genes: descriptor = per-block gene
/// means, fitness = negated population variance of all genes.
Task make_synthetic6_task();

/// Lookup by CLI name ("arm", "synthetic6"); throws on unknown names.
Task make_task(const std::string& name);

/// Population variance (divide by n). Exactly zero for constant input.
double population_variance(const std::vector<double>& values);

} // namespace qd

#endif
