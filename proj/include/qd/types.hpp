#ifndef QD_TYPES_HPP
#define QD_TYPES_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qd {

enum class EncodingKind { Continuous, Sampled };

/// Fixed-length real vector in [0,1]^n. Sampled genotypes additionally lie
/// on the lattice {0, step, 2*step, ..., 1}.
struct Genotype {
    std::vector<double> values;
    EncodingKind kind = EncodingKind::Continuous;
    double step = 0.0; // only meaningful for Sampled

    bool valid(double tol = 1e-9) const;
};

/// Point in the normalized descriptor space [0,1]^D.
struct Descriptor {
    std::vector<double> coords;

    std::size_t dim() const { return coords.size(); }
};

double euclidean(const Descriptor& a, const Descriptor& b);

/// One candidate solution. Descriptor and fitness are set once, at
/// evaluation; novelty and local_quality are caches refreshed against a
/// container; curiosity is the running offspring-success tally.
struct Individual {
    Genotype genotype;
    Descriptor descriptor;
    double fitness = 0.0;
    double novelty = 0.0;
    int local_quality = 0;
    double curiosity = 0.0;
    std::uint64_t id = 0;        // unique within a run, 0 = unset
    std::uint64_t parent_id = 0; // 0 = no parent (random individual)
};

using Batch = std::vector<Individual>;

std::string to_string(EncodingKind k);

} // namespace qd

#endif
