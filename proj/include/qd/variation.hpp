#ifndef QD_VARIATION_HPP
#define QD_VARIATION_HPP

#include "qd/rng.hpp"
#include "qd/types.hpp"

namespace qd {

enum class MutationKind { Polynomial, Resample };

struct MutationConfig {
    MutationKind kind = MutationKind::Polynomial;
    double per_gene_rate = 0.125; // Bernoulli per gene
    double eta = 10.0;            // polynomial distribution index
};

/// Independent per-gene mutation. Polynomial mutation perturbs with the
/// power-law kernel of index eta and clips to [0,1]; resample draws a fresh
/// uniform value (on the sample lattice for sampled genotypes). Unmutated
/// genes are bit-identical to the parent.
Genotype mutate(const Genotype& parent, const MutationConfig& cfg, Rng& rng);

} // namespace qd

#endif
