#include "qd/variation.hpp"

#include <cmath>
#include <stdexcept>

namespace qd {

namespace {

    double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

    // Power-law perturbation of index eta; delta in (-1, 1).
    double polynomial_delta(double eta, Rng& rng)
    {
        double u = rng.uniform();
        if (u < 0.5)
            return std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0;
        return 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
    }

    double resample_gene(const Genotype& parent, Rng& rng)
    {
        if (parent.kind == EncodingKind::Sampled) {
            auto levels = static_cast<std::size_t>(std::llround(1.0 / parent.step)) + 1;
            return static_cast<double>(rng.uniform_index(levels)) * parent.step;
        }
        return rng.uniform();
    }

} // namespace

Genotype mutate(const Genotype& parent, const MutationConfig& cfg, Rng& rng)
{
    if (cfg.per_gene_rate <= 0.0 || cfg.per_gene_rate > 1.0)
        throw std::invalid_argument("per-gene mutation rate must be in (0,1]");
    if (cfg.kind == MutationKind::Polynomial && parent.kind == EncodingKind::Sampled)
        throw std::invalid_argument("polynomial mutation requires a continuous genotype");

    Genotype child = parent;
    for (auto& gene : child.values) {
        if (rng.uniform() >= cfg.per_gene_rate)
            continue;
        if (cfg.kind == MutationKind::Polynomial)
            gene = clamp01(gene + polynomial_delta(cfg.eta, rng));
        else
            gene = resample_gene(parent, rng);
    }
    return child;
}

} // namespace qd
