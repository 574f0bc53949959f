#ifndef QD_RNG_HPP
#define QD_RNG_HPP

#include <cstdint>
#include <random>

namespace qd {

inline std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-stream seed for (master seed, batch, index) so that
/// per-offspring variation is independent of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t batch, std::uint64_t index)
{
    return splitmix64(splitmix64(seed ^ 0x7D1A54E5C3B2F09AULL) + splitmix64(batch) + index * 0x9E3779B97F4A7C15ULL);
}

/// mt19937_64 with a pinned uniform-double mapping (53 bits), so a run is
/// reproducible from its seed regardless of libstdc++ distribution details.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0,1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform index in {0, ..., n-1}; n >= 1.
    std::size_t uniform_index(std::size_t n)
    {
        std::size_t i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i >= n ? n - 1 : i;
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

} // namespace qd

#endif
