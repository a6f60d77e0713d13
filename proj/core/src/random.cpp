#include "springembed/random.hpp"

namespace springembed {

std::uint64_t splitMix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng substream(std::uint64_t seed, std::uint64_t stream)
{
    const std::uint64_t key = splitMix64(splitMix64(seed) ^ splitMix64(stream + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(seed)};
    return Rng(seq);
}

Eigen::VectorXd standardNormalVector(Rng& rng, Eigen::Index n)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = normal(rng);
    }
    return v;
}

Eigen::VectorXd meanZeroNormalVector(Rng& rng, Eigen::Index n)
{
    Eigen::VectorXd v = standardNormalVector(rng, n);
    v.array() -= v.mean();
    return v;
}

}  // namespace springembed
