#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>

namespace springembed {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitMix64(std::uint64_t x) noexcept;

/// Independent generator for stream `stream` under master seed `seed`.
/// Trial t of a batch always draws from substream(seed, t), so results do
/// not depend on how trials are scheduled across threads.
Rng substream(std::uint64_t seed, std::uint64_t stream);

Eigen::VectorXd standardNormalVector(Rng& rng, Eigen::Index n);

/// Standard normal entries with the mean removed.
Eigen::VectorXd meanZeroNormalVector(Rng& rng, Eigen::Index n);

}  // namespace springembed
