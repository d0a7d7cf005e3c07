#pragma once

#include <cstdint>
#include <random>

#include "eddr/linalg.hpp"

namespace eddr {

// Independent generator for trial `index` of a run seeded with `seed`.
// Depends only on (seed, index), never on scheduling.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);

}  // namespace eddr
