#pragma once

#include <cmath>

#include "eddr/linalg.hpp"
#include "eddr/rng.hpp"

namespace testutil {

inline eddr::Matrix random_spd(int p, std::uint64_t seed) {
  auto rng = eddr::substream(seed, 77);
  const eddr::Matrix G = eddr::standard_normal(p, p, rng);
  return G * G.transpose() / p + 0.5 * eddr::Matrix::Identity(p, p);
}

inline eddr::Matrix random_sym(int p, std::uint64_t seed) {
  auto rng = eddr::substream(seed, 78);
  const eddr::Matrix H = eddr::standard_normal(p, p, rng);
  return 0.5 * (H + H.transpose());
}

inline eddr::Matrix random_orthogonal(int p, std::uint64_t seed) {
  auto rng = eddr::substream(seed, 79);
  Eigen::HouseholderQR<eddr::Matrix> qr(eddr::standard_normal(p, p, rng));
  return qr.householderQ();
}

inline double rel_err(double a, double b) {
  return std::fabs(a - b) / std::max(1e-300, std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace testutil
