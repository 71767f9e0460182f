#pragma once

#include <random>

#include "magic/hc_core.hpp"

namespace magic::test {

inline HMatrix random_matrix(std::mt19937_64 &rng, double scale = 1.0) {
  std::normal_distribution<double> nd;
  auto r = [&] { return cplx(nd(rng), nd(rng)) * scale; };
  return {r(), r(), r(), r()};
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace magic::test
