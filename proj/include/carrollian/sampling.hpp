#pragma once

#include <cstdint>
#include <vector>

#include "carrollian/expr.hpp"

namespace carrollian {

// Halton radical-inverse in the given base; index >= 1.
double halton(uint64_t index, uint32_t base);

// Deterministic low-discrepancy sample set: base coordinates in [lo, hi] per
// axis, |t| in [t_min, t_max], alternating fibre sign when both_signs is set.
// The seed shifts the Halton index so failures are reproducible per seed.
struct SampleSpec {
  int n = 1;
  std::vector<double> lo;  // size n (defaults to -1)
  std::vector<double> hi;  // size n (defaults to +1)
  double t_min = 0.5;
  double t_max = 2.0;
  bool both_signs = true;
  int count = 100;
  uint64_t seed = 1;
};

std::vector<Point> sample_points(const SampleSpec& spec);

}  // namespace carrollian
