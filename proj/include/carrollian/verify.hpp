#pragma once

#include <cstdint>
#include <vector>

#include "carrollian/report.hpp"

namespace carrollian {

// Seeded property suite over the exterior-calculus and Hodge operators:
// star involution sign law, the defining relation of the star, nilpotency of
// d and delta, commutation with the Euler derivative, weight preservation,
// the horizontal/vertical local star formulas and volume normalization,
// run over flat and curved bundles (connection included) per dimension.
struct VerifyOptions {
  std::vector<int> dims{1, 2, 3};  // base dimensions to cover
  uint64_t seed = 1;
  int samples = 40;       // evaluation points per case
  double tolerance = 1e-9;
};

Report run_verify(const VerifyOptions& opts = {});

}  // namespace carrollian
