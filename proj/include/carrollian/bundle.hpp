#pragma once

#include <vector>

#include "carrollian/expr.hpp"
#include "carrollian/sampling.hpp"

namespace carrollian {

// Chart data of a Carrollian R^x-bundle with principal connection:
// base dimension n >= 1, base metric g(x) (symmetric, t-independent,
// positive definite over the chart box), connection components A_a(x).
// The mixed coframe is {dx^1..dx^n, theta} with theta = dt/t + A_a dx^a;
// the bundle caches the inverse metric, det g and sqrt(det g) (represented
// as exp(ln|det g|/2), which stays inside the expression grammar and folds
// to a constant for constant metrics).
class CarrollBundle {
 public:
  CarrollBundle(int n, std::vector<std::vector<Expr>> g, std::vector<Expr> A,
                std::vector<double> box_lo = {}, std::vector<double> box_hi = {});

  static CarrollBundle flat(int n);

  int n = 0;
  std::vector<std::vector<Expr>> g;      // n x n
  std::vector<std::vector<Expr>> g_inv;  // adjugate / det
  std::vector<Expr> A;                   // n entries
  Expr det_g;
  Expr sqrt_det;                          // volume density of the base metric
  std::vector<double> box_lo, box_hi;     // chart box used for sampled checks

  SampleSpec sample_spec(int count, uint64_t seed) const;
};

Expr matrix_determinant(const std::vector<std::vector<Expr>>& m);

}  // namespace carrollian
