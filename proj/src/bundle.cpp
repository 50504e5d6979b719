#include "carrollian/bundle.hpp"

#include <stdexcept>
#include <string>

namespace carrollian {

namespace {

std::vector<std::vector<Expr>> minor_of(const std::vector<std::vector<Expr>>& m, size_t row, size_t col) {
  size_t n = m.size();
  std::vector<std::vector<Expr>> out;
  out.reserve(n - 1);
  for (size_t i = 0; i < n; ++i) {
    if (i == row) continue;
    std::vector<Expr> r;
    r.reserve(n - 1);
    for (size_t j = 0; j < n; ++j) {
      if (j == col) continue;
      r.push_back(m[i][j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Expr matrix_determinant(const std::vector<std::vector<Expr>>& m) {
  size_t n = m.size();
  if (n == 0) return Expr::constant(1.0);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  std::vector<Expr> terms;
  for (size_t j = 0; j < n; ++j) {
    Expr t = m[0][j] * matrix_determinant(minor_of(m, 0, j));
    terms.push_back(j % 2 == 0 ? t : -t);
  }
  return Expr::sum(std::move(terms));
}

CarrollBundle::CarrollBundle(int n_, std::vector<std::vector<Expr>> g_, std::vector<Expr> A_,
                             std::vector<double> lo, std::vector<double> hi)
    : n(n_), g(std::move(g_)), A(std::move(A_)), box_lo(std::move(lo)), box_hi(std::move(hi)) {
  if (n < 1) throw std::invalid_argument("bundle base dimension must be at least 1");
  if (static_cast<int>(g.size()) != n) throw std::invalid_argument("metric size does not match dimension");
  for (const auto& row : g)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("metric is not square");
  if (static_cast<int>(A.size()) != n)
    throw std::invalid_argument("connection component count does not match dimension");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Expr& e = g[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (e.uses_fibre()) throw std::invalid_argument("base metric must not depend on t");
      if (!structurally_equal(e, g[static_cast<size_t>(j)][static_cast<size_t>(i)]))
        throw std::invalid_argument("base metric must be symmetric");
    }
    if (A[static_cast<size_t>(i)].uses_fibre())
      throw std::invalid_argument("connection components must not depend on t");
  }
  if (box_lo.empty()) box_lo.assign(static_cast<size_t>(n), -1.0);
  if (box_hi.empty()) box_hi.assign(static_cast<size_t>(n), 1.0);
  if (static_cast<int>(box_lo.size()) != n || static_cast<int>(box_hi.size()) != n)
    throw std::invalid_argument("chart box does not match dimension");

  det_g = matrix_determinant(g);
  sqrt_det = Expr::exp(Expr::constant(0.5) * Expr::ln_abs(det_g));

  // inverse via adjugate
  g_inv.assign(static_cast<size_t>(n), std::vector<Expr>(static_cast<size_t>(n), Expr::constant(0.0)));
  Expr inv_det = Expr::pow(det_g, -1);
  for (size_t i = 0; i < static_cast<size_t>(n); ++i)
    for (size_t j = 0; j < static_cast<size_t>(n); ++j) {
      Expr cof = matrix_determinant(minor_of(g, j, i));
      if ((i + j) % 2 == 1) cof = -cof;
      g_inv[i][j] = cof * inv_det;
    }

  // positive definiteness spot check: leading principal minors on the box
  SampleSpec spec = sample_spec(16, 99);
  auto pts = sample_points(spec);
  for (int k = 1; k <= n; ++k) {
    std::vector<std::vector<Expr>> lead(static_cast<size_t>(k), std::vector<Expr>(static_cast<size_t>(k)));
    for (size_t i = 0; i < static_cast<size_t>(k); ++i)
      for (size_t j = 0; j < static_cast<size_t>(k); ++j) lead[i][j] = g[i][j];
    Expr d = matrix_determinant(lead);
    for (const Point& p : pts)
      if (eval(d, p) <= 0.0)
        throw std::invalid_argument("base metric is not positive definite on the chart box (minor " +
                                    std::to_string(k) + ")");
  }
}

CarrollBundle CarrollBundle::flat(int n) {
  std::vector<std::vector<Expr>> g(static_cast<size_t>(n),
                                   std::vector<Expr>(static_cast<size_t>(n), Expr::constant(0.0)));
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) g[i][i] = Expr::constant(1.0);
  std::vector<Expr> A(static_cast<size_t>(n), Expr::constant(0.0));
  return CarrollBundle(n, std::move(g), std::move(A));
}

SampleSpec CarrollBundle::sample_spec(int count, uint64_t seed) const {
  SampleSpec spec;
  spec.n = n;
  spec.lo = box_lo;
  spec.hi = box_hi;
  spec.count = count;
  spec.seed = seed;
  return spec;
}

}  // namespace carrollian
