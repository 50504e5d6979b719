#include "carrollian/hodge.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace carrollian {

namespace {

// slot list of a monomial: base indices ascending, then n+1 for theta
std::vector<int> slots(const Monomial& m, int n) {
  std::vector<int> s;
  for (int i : m.base_indices()) s.push_back(i);
  if (m.theta) s.push_back(n + 1);
  return s;
}

// inverse-metric entry in the mixed coframe (block diagonal, theta slot -1)
Expr ginv_entry(int a, int b, const CarrollBundle& bd) {
  int n = bd.n;
  if (a == n + 1 && b == n + 1) return Expr::constant(-1.0);
  if (a == n + 1 || b == n + 1) return Expr::constant(0.0);
  return bd.g_inv[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)];
}

Expr gram_slots(const std::vector<int>& sa, const std::vector<int>& sb, const CarrollBundle& b) {
  size_t k = sa.size();
  if (k != sb.size()) throw std::invalid_argument("gram of monomials of different degree");
  if (k == 0) return Expr::constant(1.0);
  std::vector<std::vector<Expr>> m(k, std::vector<Expr>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) m[i][j] = ginv_entry(sa[i], sb[j], b);
  return matrix_determinant(m);
}

// sign of the permutation (I, I^c) -> (1..n+1)
int complement_sign(const std::vector<int>& I, const std::vector<int>& Ic) {
  int inv = 0;
  for (int a : I)
    for (int c : Ic)
      if (a > c) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

Monomial monomial_from_slots(const std::vector<int>& s, int n) {
  Monomial m;
  for (int v : s) {
    if (v == n + 1)
      m.theta = true;
    else
      m.bits |= 1u << (v - 1);
  }
  return m;
}

Form star_impl(const Form& xi, const CarrollBundle& b, bool base_only) {
  int n = b.n;
  int dim = base_only ? n : n + 1;
  int k = xi.degree;
  if (k < 0 || k > dim) {
    if (xi.c.empty()) return Form::zero(n, 0);  // structural zero of nominal out-of-range degree
    throw std::invalid_argument("degree out of range for star");
  }
  Form out = Form::zero(n, dim - k);

  // enumerate increasing multi-indices I over {1..dim} of size k
  std::vector<Monomial> candidates = Monomial::all_of_degree(n, k);
  for (const Monomial& mI : candidates) {
    if (base_only && mI.theta) continue;
    if (!base_only) {
      // skip monomials outside {1..n+1}: none, all_of_degree covers exactly them
    }
    std::vector<int> I = slots(mI, n);
    // complement within {1..dim}
    std::vector<int> Ic;
    for (int v = 1; v <= dim; ++v)
      if (std::find(I.begin(), I.end(), v) == I.end()) Ic.push_back(v);
    int sigma = complement_sign(I, Ic);

    // <m_I, xi> summed over the monomials of xi
    std::vector<Expr> terms;
    for (const auto& [mJ, cJ] : xi.c) {
      if (base_only && mJ.theta) throw std::invalid_argument("base star requires a horizontal form");
      Expr gIJ = gram_slots(I, slots(mJ, n), b);
      if (gIJ.is_zero()) continue;
      terms.push_back(gIJ * cJ);
    }
    Expr inner = Expr::sum(std::move(terms));
    if (inner.is_zero()) continue;

    Expr coeff = Expr::constant(static_cast<double>(sigma)) * b.sqrt_det * inner;
    Monomial mC = monomial_from_slots(Ic, n);
    Form piece = Form::monomial(n, mC, coeff);
    out = out + piece;
  }
  return out;
}

}  // namespace

Form volume_form(const CarrollBundle& b) {
  Monomial top;
  for (int a = 1; a <= b.n; ++a) top.bits |= 1u << (a - 1);
  top.theta = true;
  return Form::monomial(b.n, top, b.sqrt_det);
}

Expr gram(const Monomial& m1, const Monomial& m2, const CarrollBundle& b) {
  if (m1.degree() != m2.degree()) throw std::invalid_argument("gram of monomials of different degree");
  return gram_slots(slots(m1, b.n), slots(m2, b.n), b);
}

double inner_product(const Form& xi, const Form& eta, const CarrollBundle& b, const Point& p) {
  if (xi.degree != eta.degree) throw std::invalid_argument("inner product needs equal degrees");
  double acc = 0.0;
  for (const auto& [m1, c1] : xi.c)
    for (const auto& [m2, c2] : eta.c) {
      Expr g = gram(m1, m2, b);
      if (g.is_zero()) continue;
      acc += eval(c1, p) * eval(c2, p) * eval(g, p);
    }
  return acc;
}

Form hodge_star(const Form& xi, const CarrollBundle& b) { return star_impl(xi, b, false); }

Form base_hodge_star(const Form& xi, const CarrollBundle& b) { return star_impl(xi, b, true); }

int star_square_sign(int degree, int n) {
  int k = degree;
  return ((1 + k * (n + 1 - k)) % 2 == 0) ? 1 : -1;
}

int codifferential_sign(int degree, int n) { return star_square_sign(degree, n); }

Form codifferential(const Form& xi, const CarrollBundle& b) {
  if (xi.degree == 0) return Form::zero(xi.n, 0);
  if (xi.degree > b.n + 1 || xi.c.empty()) return Form::zero(xi.n, xi.degree - 1);
  Form sdsx = hodge_star(exterior_derivative(hodge_star(xi, b), b), b);
  int s = codifferential_sign(xi.degree, b.n);
  Form out = s == 1 ? sdsx : -sdsx;
  out.degree = xi.degree - 1;
  return out;
}

Form laplacian(const Form& xi, const CarrollBundle& b) {
  Form a = codifferential(exterior_derivative(xi, b), b);
  if (xi.degree >= 1) {
    Form d2 = exterior_derivative(codifferential(xi, b), b);
    return a + d2;
  }
  return a;
}

Classification classify(const Form& xi, const CarrollBundle& b, double tol,
                        const std::vector<Point>* pts_in) {
  std::vector<Point> pts;
  if (pts_in == nullptr) {
    pts = sample_points(b.sample_spec(100, 1));
    pts_in = &pts;
  }
  Classification r;
  r.d_residual = max_abs(exterior_derivative(xi, b), *pts_in);
  r.delta_residual = max_abs(codifferential(xi, b), *pts_in);
  r.laplacian_residual = max_abs(laplacian(xi, b), *pts_in);
  r.closed = r.d_residual < tol;
  r.coclosed = r.delta_residual < tol;
  r.harmonic = r.laplacian_residual < tol;
  return r;
}

}  // namespace carrollian
