#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "carrollian/expr.hpp"

namespace carrollian {

class CarrollBundle;

// Basis monomial of the mixed coframe {dx^1..dx^n, theta}: a strictly
// increasing set of base indices (bitmask, bit a-1 for dx^a) and a theta flag.
// Theta sits last in the canonical ordering of every stored monomial.
struct Monomial {
  uint32_t bits = 0;
  bool theta = false;

  int degree() const;
  auto operator<=>(const Monomial&) const = default;

  std::vector<int> base_indices() const;  // 1-based, ascending
  static Monomial scalar() { return {}; }
  static Monomial dx(int a);                          // 1-based
  static Monomial of(std::vector<int> base_1based, bool theta);
  static std::vector<Monomial> all_of_degree(int n, int degree);
  std::string str(const std::string& base_symbol = "dx") const;  // e.g. dx1^dx3^th
};

// Degree-k differential form on the chart: finite monomial -> coefficient map.
// Zero coefficients are pruned; all monomials have the stated degree.
class Form {
 public:
  int n = 0;
  int degree = 0;
  std::map<Monomial, Expr> c;

  static Form zero(int n, int degree);
  static Form scalar(int n, const Expr& f);
  static Form monomial(int n, const Monomial& m, const Expr& coeff);

  const Expr& coeff(const Monomial& m) const;  // zero Expr when absent
  bool structurally_zero() const { return c.empty(); }
  void prune();
  std::string str(const std::string& base_symbol = "dx") const;
};

Form operator+(const Form& a, const Form& b);
Form operator-(const Form& a, const Form& b);
Form operator-(const Form& a);
Form operator*(const Expr& s, const Form& a);
Form operator*(double s, const Form& a);

// Sign of reordering the concatenation of two disjoint monomials into
// canonical order; 0 when they share a factor.
int wedge_sign(const Monomial& a, const Monomial& b, int n);
Form wedge(const Form& a, const Form& b);

// Horizontal / vertical split: (theta-free part, theta part as stored).
std::pair<Form, Form> decompose(const Form& xi);

// Contraction with the Euler vector field; degree k-1, errors on degree 0.
Form interior_euler(const Form& xi);

Form exterior_derivative(const Form& xi, const CarrollBundle& b);
Form lie_euler(const Form& xi, const CarrollBundle& b);          // coefficient-wise t d/dt
Form lie_euler_cartan(const Form& xi, const CarrollBundle& b);   // i d + d i, kept as oracle
Form covariant_derivative(const Form& xi, const CarrollBundle& b);  // horizontal input only
Form curvature(const CarrollBundle& b);  // F = d(theta) = dA

struct WeightResult {
  enum class Kind { Value, NonHomogeneous, Any } kind = Kind::NonHomogeneous;
  double lambda = 0.0;
  std::string str() const;
};
WeightResult weight_of(const Form& xi, const CarrollBundle& b);

// theta wedge helper: the form theta (vertical unit one-form).
Form theta_form(int n);

// Pointwise helpers used by residual checks.
double max_abs(const Form& f, const std::vector<Point>& pts);
double max_abs_diff(const Form& a, const Form& b, const std::vector<Point>& pts);

}  // namespace carrollian
