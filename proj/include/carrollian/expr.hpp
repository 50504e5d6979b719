#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace carrollian {

// A point of the chart: base coordinates x^1..x^n plus the fibre coordinate t.
// t = 0 is excluded (the fibre is R^x); the boundary value is reachable only
// through Point::closure, used when extending operators to the zero section.
struct Point {
  std::vector<double> x;
  double t = 1.0;

  Point(std::vector<double> xs, double tv) : x(std::move(xs)), t(tv) {
    if (t == 0.0)
      throw std::invalid_argument(
          "fibre coordinate t must be nonzero; use Point::closure for the t = 0 boundary");
  }
  static Point closure(std::vector<double> xs) {
    Point p;
    p.x = std::move(xs);
    p.t = 0.0;
    return p;
  }
  int n() const { return static_cast<int>(x.size()); }

 private:
  Point() = default;
};

enum class ExprKind : uint8_t {
  Constant,
  Coord,
  Fibre,
  Sum,
  Product,
  Pow,
  Sin,
  Cos,
  Exp,
  LnAbs,
};

class Expr;

struct ExprNode {
  ExprKind kind = ExprKind::Constant;
  double value = 0.0;       // Constant
  int axis = -1;            // Coord (0-based)
  int exponent = 1;         // Pow (integer, may be negative)
  std::vector<Expr> kids;   // Sum/Product n-ary; unary ops and Pow use kids[0]
  uint64_t hash = 0;
  uint32_t coord_mask = 0;  // bit a set when x^{a+1} occurs
  bool uses_fibre = false;
};

// Immutable scalar expression; all constructors simplify (constant folding,
// flattening, like-term/exponent merging), so structural normal form is an
// invariant, not a separate pass. Negation and quotients are represented as
// products and integer powers.
class Expr {
 public:
  Expr();  // constant 0
  static Expr constant(double v);
  static Expr coord(int axis);
  static Expr fibre();
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(const Expr& base, int exponent);
  static Expr sin(const Expr& a);
  static Expr cos(const Expr& a);
  static Expr exp(const Expr& a);
  static Expr ln_abs(const Expr& a);

  const ExprNode& node() const { return *n_; }
  const ExprNode* ptr() const { return n_.get(); }
  ExprKind kind() const { return n_->kind; }
  uint64_t hash() const { return n_->hash; }
  bool uses_fibre() const { return n_->uses_fibre; }
  uint32_t coord_mask() const { return n_->coord_mask; }
  bool is_constant() const { return n_->kind == ExprKind::Constant; }
  bool is_zero() const { return is_constant() && n_->value == 0.0; }
  bool is_one() const { return is_constant() && n_->value == 1.0; }
  double constant_value() const;

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : n_(std::move(n)) {}
  static Expr wrap(ExprNode&& node);
  static Expr make_unary(ExprKind kind, const Expr& a);
  std::shared_ptr<const ExprNode> n_;
};

struct EvalError : std::runtime_error {
  std::string node_text;  // printable form of the offending subexpression
  EvalError(const std::string& msg, std::string node);
};

bool structurally_equal(const Expr& a, const Expr& b);
int compare(const Expr& a, const Expr& b);  // total order: hash first, then structure

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator+(const Expr& a, double b);
Expr operator+(double a, const Expr& b);
Expr operator-(const Expr& a, double b);
Expr operator-(double a, const Expr& b);
Expr operator*(const Expr& a, double b);
Expr operator*(double a, const Expr& b);
Expr operator/(const Expr& a, double b);
Expr operator/(double a, const Expr& b);

double eval(const Expr& e, const Point& p);

// Exact partial derivatives; axis is 0-based, the fibre direction has its own
// entry points. euler_derivative is t*d/dt (the Euler vector field).
Expr partial(const Expr& e, int axis);
Expr partial_fibre(const Expr& e);
Expr euler_derivative(const Expr& e);

Expr substitute_fibre(const Expr& e, const Expr& replacement);
Expr substitute_coord(const Expr& e, int axis, const Expr& replacement);

// Parseable infix form (see parse.hpp); constants printed with %.17g.
std::string to_string(const Expr& e);

// Decomposition f = sum of t^lambda * g_lambda(x) with integer lambda.
// nullopt when f is not a finite integer-power combination (e.g. ln|t|).
struct TMonomial {
  int lambda = 0;
  Expr coeff;
};
std::optional<std::vector<TMonomial>> t_monomials(const Expr& e);

double pow_int(double base, int exponent);

}  // namespace carrollian
