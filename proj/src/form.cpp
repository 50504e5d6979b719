#include "carrollian/form.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "carrollian/bundle.hpp"

namespace carrollian {

namespace {
const Expr kZero = Expr::constant(0.0);
}

int Monomial::degree() const { return std::popcount(bits) + (theta ? 1 : 0); }

std::vector<int> Monomial::base_indices() const {
  std::vector<int> out;
  for (int a = 1; a <= 32; ++a)
    if (bits & (1u << (a - 1))) out.push_back(a);
  return out;
}

Monomial Monomial::dx(int a) {
  if (a < 1 || a > 32) throw std::invalid_argument("coframe index out of range");
  return {1u << (a - 1), false};
}

Monomial Monomial::of(std::vector<int> base_1based, bool theta) {
  Monomial m;
  for (int a : base_1based) {
    if (a < 1 || a > 32) throw std::invalid_argument("coframe index out of range");
    uint32_t bit = 1u << (a - 1);
    if (m.bits & bit) throw std::invalid_argument("repeated coframe index");
    m.bits |= bit;
  }
  m.theta = theta;
  return m;
}

std::vector<Monomial> Monomial::all_of_degree(int n, int degree) {
  std::vector<Monomial> out;
  if (degree < 0 || degree > n + 1) return out;
  uint32_t limit = 1u << n;
  for (uint32_t bits = 0; bits < limit; ++bits) {
    int pc = std::popcount(bits);
    if (pc == degree) out.push_back({bits, false});
    if (pc == degree - 1) out.push_back({bits, true});
  }
  // canonical order: map order of (bits, theta)
  std::sort(out.begin(), out.end());
  return out;
}

std::string Monomial::str(const std::string& base_symbol) const {
  if (bits == 0 && !theta) return "1";
  std::string s;
  for (int a : base_indices()) {
    if (!s.empty()) s += "^";
    s += base_symbol + std::to_string(a);
  }
  if (theta) {
    if (!s.empty()) s += "^";
    s += "th";
  }
  return s;
}

Form Form::zero(int n, int degree) {
  Form f;
  f.n = n;
  f.degree = degree;
  return f;
}

Form Form::scalar(int n, const Expr& f) { return monomial(n, Monomial::scalar(), f); }

Form Form::monomial(int n, const Monomial& m, const Expr& coeff) {
  Form f;
  f.n = n;
  f.degree = m.degree();
  if (!coeff.is_zero()) f.c.emplace(m, coeff);
  return f;
}

const Expr& Form::coeff(const Monomial& m) const {
  auto it = c.find(m);
  return it == c.end() ? kZero : it->second;
}

void Form::prune() {
  for (auto it = c.begin(); it != c.end();)
    it = it->second.is_zero() ? c.erase(it) : std::next(it);
}

std::string Form::str(const std::string& base_symbol) const {
  if (c.empty()) return "0";
  std::string s;
  for (const auto& [m, coeff] : c) {
    if (!s.empty()) s += "  +  ";
    s += "(" + to_string(coeff) + ")";
    if (m.degree() > 0) s += "*" + m.str(base_symbol);
  }
  return s;
}

namespace {
void check_match(const Form& a, const Form& b) {
  if (a.n != b.n) throw std::invalid_argument("forms live on different chart dimensions");
  if (a.degree != b.degree) throw std::invalid_argument("form degrees differ");
}
}  // namespace

Form operator+(const Form& a, const Form& b) {
  check_match(a, b);
  Form out = a;
  for (const auto& [m, coeff] : b.c) {
    auto it = out.c.find(m);
    if (it == out.c.end())
      out.c.emplace(m, coeff);
    else
      it->second = it->second + coeff;
  }
  out.prune();
  return out;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator-(const Form& a) { return Expr::constant(-1.0) * a; }

Form operator*(const Expr& s, const Form& a) {
  Form out = Form::zero(a.n, a.degree);
  if (s.is_zero()) return out;
  for (const auto& [m, coeff] : a.c) {
    Expr v = s * coeff;
    if (!v.is_zero()) out.c.emplace(m, v);
  }
  return out;
}

Form operator*(double s, const Form& a) { return Expr::constant(s) * a; }

int wedge_sign(const Monomial& a, const Monomial& b, int n) {
  if ((a.bits & b.bits) != 0 || (a.theta && b.theta)) return 0;
  // slot sequence: base index a -> a, theta -> n+1; theta is last within
  // each canonical monomial, inversions across the concatenation give the sign
  std::vector<int> seq;
  for (int i : a.base_indices()) seq.push_back(i);
  if (a.theta) seq.push_back(n + 1);
  size_t split = seq.size();
  for (int i : b.base_indices()) seq.push_back(i);
  if (b.theta) seq.push_back(n + 1);
  int inv = 0;
  for (size_t i = 0; i < split; ++i)
    for (size_t j = split; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

Form wedge(const Form& a, const Form& b) {
  if (a.n != b.n) throw std::invalid_argument("forms live on different chart dimensions");
  Form out = Form::zero(a.n, a.degree + b.degree);
  for (const auto& [ma, ca] : a.c)
    for (const auto& [mb, cb] : b.c) {
      int s = wedge_sign(ma, mb, a.n);
      if (s == 0) continue;
      Monomial m{ma.bits | mb.bits, ma.theta || mb.theta};
      Expr v = (s == 1 ? ca * cb : -(ca * cb));
      auto it = out.c.find(m);
      if (it == out.c.end())
        out.c.emplace(m, v);
      else
        it->second = it->second + v;
    }
  out.prune();
  return out;
}

std::pair<Form, Form> decompose(const Form& xi) {
  Form h = Form::zero(xi.n, xi.degree), v = Form::zero(xi.n, xi.degree);
  for (const auto& [m, coeff] : xi.c) (m.theta ? v : h).c.emplace(m, coeff);
  return {h, v};
}

Form interior_euler(const Form& xi) {
  if (xi.degree < 1) throw std::invalid_argument("interior product needs degree >= 1");
  Form out = Form::zero(xi.n, xi.degree - 1);
  for (const auto& [m, coeff] : xi.c) {
    if (!m.theta) continue;
    // dx^I ^ theta with |I| base factors: contraction passes them all
    int sign = std::popcount(m.bits) % 2 == 0 ? 1 : -1;
    Monomial rest{m.bits, false};
    Expr v = sign == 1 ? coeff : -coeff;
    auto it = out.c.find(rest);
    if (it == out.c.end())
      out.c.emplace(rest, v);
    else
      it->second = it->second + v;
  }
  out.prune();
  return out;
}

Form theta_form(int n) { return Form::monomial(n, Monomial{0, true}, Expr::constant(1.0)); }

Form curvature(const CarrollBundle& b) {
  // F = dA for the horizontal connection one-form A_a dx^a (t-independent)
  Form F = Form::zero(b.n, 2);
  for (int a = 1; a <= b.n; ++a) {
    const Expr& Aa = b.A[static_cast<size_t>(a - 1)];
    for (int bdx = 1; bdx <= b.n; ++bdx) {
      Expr d = partial(Aa, bdx - 1);
      if (d.is_zero()) continue;
      F = F + wedge(Form::monomial(b.n, Monomial::dx(bdx), d), Form::monomial(b.n, Monomial::dx(a), Expr::constant(1.0)));
    }
  }
  return F;
}

Form exterior_derivative(const Form& xi, const CarrollBundle& b) {
  if (xi.n != b.n) throw std::invalid_argument("form does not match bundle dimension");
  Form out = Form::zero(b.n, xi.degree + 1);
  if (xi.degree > b.n) return out;
  Form F = curvature(b);
  Form th = theta_form(b.n);
  for (const auto& [m, f] : xi.c) {
    Form mono = Form::monomial(b.n, m, Expr::constant(1.0));
    // horizontal covariant part: sum_a (d_a f - A_a t d_t f) dx^a
    Expr lf = euler_derivative(f);
    for (int a = 1; a <= b.n; ++a) {
      Expr da = partial(f, a - 1) - b.A[static_cast<size_t>(a - 1)] * lf;
      if (da.is_zero()) continue;
      out = out + wedge(Form::monomial(b.n, Monomial::dx(a), da), mono);
    }
    // vertical part: theta ^ (t d_t f) m
    if (!lf.is_zero()) out = out + wedge(lf * th, mono);
    // curvature of the theta factor: d(dx^I ^ theta) = (-1)^{|I|} dx^I ^ F
    if (m.theta && !F.structurally_zero()) {
      Form base = Form::monomial(b.n, Monomial{m.bits, false}, f);
      Form term = wedge(base, F);
      out = out + (std::popcount(m.bits) % 2 == 0 ? term : -term);
    }
  }
  return out;
}

Form lie_euler(const Form& xi, const CarrollBundle& b) {
  if (xi.n != b.n) throw std::invalid_argument("form does not match bundle dimension");
  Form out = Form::zero(xi.n, xi.degree);
  for (const auto& [m, f] : xi.c) {
    Expr lf = euler_derivative(f);
    if (!lf.is_zero()) out.c.emplace(m, lf);
  }
  return out;
}

Form lie_euler_cartan(const Form& xi, const CarrollBundle& b) {
  Form a = interior_euler(exterior_derivative(xi, b));
  if (xi.degree >= 1) {
    Form di = exterior_derivative(interior_euler(xi), b);
    return a + di;
  }
  return a;
}

Form covariant_derivative(const Form& xi, const CarrollBundle& b) {
  for (const auto& kv : xi.c)
    if (kv.first.theta) throw std::invalid_argument("covariant derivative requires a horizontal form");
  return decompose(exterior_derivative(xi, b)).first;
}

WeightResult weight_of(const Form& xi, const CarrollBundle& b) {
  if (xi.c.empty()) return {WeightResult::Kind::Any, 0.0};
  bool have = false;
  int lambda = 0;
  for (const auto& [m, f] : xi.c) {
    auto tm = t_monomials(f);
    if (!tm || tm->size() != 1) return {WeightResult::Kind::NonHomogeneous, 0.0};
    int l = tm->front().lambda;
    if (have && l != lambda) return {WeightResult::Kind::NonHomogeneous, 0.0};
    lambda = l;
    have = true;
  }
  // pointwise confirmation on the bundle's chart box
  Form resid = lie_euler(xi, b) - Expr::constant(static_cast<double>(lambda)) * xi;
  auto pts = sample_points(b.sample_spec(20, 5));
  for (const Point& p : pts)
    for (const auto& [m, f] : resid.c) {
      double scale = std::abs(eval(xi.coeff(m), p));
      if (std::abs(eval(f, p)) > 1e-9 * std::max(1.0, scale))
        return {WeightResult::Kind::NonHomogeneous, 0.0};
    }
  return {WeightResult::Kind::Value, static_cast<double>(lambda)};
}

std::string WeightResult::str() const {
  switch (kind) {
    case Kind::Value: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", lambda);
      return buf;
    }
    case Kind::Any:
      return "any";
    default:
      return "non-homogeneous";
  }
}

double max_abs(const Form& f, const std::vector<Point>& pts) {
  double m = 0.0;
  for (const auto& [mono, coeff] : f.c)
    for (const Point& p : pts) m = std::max(m, std::abs(eval(coeff, p)));
  return m;
}

double max_abs_diff(const Form& a, const Form& b, const std::vector<Point>& pts) {
  return max_abs(a - b, pts);
}

}  // namespace carrollian
