#include "carrollian/expr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <unordered_map>

namespace carrollian {

namespace {

uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t mix(uint64_t h, uint64_t v) { return splitmix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2))); }

uint64_t double_bits(double v) {
  if (v == 0.0) v = 0.0;  // collapse -0.0
  return std::bit_cast<uint64_t>(v);
}

}  // namespace

double pow_int(double base, int exponent) {
  if (exponent < 0) return 1.0 / pow_int(base, -exponent);
  double r = 1.0, b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

EvalError::EvalError(const std::string& msg, std::string node)
    : std::runtime_error(msg + " in subexpression: " + node), node_text(std::move(node)) {}

Expr Expr::wrap(ExprNode&& node) {
  uint64_t h = mix(0x6b7950c7335e2d1fULL, static_cast<uint64_t>(node.kind));
  switch (node.kind) {
    case ExprKind::Constant:
      h = mix(h, double_bits(node.value));
      node.value = node.value == 0.0 ? 0.0 : node.value;
      break;
    case ExprKind::Coord:
      h = mix(h, static_cast<uint64_t>(node.axis));
      node.coord_mask = node.axis < 32 ? (1u << node.axis) : 0u;
      break;
    case ExprKind::Fibre:
      node.uses_fibre = true;
      break;
    case ExprKind::Pow:
      h = mix(h, static_cast<uint64_t>(static_cast<int64_t>(node.exponent)));
      [[fallthrough]];
    default:
      for (const Expr& k : node.kids) {
        h = mix(h, k.hash());
        node.coord_mask |= k.coord_mask();
        node.uses_fibre = node.uses_fibre || k.uses_fibre();
      }
      break;
  }
  node.hash = h;
  return Expr(std::make_shared<const ExprNode>(std::move(node)));
}

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double v) {
  ExprNode n;
  n.kind = ExprKind::Constant;
  n.value = v;
  return wrap(std::move(n));
}

Expr Expr::coord(int axis) {
  if (axis < 0) throw std::invalid_argument("coordinate axis must be nonnegative");
  ExprNode n;
  n.kind = ExprKind::Coord;
  n.axis = axis;
  return wrap(std::move(n));
}

Expr Expr::fibre() {
  ExprNode n;
  n.kind = ExprKind::Fibre;
  return wrap(std::move(n));
}

double Expr::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value on non-constant expression");
  return n_->value;
}

int compare(const Expr& a, const Expr& b) {
  if (a.ptr() == b.ptr()) return 0;
  if (a.hash() != b.hash()) return a.hash() < b.hash() ? -1 : 1;
  const ExprNode& x = a.node();
  const ExprNode& y = b.node();
  if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
  switch (x.kind) {
    case ExprKind::Constant: {
      uint64_t bx = double_bits(x.value), by = double_bits(y.value);
      if (bx != by) return bx < by ? -1 : 1;
      return 0;
    }
    case ExprKind::Coord:
      if (x.axis != y.axis) return x.axis < y.axis ? -1 : 1;
      return 0;
    case ExprKind::Fibre:
      return 0;
    default:
      break;
  }
  if (x.kind == ExprKind::Pow && x.exponent != y.exponent) return x.exponent < y.exponent ? -1 : 1;
  if (x.kids.size() != y.kids.size()) return x.kids.size() < y.kids.size() ? -1 : 1;
  for (size_t i = 0; i < x.kids.size(); ++i) {
    int c = compare(x.kids[i], y.kids[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool structurally_equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

namespace {

void flatten(ExprKind kind, const Expr& e, std::vector<Expr>& out) {
  if (e.kind() == kind) {
    for (const Expr& k : e.node().kids) flatten(kind, k, out);
  } else {
    out.push_back(e);
  }
}

// coefficient * key split of a term, where key has no leading constant factor
std::pair<double, Expr> coeff_split(const Expr& e) {
  if (e.kind() == ExprKind::Product && !e.node().kids.empty() && e.node().kids.front().is_constant()) {
    const auto& kids = e.node().kids;
    std::vector<Expr> rest(kids.begin() + 1, kids.end());
    return {kids.front().constant_value(), Expr::product(std::move(rest))};
  }
  return {1.0, e};
}

struct ExprHashEq {
  size_t operator()(const Expr& e) const { return static_cast<size_t>(e.hash()); }
  bool operator()(const Expr& a, const Expr& b) const { return structurally_equal(a, b); }
};

}  // namespace

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  for (const Expr& t : terms) flatten(ExprKind::Sum, t, flat);
  double const_acc = 0.0;
  std::unordered_map<Expr, double, ExprHashEq, ExprHashEq> merged;
  std::vector<Expr> order;  // first-seen order of keys, for stable rebuild before sorting
  for (const Expr& t : flat) {
    if (t.is_constant()) {
      const_acc += t.constant_value();
      continue;
    }
    auto [c, key] = coeff_split(t);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, c);
      order.push_back(key);
    } else {
      it->second += c;
    }
  }
  std::vector<Expr> out;
  out.reserve(order.size() + 1);
  for (const Expr& key : order) {
    double c = merged.at(key);
    if (c == 0.0) continue;
    out.push_back(c == 1.0 ? key : product({constant(c), key}));
  }
  if (const_acc != 0.0) out.push_back(constant(const_acc));
  if (out.empty()) return constant(0.0);
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  ExprNode n;
  n.kind = ExprKind::Sum;
  n.kids = std::move(out);
  return wrap(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  for (const Expr& f : factors) flatten(ExprKind::Product, f, flat);
  double c = 1.0;
  std::vector<std::pair<Expr, int>> bases;  // base -> accumulated integer exponent
  for (const Expr& f : flat) {
    if (f.is_constant()) {
      c *= f.constant_value();
      continue;
    }
    Expr base = f;
    int e = 1;
    if (f.kind() == ExprKind::Pow) {
      base = f.node().kids[0];
      e = f.node().exponent;
    }
    bool found = false;
    for (auto& [b, acc] : bases) {
      if (structurally_equal(b, base)) {
        acc += e;
        found = true;
        break;
      }
    }
    if (!found) bases.emplace_back(base, e);
  }
  if (c == 0.0) return constant(0.0);
  std::vector<Expr> out;
  out.reserve(bases.size() + 1);
  for (auto& [b, e] : bases) {
    if (e == 0) continue;
    out.push_back(e == 1 ? b : pow(b, e));
  }
  // pow() may have folded something to a constant (e.g. constant bases)
  double c2 = c;
  std::vector<Expr> out2;
  for (Expr& f : out) {
    if (f.is_constant())
      c2 *= f.constant_value();
    else
      out2.push_back(std::move(f));
  }
  if (c2 == 0.0) return constant(0.0);
  if (out2.empty()) return constant(c2);
  std::sort(out2.begin(), out2.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (c2 != 1.0) out2.insert(out2.begin(), constant(c2));
  if (out2.size() == 1) return out2.front();
  ExprNode n;
  n.kind = ExprKind::Product;
  n.kids = std::move(out2);
  return wrap(std::move(n));
}

Expr Expr::pow(const Expr& base, int exponent) {
  if (exponent == 0) return constant(1.0);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    double v = base.constant_value();
    if (v != 0.0 || exponent > 0) return constant(pow_int(v, exponent));
    // 0^negative is kept so evaluation reports the domain violation
  }
  if (base.kind() == ExprKind::Pow) {
    long long e = static_cast<long long>(base.node().exponent) * exponent;
    if (e > 1000000 || e < -1000000) throw std::invalid_argument("power exponent overflow");
    return pow(base.node().kids[0], static_cast<int>(e));
  }
  if (base.kind() == ExprKind::Product) {
    std::vector<Expr> kids;
    kids.reserve(base.node().kids.size());
    for (const Expr& k : base.node().kids) kids.push_back(pow(k, exponent));
    return product(std::move(kids));
  }
  ExprNode n;
  n.kind = ExprKind::Pow;
  n.exponent = exponent;
  n.kids = {base};
  return wrap(std::move(n));
}

Expr Expr::make_unary(ExprKind kind, const Expr& a) {
  if (a.is_constant()) {
    double v = a.constant_value();
    switch (kind) {
      case ExprKind::Sin:
        return constant(std::sin(v));
      case ExprKind::Cos:
        return constant(std::cos(v));
      case ExprKind::Exp:
        return constant(std::exp(v));
      case ExprKind::LnAbs:
        if (v != 0.0) return constant(std::log(std::fabs(v)));
        break;  // ln|0| kept; evaluation reports the violation
      default:
        break;
    }
  }
  ExprNode n;
  n.kind = kind;
  n.kids = {a};
  return wrap(std::move(n));
}

Expr Expr::sin(const Expr& a) { return make_unary(ExprKind::Sin, a); }
Expr Expr::cos(const Expr& a) { return make_unary(ExprKind::Cos, a); }
Expr Expr::exp(const Expr& a) { return make_unary(ExprKind::Exp, a); }
Expr Expr::ln_abs(const Expr& a) { return make_unary(ExprKind::LnAbs, a); }

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::product({Expr::constant(-1.0), b})}); }
Expr operator-(const Expr& a) { return Expr::product({Expr::constant(-1.0), a}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::product({a, Expr::pow(b, -1)}); }
Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }
Expr operator/(double a, const Expr& b) { return Expr::constant(a) / b; }

namespace {

double eval_node(const ExprNode* n, const Point& p, std::unordered_map<const ExprNode*, double>& memo);

double eval_kids_product(const ExprNode* n, const Point& p,
                         std::unordered_map<const ExprNode*, double>& memo) {
  double r = 1.0;
  for (const Expr& k : n->kids) r *= eval_node(k.ptr(), p, memo);
  return r;
}

double eval_node(const ExprNode* n, const Point& p, std::unordered_map<const ExprNode*, double>& memo) {
  switch (n->kind) {
    case ExprKind::Constant:
      return n->value;
    case ExprKind::Coord:
      if (n->axis >= p.n())
        throw EvalError("coordinate index exceeds point dimension", "x" + std::to_string(n->axis + 1));
      return p.x[static_cast<size_t>(n->axis)];
    case ExprKind::Fibre:
      return p.t;
    default:
      break;
  }
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  double r = 0.0;
  switch (n->kind) {
    case ExprKind::Sum:
      for (const Expr& k : n->kids) r += eval_node(k.ptr(), p, memo);
      break;
    case ExprKind::Product:
      r = eval_kids_product(n, p, memo);
      break;
    case ExprKind::Pow: {
      double b = eval_node(n->kids[0].ptr(), p, memo);
      if (b == 0.0 && n->exponent < 0)
        throw EvalError("division by zero", to_string(Expr::pow(n->kids[0], n->exponent)));
      r = pow_int(b, n->exponent);
      break;
    }
    case ExprKind::Sin:
      r = std::sin(eval_node(n->kids[0].ptr(), p, memo));
      break;
    case ExprKind::Cos:
      r = std::cos(eval_node(n->kids[0].ptr(), p, memo));
      break;
    case ExprKind::Exp:
      r = std::exp(eval_node(n->kids[0].ptr(), p, memo));
      break;
    case ExprKind::LnAbs: {
      double b = eval_node(n->kids[0].ptr(), p, memo);
      if (b == 0.0) throw EvalError("logarithm of zero", to_string(Expr::ln_abs(n->kids[0])));
      r = std::log(std::fabs(b));
      break;
    }
    default:
      throw std::logic_error("unreachable expression kind");
  }
  memo.emplace(n, r);
  return r;
}

}  // namespace

double eval(const Expr& e, const Point& p) {
  std::unordered_map<const ExprNode*, double> memo;
  return eval_node(e.ptr(), p, memo);
}

namespace {

// var: 0-based axis, or -1 for the fibre coordinate
Expr derive(const Expr& e, int var, std::unordered_map<const ExprNode*, Expr>& memo) {
  const ExprNode* n = e.ptr();
  switch (n->kind) {
    case ExprKind::Constant:
      return Expr::constant(0.0);
    case ExprKind::Coord:
      return Expr::constant(n->axis == var ? 1.0 : 0.0);
    case ExprKind::Fibre:
      return Expr::constant(var == -1 ? 1.0 : 0.0);
    default:
      break;
  }
  // quick prune: no dependence on the variable
  if (var == -1) {
    if (!n->uses_fibre) return Expr::constant(0.0);
  } else if (var < 32 && !(n->coord_mask & (1u << var))) {
    return Expr::constant(0.0);
  }
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  Expr r;
  switch (n->kind) {
    case ExprKind::Sum: {
      std::vector<Expr> terms;
      terms.reserve(n->kids.size());
      for (const Expr& k : n->kids) terms.push_back(derive(k, var, memo));
      r = Expr::sum(std::move(terms));
      break;
    }
    case ExprKind::Product: {
      std::vector<Expr> terms;
      for (size_t i = 0; i < n->kids.size(); ++i) {
        Expr dk = derive(n->kids[i], var, memo);
        if (dk.is_zero()) continue;
        std::vector<Expr> fs;
        fs.reserve(n->kids.size());
        for (size_t j = 0; j < n->kids.size(); ++j) fs.push_back(j == i ? dk : n->kids[j]);
        terms.push_back(Expr::product(std::move(fs)));
      }
      r = Expr::sum(std::move(terms));
      break;
    }
    case ExprKind::Pow:
      r = Expr::product({Expr::constant(static_cast<double>(n->exponent)),
                         Expr::pow(n->kids[0], n->exponent - 1), derive(n->kids[0], var, memo)});
      break;
    case ExprKind::Sin:
      r = Expr::product({Expr::cos(n->kids[0]), derive(n->kids[0], var, memo)});
      break;
    case ExprKind::Cos:
      r = Expr::product({Expr::constant(-1.0), Expr::sin(n->kids[0]), derive(n->kids[0], var, memo)});
      break;
    case ExprKind::Exp:
      r = Expr::product({e, derive(n->kids[0], var, memo)});
      break;
    case ExprKind::LnAbs:
      r = Expr::product({Expr::pow(n->kids[0], -1), derive(n->kids[0], var, memo)});
      break;
    default:
      throw std::logic_error("unreachable expression kind");
  }
  memo.emplace(n, r);
  return r;
}

}  // namespace

Expr partial(const Expr& e, int axis) {
  if (axis < 0) throw std::invalid_argument("partial axis must be nonnegative; use partial_fibre for t");
  std::unordered_map<const ExprNode*, Expr> memo;
  return derive(e, axis, memo);
}

Expr partial_fibre(const Expr& e) {
  std::unordered_map<const ExprNode*, Expr> memo;
  return derive(e, -1, memo);
}

Expr euler_derivative(const Expr& e) { return Expr::fibre() * partial_fibre(e); }

namespace {

Expr rebuild(const Expr& e, const std::function<std::optional<Expr>(const ExprNode*)>& leaf,
             std::unordered_map<const ExprNode*, Expr>& memo) {
  const ExprNode* n = e.ptr();
  if (auto r = leaf(n)) return *r;
  switch (n->kind) {
    case ExprKind::Constant:
    case ExprKind::Coord:
    case ExprKind::Fibre:
      return e;
    default:
      break;
  }
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  std::vector<Expr> kids;
  kids.reserve(n->kids.size());
  for (const Expr& k : n->kids) kids.push_back(rebuild(k, leaf, memo));
  Expr r;
  switch (n->kind) {
    case ExprKind::Sum:
      r = Expr::sum(std::move(kids));
      break;
    case ExprKind::Product:
      r = Expr::product(std::move(kids));
      break;
    case ExprKind::Pow:
      r = Expr::pow(kids[0], n->exponent);
      break;
    case ExprKind::Sin:
      r = Expr::sin(kids[0]);
      break;
    case ExprKind::Cos:
      r = Expr::cos(kids[0]);
      break;
    case ExprKind::Exp:
      r = Expr::exp(kids[0]);
      break;
    case ExprKind::LnAbs:
      r = Expr::ln_abs(kids[0]);
      break;
    default:
      throw std::logic_error("unreachable expression kind");
  }
  memo.emplace(n, r);
  return r;
}

}  // namespace

Expr substitute_fibre(const Expr& e, const Expr& replacement) {
  std::unordered_map<const ExprNode*, Expr> memo;
  return rebuild(
      e,
      [&](const ExprNode* n) -> std::optional<Expr> {
        if (n->kind == ExprKind::Fibre) return replacement;
        return std::nullopt;
      },
      memo);
}

Expr substitute_coord(const Expr& e, int axis, const Expr& replacement) {
  std::unordered_map<const ExprNode*, Expr> memo;
  return rebuild(
      e,
      [&](const ExprNode* n) -> std::optional<Expr> {
        if (n->kind == ExprKind::Coord && n->axis == axis) return replacement;
        return std::nullopt;
      },
      memo);
}

namespace {

constexpr int kPrecSum = 1, kPrecProduct = 2, kPrecUnaryMinus = 3, kPrecPow = 4, kPrecAtom = 5;

void print(const Expr& e, int parent_prec, std::string& out);

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_product_body(const std::vector<Expr>& kids, size_t from, std::string& out) {
  for (size_t i = from; i < kids.size(); ++i) {
    if (i > from) out += "*";
    print(kids[i], kPrecProduct, out);
  }
}

void print(const Expr& e, int parent_prec, std::string& out) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprKind::Constant: {
      bool neg = n.value < 0.0;
      if (neg && parent_prec > kPrecSum) out += "(";
      out += format_double(n.value);
      if (neg && parent_prec > kPrecSum) out += ")";
      return;
    }
    case ExprKind::Coord:
      out += "x" + std::to_string(n.axis + 1);
      return;
    case ExprKind::Fibre:
      out += "t";
      return;
    case ExprKind::Sum: {
      bool paren = parent_prec > kPrecSum;
      if (paren) out += "(";
      for (size_t i = 0; i < n.kids.size(); ++i) {
        const Expr& k = n.kids[i];
        auto [c, key] = coeff_split(k);
        bool neg = (k.is_constant() && k.constant_value() < 0.0) || c < 0.0;
        if (i == 0) {
          print(k, kPrecSum, out);
        } else if (neg) {
          out += " - ";
          if (k.is_constant()) {
            out += format_double(-k.constant_value());
          } else {
            Expr flipped = Expr::product({Expr::constant(-c), key});
            print(flipped, kPrecProduct, out);
          }
        } else {
          out += " + ";
          print(k, kPrecSum, out);
        }
      }
      if (paren) out += ")";
      return;
    }
    case ExprKind::Product: {
      bool leading_neg1 = n.kids.front().is_constant() && n.kids.front().constant_value() == -1.0;
      int prec = leading_neg1 ? kPrecUnaryMinus : kPrecProduct;
      bool paren = parent_prec > prec;
      if (paren) out += "(";
      if (leading_neg1) {
        out += "-";
        print_product_body(n.kids, 1, out);
      } else {
        print_product_body(n.kids, 0, out);
      }
      if (paren) out += ")";
      return;
    }
    case ExprKind::Pow: {
      print(n.kids[0], kPrecAtom, out);
      out += "^";
      if (n.exponent < 0) {
        out += "(" + std::to_string(n.exponent) + ")";
      } else {
        out += std::to_string(n.exponent);
      }
      return;
    }
    case ExprKind::Sin:
      out += "sin(";
      print(n.kids[0], 0, out);
      out += ")";
      return;
    case ExprKind::Cos:
      out += "cos(";
      print(n.kids[0], 0, out);
      out += ")";
      return;
    case ExprKind::Exp:
      out += "exp(";
      print(n.kids[0], 0, out);
      out += ")";
      return;
    case ExprKind::LnAbs:
      out += "ln(";
      print(n.kids[0], 0, out);
      out += ")";
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

namespace {

using MonomialMap = std::map<int, std::vector<Expr>>;  // lambda -> terms of the coefficient

std::optional<MonomialMap> monomials_of(const Expr& e);

std::optional<MonomialMap> convolve(const MonomialMap& a, const MonomialMap& b) {
  MonomialMap out;
  for (const auto& [la, ta] : a)
    for (const auto& [lb, tb] : b) {
      Expr pa = Expr::sum(ta), pb = Expr::sum(tb);
      out[la + lb].push_back(pa * pb);
    }
  return out;
}

std::optional<MonomialMap> monomials_of(const Expr& e) {
  if (!e.uses_fibre()) return MonomialMap{{0, {e}}};
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprKind::Fibre:
      return MonomialMap{{1, {Expr::constant(1.0)}}};
    case ExprKind::Sum: {
      MonomialMap out;
      for (const Expr& k : n.kids) {
        auto m = monomials_of(k);
        if (!m) return std::nullopt;
        for (auto& [l, ts] : *m)
          for (Expr& t : ts) out[l].push_back(std::move(t));
      }
      return out;
    }
    case ExprKind::Product: {
      MonomialMap acc{{0, {Expr::constant(1.0)}}};
      for (const Expr& k : n.kids) {
        auto m = monomials_of(k);
        if (!m) return std::nullopt;
        auto c = convolve(acc, *m);
        if (!c) return std::nullopt;
        acc = std::move(*c);
      }
      return acc;
    }
    case ExprKind::Pow: {
      auto m = monomials_of(n.kids[0]);
      if (!m) return std::nullopt;
      if (m->size() == 1) {
        auto& [l, ts] = *m->begin();
        return MonomialMap{{l * n.exponent, {Expr::pow(Expr::sum(ts), n.exponent)}}};
      }
      if (n.exponent < 0) return std::nullopt;  // reciprocal of a genuine t-polynomial
      MonomialMap acc{{0, {Expr::constant(1.0)}}};
      for (int i = 0; i < n.exponent; ++i) {
        auto c = convolve(acc, *m);
        if (!c) return std::nullopt;
        acc = std::move(*c);
      }
      return acc;
    }
    default:
      return std::nullopt;  // sin/cos/exp/ln of a t-dependent argument
  }
}

}  // namespace

std::optional<std::vector<TMonomial>> t_monomials(const Expr& e) {
  auto m = monomials_of(e);
  if (!m) return std::nullopt;
  std::vector<TMonomial> out;
  for (auto& [l, ts] : *m) {
    Expr c = Expr::sum(std::move(ts));
    if (c.is_zero()) continue;
    out.push_back({l, c});
  }
  if (out.empty()) out.push_back({0, Expr::constant(0.0)});
  return out;
}

}  // namespace carrollian
