#include "carrollian/horizon.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "carrollian/hodge.hpp"

namespace carrollian {

namespace {

constexpr double kPi = 3.14159265358979323846;

Expr theta_coord() { return Expr::coord(0); }
Expr phi_coord() { return Expr::coord(1); }
Expr sin_theta() { return Expr::sin(theta_coord()); }
Expr cos_theta() { return Expr::cos(theta_coord()); }

double two_kappa_inv(double kappa) { return 1.0 / (2.0 * kappa); }

// Coefficient factor turning an e-frame slot into its chart expression:
// e1 = (2k)^-1 dx1, e2 = (2k)^-1 sin(x1) dx2.
Expr eframe_factor(int base_index_1based, double kappa) {
  Expr scale = Expr::constant(two_kappa_inv(kappa));
  if (base_index_1based == 1) return scale;
  if (base_index_1based == 2) return scale * sin_theta();
  throw std::invalid_argument("horizon coframe has two base slots");
}

Form euler_lie(const Form& f) {
  Form out = f;
  for (auto& kv : out.c) kv.second = euler_derivative(kv.second);
  out.prune();
  return out;
}

Form euler_lie2(const Form& f) { return euler_lie(euler_lie(f)); }

std::vector<Point> angular_points(const CarrollBundle& b, int count, uint64_t seed) {
  return sample_points(b.sample_spec(count, seed));
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (const std::string& l : labels) {
    if (!out.empty()) out += ", ";
    out += l;
  }
  return out;
}

// Component labels constrained to vanish at t = 0, by degree. The scalar f
// (degree 0) and the horizontal 2-form S2 (degree 2) are exempt.
const char* kExemptionNote =
    "constrained components are S1, T0, T1, T2; the scalar f and the "
    "horizontal part S2 are exempt (the list is asymmetric by design)";

}  // namespace

CarrollBundle make_horizon_bundle(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("surface gravity must be positive");
  double scale2 = two_kappa_inv(kappa) * two_kappa_inv(kappa);
  Expr g11 = Expr::constant(scale2);
  Expr g22 = Expr::constant(scale2) * Expr::pow(sin_theta(), 2);
  std::vector<std::vector<Expr>> g{{g11, Expr::constant(0.0)},
                                   {Expr::constant(0.0), g22}};
  std::vector<Expr> a{Expr::constant(0.0), Expr::constant(0.0)};
  return CarrollBundle(2, std::move(g), std::move(a), {0.2, 0.0}, {kPi - 0.2, 2.0 * kPi});
}

Form eframe_monomial(const Monomial& m, const Expr& coeff, double kappa) {
  Expr c = coeff;
  for (int a : m.base_indices()) c = c * eframe_factor(a, kappa);
  return Form::monomial(2, m, c);
}

Expr spherical_harmonic(int l, int m) {
  if (l < 0 || l > 4) throw std::invalid_argument("spherical harmonics are tabulated for degree 0..4");
  if (std::abs(m) > l) throw std::invalid_argument("harmonic order exceeds its degree");
  Expr c = cos_theta(), s = sin_theta();
  Expr shape = Expr::constant(1.0);
  int am = std::abs(m);
  switch (l) {
    case 0:
      shape = Expr::constant(1.0);
      break;
    case 1:
      shape = (am == 0) ? c : s;
      break;
    case 2:
      if (am == 0) shape = (3.0 * Expr::pow(c, 2) - 1.0) / 2.0;
      else if (am == 1) shape = s * c;
      else shape = Expr::pow(s, 2);
      break;
    case 3:
      if (am == 0) shape = (5.0 * Expr::pow(c, 3) - 3.0 * c) / 2.0;
      else if (am == 1) shape = s * (5.0 * Expr::pow(c, 2) - 1.0);
      else if (am == 2) shape = Expr::pow(s, 2) * c;
      else shape = Expr::pow(s, 3);
      break;
    case 4:
      if (am == 0) shape = (35.0 * Expr::pow(c, 4) - 30.0 * Expr::pow(c, 2) + 3.0) / 8.0;
      else if (am == 1) shape = s * (7.0 * Expr::pow(c, 3) - 3.0 * c);
      else if (am == 2) shape = Expr::pow(s, 2) * (7.0 * Expr::pow(c, 2) - 1.0);
      else if (am == 3) shape = Expr::pow(s, 3) * c;
      else shape = Expr::pow(s, 4);
      break;
  }
  if (m > 0) shape = shape * Expr::cos(Expr::constant(m) * phi_coord());
  if (m < 0) shape = shape * Expr::sin(Expr::constant(am) * phi_coord());
  return shape;
}

AngularOps::AngularOps(double k) : kappa(k), kk2(Expr::constant(4.0 * k * k)) {
  if (!(k > 0.0)) throw std::invalid_argument("surface gravity must be positive");
}

Expr AngularOps::lap0(const Expr& f) const {
  Expr s = sin_theta();
  Expr radial = Expr::pow(s, -1) * partial(s * partial(f, 0), 0);
  Expr azimuthal = Expr::pow(s, -2) * partial(partial(f, 1), 1);
  return -(kk2 * (radial + azimuthal));
}

Form AngularOps::d0(const Expr& f) const {
  return Form::monomial(2, Monomial::dx(1), partial(f, 0)) +
         Form::monomial(2, Monomial::dx(2), partial(f, 1));
}

Expr AngularOps::delta1(const Form& s1) const {
  Expr s = sin_theta();
  Expr st = s1.coeff(Monomial::dx(1));
  Expr sp = s1.coeff(Monomial::dx(2));
  Expr div = kk2 * (Expr::pow(s, -1) * partial(s * st, 0) + Expr::pow(s, -2) * partial(sp, 1));
  return -div;
}

Form AngularOps::d1(const Form& s1) const {
  Expr st = s1.coeff(Monomial::dx(1));
  Expr sp = s1.coeff(Monomial::dx(2));
  return Form::monomial(2, Monomial::of({1, 2}, false), partial(sp, 0) - partial(st, 1));
}

Form AngularOps::delta2(const Form& s2) const {
  Expr s = sin_theta();
  Expr w = s2.coeff(Monomial::of({1, 2}, false));
  Expr comp1 = kk2 * Expr::pow(s, -2) * partial(w, 1);
  Expr comp2 = -(kk2 * s * partial(w * Expr::pow(s, -1), 0));
  return Form::monomial(2, Monomial::dx(1), comp1) + Form::monomial(2, Monomial::dx(2), comp2);
}

Form AngularOps::lap2(const Form& s2) const { return d1(delta2(s2)); }

HorizonComponents split_components(const Form& xi) {
  HorizonComponents out;
  out.S = decompose(xi).first;
  out.T = xi.degree >= 1 ? interior_euler(xi) : Form::zero(xi.n, 0);
  return out;
}

Form laplacian_table(const Form& xi, double kappa) {
  if (xi.n != 2) throw std::invalid_argument("component table needs a 2-dimensional base");
  if (xi.degree < 0 || xi.degree > 3)
    throw std::invalid_argument("component table covers degrees 0..3");
  AngularOps ops(kappa);
  HorizonComponents comp = split_components(xi);
  Form th = theta_form(2);
  switch (xi.degree) {
    case 0: {
      Expr f = comp.S.coeff(Monomial::scalar());
      return Form::scalar(2, -ops.lap0(f) - euler_derivative(euler_derivative(f)));
    }
    case 1: {
      const Form& s1 = comp.S;
      Expr t0 = comp.T.coeff(Monomial::scalar());
      Form shat = ops.delta2(ops.d1(s1)) - ops.d0(ops.delta1(s1)) + euler_lie2(s1) -
                  2.0 * euler_lie(ops.d0(t0));
      Expr that = ops.lap0(t0) - euler_derivative(euler_derivative(t0)) -
                  2.0 * euler_derivative(ops.delta1(s1));
      return shat + wedge(th, Form::scalar(2, that));
    }
    case 2: {
      const Form& s2 = comp.S;
      const Form& t1 = comp.T;
      Form shat = ops.lap2(s2) - euler_lie2(s2) + 2.0 * euler_lie(ops.d1(t1));
      Form that = ops.d0(ops.delta1(t1)) - ops.delta2(ops.d1(t1)) + euler_lie2(t1) +
                  2.0 * euler_lie(ops.delta2(s2));
      return shat + wedge(th, that);
    }
    default: {
      const Form& t2 = comp.T;
      Form that = -(ops.lap2(t2)) - euler_lie2(t2);
      return wedge(th, that);
    }
  }
}

TableReport verify_hodge_table(double kappa, double tol) {
  CarrollBundle b = make_horizon_bundle(kappa);
  std::vector<Point> pts = angular_points(b, 50, 7);
  Form one = Form::scalar(2, Expr::constant(1.0));

  struct Row {
    std::string name;
    Form input;
    std::string expected_str;
    Form expected;
  };
  auto ef = [&](std::vector<int> base, bool th, double sign) {
    return eframe_monomial(Monomial::of(std::move(base), th), Expr::constant(sign), kappa);
  };
  std::vector<Row> rows;
  rows.push_back({"star(1)", one, "e1^e2^th", ef({1, 2}, true, 1.0)});
  rows.push_back({"star(e1)", ef({1}, false, 1.0), "e2^th", ef({2}, true, 1.0)});
  rows.push_back({"star(e2)", ef({2}, false, 1.0), "-e1^th", ef({1}, true, -1.0)});
  rows.push_back({"star(th)", ef({}, true, 1.0), "-e1^e2", ef({1, 2}, false, -1.0)});
  rows.push_back({"star(e1^e2)", ef({1, 2}, false, 1.0), "th", ef({}, true, 1.0)});
  rows.push_back({"star(e1^th)", ef({1}, true, 1.0), "e2", ef({2}, false, 1.0)});
  rows.push_back({"star(e2^th)", ef({2}, true, 1.0), "-e1", ef({1}, false, -1.0)});
  rows.push_back({"star(e1^e2^th)", ef({1, 2}, true, 1.0), "-1", -1.0 * one});

  TableReport report;
  report.tolerance = tol;
  for (const Row& row : rows) {
    Form computed = hodge_star(row.input, b);
    TableEntry e;
    e.entry = row.name;
    e.expected = row.expected_str;
    e.computed = computed.str();
    e.max_deviation = max_abs_diff(computed, row.expected, pts);
    e.pass = e.max_deviation <= tol;
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  }
  return report;
}

TableReport verify_laplacian_table(const Form& xi, double kappa, double tol) {
  CarrollBundle b = make_horizon_bundle(kappa);
  std::vector<Point> pts = angular_points(b, 60, 11);
  Form stack = laplacian(xi, b);
  Form table = laplacian_table(xi, kappa);
  TableEntry e;
  e.entry = "laplacian(" + xi.str() + ")";
  e.expected = table.str();
  e.computed = stack.str();
  e.max_deviation = max_abs_diff(stack, table, pts);
  e.pass = e.max_deviation <= tol;
  TableReport report;
  report.tolerance = tol;
  report.pass = e.pass;
  report.entries.push_back(std::move(e));
  return report;
}

namespace {

// Random trig polynomial from the tabulated harmonics (smooth across poles).
Expr random_angular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> terms(1, 3), ell(0, 4);
  std::uniform_real_distribution<double> amp(-2.0, 2.0);
  Expr out = Expr::constant(0.0);
  int count = terms(rng);
  for (int i = 0; i < count; ++i) {
    int l = ell(rng);
    std::uniform_int_distribution<int> order(-l, l);
    out = out + Expr::constant(amp(rng)) * spherical_harmonic(l, order(rng));
  }
  return out;
}

Expr random_component(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> power(0, 3);
  int lambda = power(rng);
  Expr angular = random_angular(rng);
  if (lambda == 0) return angular;
  return Expr::pow(Expr::fibre(), lambda) * angular;
}

Form random_horizon_form(std::mt19937_64& rng, int degree) {
  Form out = Form::zero(2, degree);
  for (const Monomial& m : Monomial::all_of_degree(2, degree))
    out = out + Form::monomial(2, m, random_component(rng));
  return out;
}

}  // namespace

TableReport laplacian_table_suite(double kappa, double tol, int per_degree, uint64_t seed) {
  TableReport report;
  report.tolerance = tol;
  auto add = [&](const std::string& name, const Form& xi) {
    TableReport one = verify_laplacian_table(xi, kappa, tol);
    TableEntry e = one.entries.front();
    e.entry = name;
    report.pass = report.pass && e.pass;
    report.entries.push_back(std::move(e));
  };

  Expr t2cos = Expr::pow(Expr::fibre(), 2) * cos_theta();
  add("f = t^2 cos(x1)", Form::scalar(2, t2cos));
  add("f = 1", Form::scalar(2, Expr::constant(1.0)));
  add("gamma: T2 = t e1^e2",
      wedge(theta_form(2), eframe_monomial(Monomial::of({1, 2}, false), Expr::fibre(), kappa)));

  std::mt19937_64 rng(seed);
  for (int degree = 0; degree <= 3; ++degree)
    for (int i = 0; i < per_degree; ++i) {
      std::ostringstream name;
      name << "degree " << degree << " random " << (i + 1);
      add(name.str(), random_horizon_form(rng, degree));
    }
  return report;
}

RegularityReport regularity_check(const Form& xi) {
  RegularityReport report;
  report.note = kExemptionNote;
  if (xi.degree == 0) return report;  // f alone: nothing constrained

  HorizonComponents comp = split_components(xi);
  struct Check {
    std::string label;
    const Form* component;
  };
  std::vector<Check> checks;
  if (xi.degree == 1) {
    checks.push_back({"S1", &comp.S});
    checks.push_back({"T0", &comp.T});
  } else if (xi.degree == 2) {
    checks.push_back({"T1", &comp.T});  // S2 exempt
  } else {
    checks.push_back({"T2", &comp.T});  // no horizontal 3-form on a 2-dim base
  }

  for (const Check& check : checks) {
    bool offending = false;
    for (const auto& kv : check.component->c) {
      auto monomials = t_monomials(kv.second);
      if (!monomials) {
        report.verdict = RegularityReport::Verdict::Indeterminate;
        report.note = "component " + check.label + " has t-dependence outside the monomial grammar: " +
                      to_string(kv.second);
        return report;
      }
      for (const TMonomial& tm : *monomials)
        if (tm.lambda < 1 && !tm.coeff.is_zero()) offending = true;
    }
    if (offending) report.offenders.push_back(check.label);
  }
  if (!report.offenders.empty()) report.verdict = RegularityReport::Verdict::NotRegular;
  return report;
}

std::vector<ScanHit> harmonic_scan(double kappa, int l_max, int lambda_max, double tol) {
  if (l_max < 0 || l_max > 4) throw std::invalid_argument("scan needs 0 <= l_max <= 4");
  if (lambda_max < 0) throw std::invalid_argument("scan needs lambda_max >= 0");
  CarrollBundle b = make_horizon_bundle(kappa);
  std::vector<Point> pts = angular_points(b, 50, 13);
  Form th = theta_form(2);

  struct Slot {
    int degree;
    std::string name;
  };
  const std::vector<Slot> slots{{0, "f"},  {1, "S1.e1"}, {1, "S1.e2"}, {1, "T0"},
                                {2, "S2"}, {2, "T1.e1"}, {2, "T1.e2"}, {3, "T2"}};
  auto build = [&](const Slot& slot, const Expr& a) -> Form {
    if (slot.name == "f") return Form::scalar(2, a);
    if (slot.name == "S1.e1") return eframe_monomial(Monomial::dx(1), a, kappa);
    if (slot.name == "S1.e2") return eframe_monomial(Monomial::dx(2), a, kappa);
    if (slot.name == "T0") return wedge(th, Form::scalar(2, a));
    if (slot.name == "S2") return eframe_monomial(Monomial::of({1, 2}, false), a, kappa);
    if (slot.name == "T1.e1") return wedge(th, eframe_monomial(Monomial::dx(1), a, kappa));
    if (slot.name == "T1.e2") return wedge(th, eframe_monomial(Monomial::dx(2), a, kappa));
    return wedge(th, eframe_monomial(Monomial::of({1, 2}, false), a, kappa));
  };

  std::vector<ScanHit> hits;
  for (int degree = 0; degree <= 3; ++degree)
    for (int l = 0; l <= l_max; ++l)
      for (int m = -l; m <= l; ++m)
        for (int lambda = 0; lambda <= lambda_max; ++lambda) {
          Expr a = spherical_harmonic(l, m);
          if (lambda > 0) a = Expr::pow(Expr::fibre(), lambda) * a;
          for (const Slot& slot : slots) {
            if (slot.degree != degree) continue;
            Form xi = build(slot, a);
            double stack_residual = max_abs(laplacian(xi, b), pts);
            if (stack_residual >= tol) continue;
            ScanHit hit;
            hit.degree = degree;
            hit.slot = slot.name;
            hit.l = l;
            hit.m = m;
            hit.lambda = lambda;
            hit.stack_residual = stack_residual;
            hit.table_residual = max_abs(laplacian_table(xi, kappa), pts);
            hit.regular = regularity_check(xi).verdict == RegularityReport::Verdict::Regular;
            hits.push_back(std::move(hit));
          }
        }
  return hits;
}

ExtensionResult extend_to_zero(const Form& xi, double kappa) {
  ExtensionResult result;
  result.laplacian = Form::zero(xi.n, xi.degree);
  result.limit = Form::zero(xi.n, xi.degree);

  RegularityReport reg = regularity_check(xi);
  if (reg.verdict == RegularityReport::Verdict::NotRegular) {
    result.refusal = "not regular at t = 0; offending component(s): " + join_labels(reg.offenders);
    return result;
  }
  if (reg.verdict == RegularityReport::Verdict::Indeterminate) {
    result.refusal = "regularity indeterminate: " + reg.note;
    return result;
  }
  result.accepted = true;

  CarrollBundle b = make_horizon_bundle(kappa);
  result.laplacian = laplacian(xi, b);
  result.finite_limit = true;
  for (const auto& kv : result.laplacian.c) {
    auto monomials = t_monomials(kv.second);
    if (!monomials) {
      result.finite_limit = false;
      result.refusal = "coefficient of " + kv.first.str() +
                       " has t-dependence outside the monomial grammar: " + to_string(kv.second);
      return result;
    }
    for (const TMonomial& tm : *monomials) {
      if (tm.coeff.is_zero()) continue;
      if (tm.lambda < 0) {
        result.finite_limit = false;
        result.refusal = "coefficient of " + kv.first.str() + " carries a negative t-power";
        return result;
      }
      if (tm.lambda == 0)
        result.limit = result.limit + Form::monomial(xi.n, kv.first, tm.coeff);
    }
  }
  return result;
}

}  // namespace carrollian
