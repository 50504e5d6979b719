#include "carrollian/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "carrollian/bundle.hpp"
#include "carrollian/form.hpp"
#include "carrollian/hodge.hpp"

namespace carrollian {

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}
  double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int uniform_int(int a, int b) {
    return a + static_cast<int>(gen() % static_cast<uint64_t>(b - a + 1));
  }
  bool coin() { return (gen() & 1u) != 0; }
};

// Random smooth scalar on the chart: sums/products of constants, coordinates
// and their sines/cosines. t-independent; t-powers are attached separately so
// homogeneity can be controlled.
Expr random_angular(Rng& rng, int n) {
  auto atom = [&]() -> Expr {
    switch (rng.uniform_int(0, 3)) {
      case 0: return Expr::constant(rng.uniform(-2.0, 2.0));
      case 1: return Expr::coord(rng.uniform_int(0, n - 1));
      case 2: return Expr::sin(Expr::coord(rng.uniform_int(0, n - 1)));
      default: return Expr::cos(Expr::coord(rng.uniform_int(0, n - 1)));
    }
  };
  Expr out = atom() * atom() + atom();
  return out;
}

// Random k-form; every coefficient carries t^lam when lam >= 0 (homogeneous),
// otherwise an independent random power 0..2 per monomial (mixed weights).
Form random_form(Rng& rng, int n, int degree, int lam) {
  Form f = Form::zero(n, degree);
  for (const Monomial& m : Monomial::all_of_degree(n, degree)) {
    Expr c = random_angular(rng, n);
    int l = lam >= 0 ? lam : rng.uniform_int(0, 2);
    if (l > 0) c = c * Expr::pow(Expr::fibre(), l);
    f = f + Form::monomial(n, m, c);
  }
  return f;
}

Form random_horizontal(Rng& rng, int n, int degree) {
  Form f = Form::zero(n, degree);
  for (const Monomial& m : Monomial::all_of_degree(n, degree)) {
    if (m.theta) continue;
    Expr c = random_angular(rng, n);
    int l = rng.uniform_int(0, 2);
    if (l > 0) c = c * Expr::pow(Expr::fibre(), l);
    f = f + Form::monomial(n, m, c);
  }
  return f;
}

CarrollBundle make_bundle(Rng& rng, int n, bool curved) {
  if (!curved) return CarrollBundle::flat(n);
  std::vector<std::vector<Expr>> g(static_cast<size_t>(n),
                                   std::vector<Expr>(static_cast<size_t>(n), Expr::constant(0.0)));
  for (int i = 0; i < n; ++i)
    g[static_cast<size_t>(i)][static_cast<size_t>(i)] =
        Expr::constant(2.0 + rng.uniform(0.0, 0.5)) +
        rng.uniform(0.1, 0.4) * Expr::sin(Expr::coord(rng.uniform_int(0, n - 1)));
  if (n >= 2) {
    Expr off = rng.uniform(0.05, 0.25) * Expr::cos(Expr::coord(0));
    g[0][static_cast<size_t>(n - 1)] = off;
    g[static_cast<size_t>(n - 1)][0] = off;
  }
  std::vector<Expr> A(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a)
    A[static_cast<size_t>(a)] = rng.uniform(-0.5, 0.5) * Expr::coord(rng.uniform_int(0, n - 1)) +
                                rng.uniform(-0.3, 0.3) * Expr::sin(Expr::coord(rng.uniform_int(0, n - 1)));
  return CarrollBundle(n, std::move(g), std::move(A));
}

std::string describe_point(const Point& p) {
  std::string out = "x = (";
  char buf[40];
  for (size_t i = 0; i < p.x.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6g", p.x[i]);
    if (i) out += "; ";
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "%.6g", p.t);
  out += ") t = ";
  out += buf;
  return out;
}

struct Deviation {
  double value = 0.0;
  std::string where;  // worst point and monomial
};

// Max pointwise coefficient deviation between two forms, tracking the argmax
// for the failure witness.
Deviation deviation_between(const Form& a, const Form& b, const std::vector<Point>& pts) {
  Deviation dev;
  auto scan = [&](const Monomial& m) {
    const Expr& ca = a.coeff(m);
    const Expr& cb = b.coeff(m);
    for (const Point& p : pts) {
      double d = std::abs(eval(ca, p) - eval(cb, p));
      if (d > dev.value) {
        dev.value = d;
        dev.where = describe_point(p) + " monomial " + m.str();
      }
    }
  };
  for (const auto& kv : a.c) scan(kv.first);
  for (const auto& kv : b.c) {
    if (a.c.find(kv.first) == a.c.end()) scan(kv.first);
  }
  return dev;
}

struct SuiteRunner {
  const VerifyOptions& opts;
  Report& report;
  int n;
  std::string flavor;  // "flat" | "curved"
  const CarrollBundle& b;
  std::vector<Point> pts;
  Rng rng;

  SuiteRunner(const VerifyOptions& o, Report& r, int n_, std::string flavor_,
              const CarrollBundle& b_, uint64_t seed)
      : opts(o), report(r), n(n_), flavor(std::move(flavor_)), b(b_),
        pts(sample_points(b_.sample_spec(o.samples, seed))), rng(seed * 7919 + 13) {}

  std::string label(const std::string& what, int k) const {
    return what + " n=" + std::to_string(n) + " k=" + std::to_string(k) + " " + flavor;
  }

  void record(const std::string& suite, const std::string& name, const Deviation& dev,
              double tol) {
    CaseResult c;
    c.suite = suite;
    c.name = name;
    c.pass = dev.value <= tol;
    c.max_deviation = dev.value;
    if (!c.pass) c.witness = dev.where;
    report.cases.push_back(std::move(c));
  }

  void star_involution() {
    for (int k = 0; k <= n + 1; ++k) {
      Form xi = random_form(rng, n, k, -1);
      Form twice = hodge_star(hodge_star(xi, b), b);
      Form expected = static_cast<double>(star_square_sign(k, n)) * xi;
      record("hodge", label("star-involution", k), deviation_between(twice, expected, pts),
             opts.tolerance);
    }
  }

  void defining_relation() {
    Form vol = volume_form(b);
    for (int k = 0; k <= n + 1; ++k) {
      Form xi = random_form(rng, n, k, -1);
      Form star_xi = hodge_star(xi, b);
      Deviation worst;
      for (const Monomial& m : Monomial::all_of_degree(n, k)) {
        Form eta = Form::monomial(n, m, Expr::constant(1.0));
        // <eta, xi>_G as a scalar expression.
        Expr ip = Expr::constant(0.0);
        for (const auto& [mx, cx] : xi.c) ip = ip + gram(m, mx, b) * cx;
        Deviation dev = deviation_between(wedge(eta, star_xi), ip * vol, pts);
        if (dev.value > worst.value) {
          worst = dev;
          worst.where += " eta = " + m.str();
        }
      }
      record("hodge", label("defining-relation", k), worst, opts.tolerance);
    }
  }

  void nilpotency() {
    for (int k = 0; k <= n + 1; ++k) {
      Form xi = random_form(rng, n, k, -1);
      Form dd = exterior_derivative(exterior_derivative(xi, b), b);
      record("forms", label("exterior-derivative-nilpotent", k),
             deviation_between(dd, Form::zero(n, std::min(k + 2, n + 1)), pts), opts.tolerance);
      Form deltadelta = codifferential(codifferential(xi, b), b);
      record("hodge", label("codifferential-nilpotent", k),
             deviation_between(deltadelta, Form::zero(n, std::max(k - 2, 0)), pts),
             opts.tolerance);
    }
  }

  void euler_commutation() {
    struct Op {
      const char* name;
      Form (*apply)(const Form&, const CarrollBundle&);
    };
    const Op ops[4] = {{"exterior-derivative", exterior_derivative},
                       {"star", hodge_star},
                       {"codifferential", codifferential},
                       {"laplacian", laplacian}};
    for (int k = 0; k <= n + 1; ++k) {
      // Mixed-weight input: a sum of homogeneous pieces exercises the
      // commutation beyond the eigenvector case.
      Form xi = random_form(rng, n, k, 1) + random_form(rng, n, k, 3);
      for (const Op& op : ops) {
        Form lhs = lie_euler(op.apply(xi, b), b);
        Form rhs = op.apply(lie_euler(xi, b), b);
        record("hodge", label(std::string("euler-commutation-") + op.name, k),
               deviation_between(lhs, rhs, pts), opts.tolerance);
      }
    }
  }

  void weights() {
    for (int k = 0; k <= n + 1; ++k) {
      int lam = rng.uniform_int(0, 3);
      Form xi = random_form(rng, n, k, lam);
      Deviation dev;
      WeightResult w = weight_of(xi, b);
      if (w.kind != WeightResult::Kind::Value || w.lambda != static_cast<double>(lam)) {
        dev.value = 1.0;
        dev.where = "weight of the input reported as " + w.str() + ", expected " +
                    std::to_string(lam);
      } else {
        struct Op {
          const char* name;
          Form (*apply)(const Form&, const CarrollBundle&);
        };
        const Op ops[4] = {{"exterior-derivative", exterior_derivative},
                           {"star", hodge_star},
                           {"codifferential", codifferential},
                           {"laplacian", laplacian}};
        for (const Op& op : ops) {
          Form out = op.apply(xi, b);
          out.prune();
          if (out.structurally_zero()) continue;  // zero carries every weight
          WeightResult wo = weight_of(out, b);
          bool ok = wo.kind == WeightResult::Kind::Value &&
                    wo.lambda == static_cast<double>(lam);
          if (!ok && dev.value == 0.0) {
            dev.value = 1.0;
            dev.where = std::string("weight after ") + op.name + " reported as " + wo.str() +
                        ", expected " + std::to_string(lam);
          }
        }
      }
      record("forms", label("weight-preservation", k), dev, 0.0);
    }
  }

  void local_star_formulas() {
    for (int k = 0; k <= n; ++k) {
      Form s = random_horizontal(rng, n, k);
      // Horizontal law: star(S) = (-1)^{n+k} theta ^ star_M(S).
      double sign_h = ((n + k) % 2 == 0) ? 1.0 : -1.0;
      Form lhs_h = hodge_star(s, b);
      Form rhs_h = sign_h * wedge(theta_form(n), base_hodge_star(s, b));
      record("hodge", label("local-star-horizontal", k), deviation_between(lhs_h, rhs_h, pts),
             opts.tolerance);
      // Vertical swap: star(theta ^ S) = (-1)^{n+1} star_M(S).
      double sign_v = (n % 2 == 0) ? -1.0 : 1.0;
      Form lhs_v = hodge_star(wedge(theta_form(n), s), b);
      Form rhs_v = sign_v * base_hodge_star(s, b);
      record("hodge", label("local-star-vertical", k), deviation_between(lhs_v, rhs_v, pts),
             opts.tolerance);
    }
  }

  void volume_normalization() {
    Form one = Form::scalar(n, Expr::constant(1.0));
    Form vol = volume_form(b);
    Deviation d1 = deviation_between(hodge_star(one, b), vol, pts);
    // The vertical direction carries <theta, theta> = -1, so the volume form
    // is a unit-norm NEGATIVE form: star(Vol) = <Vol, Vol> = -1 in every n.
    Deviation d2 = deviation_between(hodge_star(vol, b), -1.0 * one, pts);
    Deviation worst = d1.value >= d2.value ? d1 : d2;
    record("hodge", "volume-normalization n=" + std::to_string(n) + " " + flavor, worst,
           opts.tolerance);
  }

  void run_all() {
    star_involution();
    defining_relation();
    nilpotency();
    euler_commutation();
    weights();
    local_star_formulas();
    volume_normalization();
  }
};

}  // namespace

Report run_verify(const VerifyOptions& opts) {
  Report report;
  for (int n : opts.dims) {
    for (bool curved : {false, true}) {
      uint64_t seed = opts.seed * 1000003u + static_cast<uint64_t>(n) * 101u + (curved ? 1 : 0);
      Rng setup(seed);
      CarrollBundle b = make_bundle(setup, n, curved);
      SuiteRunner runner(opts, report, n, curved ? "curved" : "flat", b, seed);
      runner.run_all();
    }
  }
  return report;
}

}  // namespace carrollian
