#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carrollian/bundle.hpp"
#include "carrollian/form.hpp"

namespace carrollian {

// Horizon backend: base sphere in the chart (theta_ang, phi) = (x1, x2) with
// metric (2*kappa)^-2 * diag(1, sin^2 x1), trivial connection, and the
// orthonormal coframe e1 = (2k)^-1 dx1, e2 = (2k)^-1 sin(x1) dx2, oriented so
// that the volume form is e1 ^ e2 ^ theta.  The chart box keeps x1 away from
// the coordinate poles.

CarrollBundle make_horizon_bundle(double kappa);

// Coframe conversion: an orthonormal-frame monomial (dx-bits read as e-frame
// slots, theta unchanged) with the given coefficient, expressed as a chart
// form.  Diagonal frame, so the monomial pattern is preserved and only the
// coefficient picks up (2k)^-1 per e1 factor and (2k)^-1 sin(x1) per e2.
Form eframe_monomial(const Monomial& m, const Expr& coeff, double kappa);

// Real spherical harmonics without normalisation factors: closed forms for
// l <= 4, order m in [-l, l]; m > 0 carries cos(m phi), m < 0 carries
// sin(|m| phi).  Everything is smooth across the poles by construction.
Expr spherical_harmonic(int l, int m);

// Angular operators on the (2k)^-2-scaled sphere, coded directly from the
// chart formulas (independent of the star/codifferential machinery):
//   lap0    positive scalar Laplacian
//   d0      chart differential of a scalar (horizontal 1-form)
//   delta1  codifferential of a 1-form (= -divergence)
//   d1      exterior derivative 1-form -> 2-form (metric-free)
//   delta2  codifferential of a 2-form
//   lap2    d1 . delta2 (positive on 2-forms)
struct AngularOps {
  explicit AngularOps(double kappa);
  double kappa;
  Expr kk2;  // (2*kappa)^2
  Expr lap0(const Expr& f) const;
  Form d0(const Expr& f) const;
  Expr delta1(const Form& s1) const;
  Form d1(const Form& s1) const;
  Form delta2(const Form& s2) const;
  Form lap2(const Form& s2) const;
};

// Horizontal/vertical component split xi = S + theta ^ T (chart coefficients).
struct HorizonComponents {
  Form S;  // horizontal part, degree k
  Form T;  // vertical companion, degree k-1 (structurally zero for degree 0)
};
HorizonComponents split_components(const Form& xi);

// Hodge-de Rham Laplacian assembled from the per-degree component table
// (angular operators + Euler derivatives only); mirrors laplacian() from the
// operator stack on every degree 0..3 and serves as its independent oracle.
Form laplacian_table(const Form& xi, double kappa);

struct TableEntry {
  std::string entry;     // what is being checked
  std::string expected;  // human-readable expected value
  std::string computed;  // human-readable computed value
  double max_deviation = 0.0;
  bool pass = false;
};
struct TableReport {
  bool pass = true;
  double tolerance = 0.0;
  std::vector<TableEntry> entries;
};

// Star of all eight orthonormal-frame basis elements via the metric stack,
// compared against the fixed eight-entry table; kappa-independent entries.
TableReport verify_hodge_table(double kappa, double tol = 1e-10);

// Stack Laplacian vs table Laplacian for one form, max pointwise deviation
// over an angular sample set with the poles excluded.
TableReport verify_laplacian_table(const Form& xi, double kappa, double tol = 1e-8);

// Named examples plus seeded random component forms (trig polynomials times
// t^lambda, lambda <= 3) for every degree 0..3, all run through
// verify_laplacian_table; at least 50 angular points each.
TableReport laplacian_table_suite(double kappa, double tol = 1e-8, int per_degree = 20,
                                  uint64_t seed = 1);

struct RegularityReport {
  enum class Verdict { Regular, NotRegular, Indeterminate };
  Verdict verdict = Verdict::Regular;
  std::vector<std::string> offenders;  // component labels: S1, T0, T1, T2
  std::string note;                    // explanation, incl. the exemption asymmetry
};
// Regular iff the constrained components (S1, T0, T1, T2) vanish at least
// linearly in t; the degree-0 scalar and the horizontal 2-form S2 are exempt
// (the constrained list is asymmetric on purpose and the note says so).
RegularityReport regularity_check(const Form& xi);

struct ScanHit {
  int degree = 0;
  std::string slot;  // component pattern: f, S1.e1, S1.e2, T0, S2, T1.e1, T1.e2, T2
  int l = 0;
  int m = 0;
  int lambda = 0;
  double stack_residual = 0.0;
  double table_residual = 0.0;  // re-verification through the component table
  bool regular = false;
};
// Separable single-monomial ansatz scan: t^lambda * Y_lm dropped into each
// component slot of each degree; hits are stack residual < tol over the
// angular sample set, re-verified with the table expressions, and returned in
// deterministic (degree, slot, l, m, lambda) order.
std::vector<ScanHit> harmonic_scan(double kappa, int l_max, int lambda_max,
                                   double tol = 1e-8);

struct ExtensionResult {
  bool accepted = false;      // input passed the regularity gate
  bool finite_limit = false;  // Laplacian coefficients polynomial in t
  std::string refusal;        // nonempty when refused, names the offender
  Form laplacian;             // stack Laplacian of the input (chart frame)
  Form limit;                 // its t -> 0 limit (the t^0 part)
};
// Extends the Laplacian of a regular form to the zero section: computes the
// stack Laplacian, verifies every coefficient is polynomial in t (no negative
// powers), and returns the t -> 0 limit.
ExtensionResult extend_to_zero(const Form& xi, double kappa);

}  // namespace carrollian
