#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "carrollian/hodge.hpp"
#include "carrollian/maxwell.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace carrollian;

namespace {

std::vector<Point> flat_pts(int count = 60, uint64_t seed = 4) {
  CarrollBundle b = CarrollBundle::flat(3);
  return sample_points(b.sample_spec(count, seed));
}

double max_abs_exprs(const std::vector<Expr>& es, const std::vector<Point>& pts) {
  double out = 0.0;
  for (const Expr& e : es)
    for (const Point& p : pts) out = std::max(out, std::abs(eval(e, p)));
  return out;
}

EMFieldSymbolic map_components(const EMFieldSymbolic& f, Expr (*fn)(const Expr&)) {
  EMFieldSymbolic out;
  for (size_t i = 0; i < 3; ++i) {
    out.E[i] = fn(f.E[i]);
    out.B[i] = fn(f.B[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("field-strength assembly dictionary") {
  EMFieldSymbolic zero;
  Form f0 = assemble_field_strength(zero);
  f0.prune();
  CHECK(f0.structurally_zero());

  EMFieldSymbolic bz;
  bz.B[2] = Expr::constant(1.0);
  Form fb = assemble_field_strength(bz);
  Form dxdy = Form::monomial(3, Monomial::of({1, 2}, false), Expr::constant(1.0));
  CHECK(max_abs_diff(fb, dxdy, flat_pts()) == doctest::Approx(0.0));

  EMFieldSymbolic ex;
  ex.E[0] = Expr::constant(1.0);
  Form fe = assemble_field_strength(ex);
  Form theta_dx =
      wedge(theta_form(3), Form::monomial(3, Monomial::dx(1), Expr::constant(1.0)));
  CHECK(max_abs_diff(fe, theta_dx, flat_pts()) == doctest::Approx(0.0));
  // Stored canonical order puts theta last: theta ^ dx = -dx ^ theta.
  CHECK(eval(fe.coeff(Monomial::of({1}, true)), flat_pts()[0]) == doctest::Approx(-1.0));

  // Round trip through the magnetic dictionary.
  std::array<Expr, 3> back = two_form_components(magnetic_two_form(bz));
  CHECK(back[2].constant_value() == doctest::Approx(1.0));
}

TEST_CASE("constant fields solve the equations in both formulations") {
  EMFieldSymbolic f;
  f.E = {Expr::constant(2.0), Expr::constant(-1.0), Expr::constant(0.5)};
  f.B = {Expr::constant(-3.0), Expr::constant(0.25), Expr::constant(1.0)};
  MaxwellResidual r = maxwell_residual(f);
  CHECK(r.max_form_residual < 1e-14);
  CHECK(r.max_vector_residual < 1e-14);
  CHECK(r.equivalent);
}

TEST_CASE("plane wave: frozen components, residuals, wave operator") {
  EMFieldSymbolic f = plane_wave({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
  std::vector<Point> pts = flat_pts();

  // B = (0, -1, 0) cos(z - u) with u = ln|t|.
  for (const Point& p : pts) {
    double expected = -std::cos(p.x[2] - std::log(std::abs(p.t)));
    CHECK(eval(f.B[1], p) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(eval(f.B[0], p) == doctest::Approx(0.0));
    CHECK(eval(f.B[2], p) == doctest::Approx(0.0));
    CHECK(eval(f.E[0], p) == doctest::Approx(std::cos(p.x[2] - std::log(std::abs(p.t)))));
  }

  MaxwellResidual r = maxwell_residual(f);
  CHECK(r.max_form_residual < 1e-9);
  CHECK(r.max_vector_residual < 1e-9);
  CHECK(r.equivalent);

  std::array<Expr, 6> wave = wave_residual(f);
  CHECK(max_abs_exprs({wave.begin(), wave.end()}, pts) < 1e-10);

  // Oblique wave with |k| = 3.
  EMFieldSymbolic g = plane_wave({1.0, 2.0, 2.0}, {2.0, -1.0, 0.0});
  MaxwellResidual rg = maxwell_residual(g);
  CHECK(rg.max_form_residual < 1e-9);
  CHECK(rg.max_vector_residual < 1e-9);
  std::array<Expr, 6> wg = wave_residual(g);
  CHECK(max_abs_exprs({wg.begin(), wg.end()}, pts) < 1e-9);
}

TEST_CASE("plane wave rejections and normalization") {
  CHECK_THROWS(plane_wave({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}));
  CHECK_THROWS(plane_wave({0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}));  // k . E0 != 0
  CHECK_THROWS(plane_wave({0.0, 0.0, 1.0}, {0.0, 0.0, 0.0}, true));

  EMFieldSymbolic f = plane_wave({0.0, 0.0, 2.0}, {3.0, 4.0, 0.0}, true);
  Point origin({0.0, 0.0, 0.0}, 1.0);
  double amp = std::hypot(eval(f.E[0], origin), eval(f.E[1], origin));
  CHECK(amp == doctest::Approx(1.0));
}

TEST_CASE("curl defect is detected: B = (0, 0, x)") {
  EMFieldSymbolic f;
  f.B[2] = Expr::coord(0);
  MaxwellResidual r = maxwell_residual(f);
  std::vector<Point> pts = flat_pts();
  // curl B = (0, -1, 0): residual pattern concentrated in the y slot.
  for (const Point& p : pts) {
    CHECK(eval(r.ampere[0], p) == doctest::Approx(0.0));
    CHECK(eval(r.ampere[1], p) == doctest::Approx(-1.0));
    CHECK(eval(r.ampere[2], p) == doctest::Approx(0.0));
  }
  CHECK(r.max_vector_residual == doctest::Approx(1.0));
  CHECK(r.max_form_residual == doctest::Approx(1.0));
  CHECK(r.equivalent);  // the two formulations agree that it fails
}

TEST_CASE("formulation equivalence on random smooth fields") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    EMFieldSymbolic f;
    for (size_t i = 0; i < 3; ++i) {
      f.E[i] = testing::random_scalar(rng, 3);
      f.B[i] = testing::random_scalar(rng, 3);
    }
    MaxwellResidual r = maxwell_residual(f, 40, 1000 + trial);
    CHECK(r.equivalent);  // dictionary identity pins dF, d*F to the vector set
    bool form_zero = r.max_form_residual < 1e-9;
    bool vec_zero = r.max_vector_residual < 1e-9;
    CHECK(form_zero == vec_zero);
  }
}

TEST_CASE("local residual forms reassemble the covariant pair") {
  CarrollBundle b = CarrollBundle::flat(3);
  std::vector<Point> pts = flat_pts(50, 21);
  Form th = theta_form(3);

  auto check_identity = [&](const EMFieldSymbolic& f) {
    MaxwellResidual r = maxwell_residual(f, 10, 3);
    LocalResiduals loc = local_residual_forms(f);
    // dF = d_M B2 - theta ^ (d_M E1 - L B2), d*F = d_M *E1 + theta ^ ampere.
    CHECK(max_abs_diff(r.dF, loc.db - wedge(th, loc.faraday), pts) < 1e-12);
    CHECK(max_abs_diff(r.dstarF, loc.dive + wedge(th, loc.ampere), pts) < 1e-12);
  };

  EMFieldSymbolic wave = plane_wave({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
  check_identity(wave);
  LocalResiduals lw = local_residual_forms(wave);
  CHECK(max_abs(lw.db, pts) < 1e-10);
  CHECK(max_abs(lw.faraday, pts) < 1e-10);
  CHECK(max_abs(lw.dive, pts) < 1e-10);
  CHECK(max_abs(lw.ampere, pts) < 1e-10);
  // The u-coupled splitting is essential: the base-only derivative of E1
  // alone does NOT vanish on this solution (it equals L B2 instead).
  Form d_e1 = covariant_derivative(electric_one_form(wave), b);
  CHECK(max_abs(d_e1, pts) > 0.5);
  CHECK(max_abs_diff(d_e1, lie_euler(magnetic_two_form(wave), b), pts) < 1e-10);

  testing::Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    EMFieldSymbolic f;
    for (size_t i = 0; i < 3; ++i) {
      f.E[i] = testing::random_scalar(rng, 3);
      f.B[i] = testing::random_scalar(rng, 3);
    }
    check_identity(f);
  }
}

TEST_CASE("duality is an order-4 symmetry preserving solutions and energy") {
  EMFieldSymbolic f = plane_wave({1.0, 2.0, 2.0}, {2.0, -1.0, 0.0});
  EMFieldSymbolic d1 = duality(f);
  EMFieldSymbolic d2 = duality(d1);
  std::vector<Point> pts = flat_pts();

  MaxwellResidual rd = maxwell_residual(d1);
  CHECK(rd.max_form_residual < 1e-9);
  CHECK(rd.max_vector_residual < 1e-9);

  for (const Point& p : pts) {
    for (size_t i = 0; i < 3; ++i) {
      CHECK(eval(d2.E[i], p) == doctest::Approx(-eval(f.E[i], p)));
      CHECK(eval(d2.B[i], p) == doctest::Approx(-eval(f.B[i], p)));
    }
    CHECK(eval(energy_density(d1), p) == doctest::Approx(eval(energy_density(f), p)));
  }
}

TEST_CASE("time-rescaling invariance of the residual verdicts") {
  auto rescale = [](const Expr& e) {
    return substitute_fibre(e, Expr::constant(1.9) * Expr::fibre());
  };
  EMFieldSymbolic wave = plane_wave({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0});
  EMFieldSymbolic scaled = map_components(wave, rescale);
  MaxwellResidual r = maxwell_residual(scaled);
  CHECK(r.max_form_residual < 1e-9);
  CHECK(r.max_vector_residual < 1e-9);

  // A failing configuration keeps failing after rescaling.
  EMFieldSymbolic bad;
  bad.B[2] = Expr::coord(0);
  EMFieldSymbolic bad_scaled = map_components(bad, rescale);
  CHECK(maxwell_residual(bad_scaled).max_vector_residual == doctest::Approx(1.0));

  // Negative rescaling (the other fibre branch) also preserves solutions.
  auto flip = [](const Expr& e) {
    return substitute_fibre(e, Expr::constant(-0.7) * Expr::fibre());
  };
  MaxwellResidual rf = maxwell_residual(map_components(wave, flip));
  CHECK(rf.max_vector_residual < 1e-9);
}

TEST_CASE("polynomial-in-t fields extend to the zero section") {
  // E, B polynomial in t: residuals stay polynomial and evaluable at t = 0.
  EMFieldSymbolic f;
  Expr t = Expr::fibre();
  f.E = {Expr::pow(t, 2) * Expr::coord(1), Expr::constant(0.0), t * Expr::coord(0)};
  f.B = {t * Expr::coord(2), Expr::pow(t, 3), Expr::constant(1.0)};
  MaxwellResidual r = maxwell_residual(f, 10, 5);

  std::vector<Expr> residuals{r.div_b, r.div_e};
  for (const Expr& e : r.faraday) residuals.push_back(e);
  for (const Expr& e : r.ampere) residuals.push_back(e);
  for (const Expr& e : residuals) {
    auto monomials = t_monomials(e);
    REQUIRE(monomials.has_value());
    for (const TMonomial& tm : *monomials) CHECK(tm.lambda >= 0);
  }
  // Evaluable on the boundary point t = 0.
  Point boundary = Point::closure({0.3, -0.2, 0.8});
  for (const Expr& e : residuals) CHECK(std::isfinite(eval(e, boundary)));
  // Faraday x-residual at t = 0: curl E - L B loses every positive t-power,
  // leaving d/dy(E_z)|_{t^0} - ... = 0 here; spot check a known value.
  CHECK(eval(r.ampere[1], boundary) == doctest::Approx(0.0));  // curl B + LE at t=0: -d/dx(Bz)=0
}
