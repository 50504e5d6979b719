#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "carrollian/bundle.hpp"
#include "carrollian/form.hpp"
#include "carrollian/hodge.hpp"
#include "carrollian/parse.hpp"
#include "carrollian/sampling.hpp"
#include "test_support.hpp"

using namespace carrollian;
using testing::Rng;

namespace {

std::vector<Point> points(const CarrollBundle& b, int count = 25, uint64_t seed = 3) {
  return sample_points(b.sample_spec(count, seed));
}

Monomial top_monomial(int n) {
  Monomial m;
  m.bits = (1u << n) - 1u;
  m.theta = true;
  return m;
}

// diag(4, 9) metric over n = 2: orthonormal coframe e1 = 2 dx1, e2 = 3 dx2
CarrollBundle diag49() {
  std::vector<std::vector<Expr>> g = {{Expr::constant(4.0), Expr::constant(0.0)},
                                      {Expr::constant(0.0), Expr::constant(9.0)}};
  std::vector<Expr> A = {Expr::constant(0.0), Expr::constant(0.0)};
  return CarrollBundle(2, g, A);
}

}  // namespace

TEST_CASE("pointwise inner products of basis monomials") {
  CarrollBundle b = CarrollBundle::flat(3);
  Point p({0.3, -0.4, 0.9}, 2.0);
  auto ip = [&](const char* u, const char* v) {
    return inner_product(parse_form(u, 3), parse_form(v, 3), b, p);
  };
  CHECK(ip("th", "th") == doctest::Approx(-1.0));
  CHECK(ip("dx1", "dx1") == doctest::Approx(1.0));
  CHECK(ip("dx1", "dx2") == doctest::Approx(0.0));
  CHECK(ip("dx1^th", "dx1^th") == doctest::Approx(-1.0));
  CHECK(ip("dx1^dx2", "dx1^dx2") == doctest::Approx(1.0));
  CHECK(ip("dx1^dx2^dx3^th", "dx1^dx2^dx3^th") == doctest::Approx(-1.0));
  CHECK_THROWS_AS(inner_product(parse_form("dx1", 3), parse_form("dx1^dx2", 3), b, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(gram(Monomial::dx(1), Monomial::of({1, 2}, false), b), std::invalid_argument);
}

TEST_CASE("volume form is unit-norm timelike, including curved metrics") {
  Rng rng(7);
  for (int n = 1; n <= 3; ++n) {
    for (bool curved : {false, true}) {
      CarrollBundle b = testing::random_bundle(rng, n, curved, curved);
      Form vol = volume_form(b);
      CHECK(vol.degree == n + 1);
      for (const Point& p : points(b, 15, 11))
        CHECK(inner_product(vol, vol, b, p) == doctest::Approx(-1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("star of the unit and of the volume form") {
  Rng rng(9);
  for (int n = 1; n <= 3; ++n) {
    for (bool curved : {false, true}) {
      CarrollBundle b = testing::random_bundle(rng, n, curved, false);
      auto pts = points(b, 15, 13);
      Form one = Form::scalar(n, Expr::constant(1.0));
      CHECK(max_abs_diff(hodge_star(one, b), volume_form(b), pts) < 1e-10);
      Form mone = Form::scalar(n, Expr::constant(-1.0));
      CHECK(max_abs_diff(hodge_star(volume_form(b), b), mone, pts) < 1e-9);
    }
  }
}

TEST_CASE("flat three-dimensional star table on two-forms") {
  CarrollBundle b = CarrollBundle::flat(3);
  auto entry = [&](const char* in, const char* expect) {
    Form s = hodge_star(parse_form(in, 3), b);
    Form e = parse_form(expect, 3);
    REQUIRE(s.c.size() == e.c.size());
    for (const auto& [m, coeff] : e.c) {
      const Expr& got = s.coeff(m);
      CHECK(got.is_constant());
      CHECK(got.constant_value() == doctest::Approx(coeff.constant_value()).epsilon(1e-12));
    }
  };
  // vertical results written theta-first: -th^dz = dz^th, etc.
  entry("dx^dy", "dz^th");
  entry("dx^dz", "-dy^th");
  entry("dy^dz", "dx^th");
  entry("dx^th", "-dy^dz");
  entry("dy^th", "dx^dz");
  entry("dz^th", "-dx^dy");

  // the first entry in its published theta-first rendering: star(dx^dy) = -th^dz
  Form s = hodge_star(parse_form("dx^dy", 3), b);
  Form published = -wedge(theta_form(3), parse_form("dz", 3));
  CHECK(max_abs_diff(s, published, points(b)) < 1e-12);
}

TEST_CASE("star on a diagonal curved metric matches the orthonormal-coframe table") {
  CarrollBundle b = diag49();
  auto pts = points(b);
  CHECK(max_abs_diff(hodge_star(parse_form("dx1", 2), b), parse_form("1.5*dx2^th", 2), pts) < 1e-12);
  CHECK(max_abs_diff(hodge_star(parse_form("dx1^dx2", 2), b),
                     Expr::constant(1.0 / 6.0) * theta_form(2), pts) < 1e-12);
}

TEST_CASE("double star sign law") {
  Rng rng(15);
  for (int n = 1; n <= 3; ++n) {
    CarrollBundle flat = CarrollBundle::flat(n);
    CarrollBundle curved = testing::random_bundle(rng, n, true, true);
    for (const CarrollBundle* b : {&flat, &curved}) {
      auto pts = points(*b, 15, 17);
      for (int k = 0; k <= n + 1; ++k) {
        Form xi = testing::random_form(rng, n, k);
        double s = star_square_sign(k, n);
        Form lhs = hodge_star(hodge_star(xi, *b), *b);
        CHECK(max_abs_diff(lhs, s * xi, pts) < 1e-8);
      }
    }
  }
}

TEST_CASE("defining relation of the star against all basis monomials") {
  Rng rng(19);
  for (int n = 2; n <= 3; ++n) {
    CarrollBundle b = testing::random_bundle(rng, n, true, false);
    auto pts = points(b, 20, 19);
    Monomial top = top_monomial(n);
    Form vol = volume_form(b);
    for (int k = 0; k <= n + 1; ++k) {
      Form xi = testing::random_form(rng, n, k);
      Form sx = hodge_star(xi, b);
      for (const Monomial& em : Monomial::all_of_degree(n, k)) {
        Form eta = Form::monomial(n, em, Expr::constant(1.0));
        Form lhs = wedge(eta, sx);
        const Expr& volc = vol.coeff(top);
        for (const Point& p : pts) {
          double l = lhs.c.empty() ? 0.0 : eval(lhs.coeff(top), p);
          double r = inner_product(eta, xi, b, p) * eval(volc, p);
          CHECK(std::fabs(l - r) < 1e-9 * std::max(1.0, std::fabs(r)));
        }
      }
    }
  }
}

TEST_CASE("base star: Euclidean table and involution sign") {
  CarrollBundle b3 = CarrollBundle::flat(3);
  auto pts = points(b3);
  CHECK(max_abs_diff(base_hodge_star(parse_form("dx", 3), b3), parse_form("dy^dz", 3), pts) < 1e-12);
  CHECK(max_abs_diff(base_hodge_star(parse_form("dy", 3), b3), parse_form("-dx^dz", 3), pts) < 1e-12);
  CHECK(max_abs_diff(base_hodge_star(parse_form("dz", 3), b3), parse_form("dx^dy", 3), pts) < 1e-12);
  CHECK_THROWS_AS(base_hodge_star(theta_form(3), b3), std::invalid_argument);

  Rng rng(21);
  for (int n = 2; n <= 3; ++n) {
    CarrollBundle b = testing::random_bundle(rng, n, true, false);
    auto p2 = points(b, 15, 23);
    for (int k = 0; k <= n; ++k) {
      Form s = testing::random_form(rng, n, k);
      Form horiz = decompose(s).first;
      double sign = (k * (n - k)) % 2 == 0 ? 1.0 : -1.0;
      CHECK(max_abs_diff(base_hodge_star(base_hodge_star(horiz, b), b), sign * horiz, p2) < 1e-8);
    }
  }
}

TEST_CASE("star swaps horizontal and vertical forms with the local formulas") {
  Rng rng(25);
  for (int n = 2; n <= 3; ++n) {
    for (bool curved : {false, true}) {
      CarrollBundle b = testing::random_bundle(rng, n, curved, false);
      auto pts = points(b, 15, 29);
      Form th = theta_form(n);
      for (int k = 0; k <= n; ++k) {
        Form sk = decompose(testing::random_form(rng, n, k)).first;  // horizontal
        // star(S_k) = (-1)^{n+k} theta ^ base_star(S_k)
        Form lhs = hodge_star(sk, b);
        Form rhs = wedge(th, base_hodge_star(sk, b));
        if ((n + k) % 2 != 0) rhs = -rhs;
        CHECK(max_abs_diff(lhs, rhs, pts) < 1e-9);
        // star is horizontal -> vertical
        CHECK(decompose(lhs).first.structurally_zero());

        // star(theta ^ S) = (-1)^{n+1} base_star(S)
        Form vlhs = hodge_star(wedge(th, sk), b);
        Form vrhs = base_hodge_star(sk, b);
        if ((n + 1) % 2 != 0) vrhs = -vrhs;
        CHECK(max_abs_diff(vlhs, vrhs, pts) < 1e-9);
        // star is vertical -> horizontal
        if (vlhs.degree >= 1) CHECK(interior_euler(vlhs).structurally_zero());
      }
    }
  }
}

TEST_CASE("codifferential: frozen low-dimensional values") {
  CarrollBundle b2 = CarrollBundle::flat(2);
  auto pts2 = points(b2);
  CHECK(codifferential(Form::scalar(2, parse_scalar("x1*t^2", 2)), b2).structurally_zero());
  CHECK(max_abs_diff(codifferential(parse_form("t*th", 2), b2),
                     Form::scalar(2, parse_scalar("-t", 2)), pts2) < 1e-12);
  CHECK(codifferential(parse_form("t*dx1", 2), b2).structurally_zero());
  CHECK(max_abs_diff(codifferential(parse_form("x1*dx1", 2), b2),
                     Form::scalar(2, Expr::constant(1.0)), pts2) < 1e-12);

  CarrollBundle b3 = CarrollBundle::flat(3);
  auto pts3 = points(b3);
  CHECK(max_abs_diff(codifferential(parse_form("t*th", 3), b3),
                     Form::scalar(3, parse_scalar("t", 3)), pts3) < 1e-12);
  CHECK(max_abs_diff(codifferential(parse_form("x1*dx1", 3), b3),
                     Form::scalar(3, Expr::constant(-1.0)), pts3) < 1e-12);
  CHECK(codifferential(volume_form(b3), b3).structurally_zero());
}

TEST_CASE("codifferential squares to zero and kills the volume form") {
  Rng rng(33);
  for (int n = 1; n <= 3; ++n) {
    CarrollBundle b = testing::random_bundle(rng, n, true, true);
    auto pts = points(b, 20, 31);
    CHECK(max_abs(codifferential(volume_form(b), b), pts) < 1e-9);
    for (int k = 2; k <= n + 1; ++k) {
      Form xi = testing::random_form(rng, n, k);
      CHECK(max_abs(codifferential(codifferential(xi, b), b), pts) < 1e-8);
    }
  }
}

TEST_CASE("Laplacian: frozen flat values per dimension") {
  CarrollBundle b2 = CarrollBundle::flat(2);
  auto pts2 = points(b2);
  // n = 2: Lap f = (d2/dx2) f - (t d/dt)^2 f on scalars
  CHECK(max_abs_diff(laplacian(Form::scalar(2, Expr::fibre()), b2),
                     Form::scalar(2, parse_scalar("-t", 2)), pts2) < 1e-12);
  CHECK(max_abs_diff(laplacian(Form::scalar(2, parse_scalar("x1^2", 2)), b2),
                     Form::scalar(2, Expr::constant(2.0)), pts2) < 1e-12);
  CHECK(laplacian(Form::scalar(2, Expr::coord(0)), b2).structurally_zero());

  CarrollBundle b3 = CarrollBundle::flat(3);
  auto pts3 = points(b3);
  // n = 3: Lap f = -(d2/dx2) f + (t d/dt)^2 f on scalars
  Form f = Form::scalar(3, parse_scalar("x1^2 + t^2*x2", 3));
  Form expect = Form::scalar(3, parse_scalar("-2 + 4*t^2*x2", 3));
  CHECK(max_abs_diff(laplacian(f, b3), expect, pts3) < 1e-11);

  // harmonic witnesses in every dimension: constants, theta, volume form
  for (int n = 1; n <= 3; ++n) {
    CarrollBundle b = CarrollBundle::flat(n);
    auto pts = points(b);
    CHECK(laplacian(Form::scalar(n, Expr::constant(3.5)), b).structurally_zero());
    CHECK(max_abs(laplacian(theta_form(n), b), pts) < 1e-12);
    CHECK(max_abs(laplacian(volume_form(b), b), pts) < 1e-12);
  }
}

TEST_CASE("classification flags and the one-way implication") {
  CarrollBundle b = CarrollBundle::flat(2);
  Classification c = classify(Form::scalar(2, Expr::constant(2.0)), b);
  CHECK(c.closed);
  CHECK(c.coclosed);
  CHECK(c.harmonic);

  Classification th = classify(theta_form(2), b);
  CHECK(th.closed);  // d theta = F = 0 when A = 0
  CHECK(th.coclosed);
  CHECK(th.harmonic);

  Classification vol = classify(volume_form(b), b);
  CHECK(vol.closed);
  CHECK(vol.coclosed);
  CHECK(vol.harmonic);

  // harmonic does NOT imply closed and coclosed: x1 on the flat 2-bundle
  Classification x1 = classify(Form::scalar(2, Expr::coord(0)), b);
  CHECK(x1.harmonic);
  CHECK(!x1.closed);
  CHECK(x1.coclosed);

  Classification tt = classify(Form::scalar(2, Expr::fibre()), b);
  CHECK(!tt.closed);
  CHECK(!tt.harmonic);
}

TEST_CASE("weight preservation and commutation with the Euler derivative") {
  Rng rng(41);
  for (int n = 2; n <= 3; ++n) {
    CarrollBundle b = testing::random_bundle(rng, n, true, true);
    auto pts = points(b, 15, 37);
    for (int k = 0; k <= n; ++k) {
      int lam = rng.uniform_int(0, 2);
      Form xi = testing::random_form(rng, n, k, lam);
      if (xi.structurally_zero()) continue;

      WeightResult wx = weight_of(xi, b);
      REQUIRE(wx.kind == WeightResult::Kind::Value);
      CHECK(wx.lambda == static_cast<double>(lam));

      Form sx = hodge_star(xi, b);
      WeightResult ws = weight_of(sx, b);
      CHECK((ws.kind == WeightResult::Kind::Any || ws.lambda == wx.lambda));

      Form dx = codifferential(xi, b);
      WeightResult wd = weight_of(dx, b);
      CHECK((wd.kind == WeightResult::Kind::Any || wd.lambda == wx.lambda));

      Form lx = laplacian(xi, b);
      WeightResult wl = weight_of(lx, b);
      CHECK((wl.kind == WeightResult::Kind::Any || wl.lambda == wx.lambda));

      // L commutes with star, codifferential and Laplacian
      CHECK(max_abs_diff(lie_euler(sx, b), hodge_star(lie_euler(xi, b), b), pts) < 1e-8);
      CHECK(max_abs_diff(lie_euler(dx, b), codifferential(lie_euler(xi, b), b), pts) < 1e-8);
      CHECK(max_abs_diff(lie_euler(lx, b), laplacian(lie_euler(xi, b), b), pts) < 1e-7);
    }
  }
}
