#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "carrollian/bundle.hpp"
#include "carrollian/form.hpp"
#include "carrollian/parse.hpp"
#include "carrollian/sampling.hpp"
#include "test_support.hpp"

using namespace carrollian;
using testing::Rng;

namespace {

std::vector<Point> points(const CarrollBundle& b, int count = 30, uint64_t seed = 3) {
  return sample_points(b.sample_spec(count, seed));
}

bool small(const Form& f, const std::vector<Point>& pts, double tol = 1e-10) {
  return max_abs(f, pts) <= tol;
}

// Independent sign oracle: parity of the bubble sort that merges the two
// ascending slot sequences (theta = slot n+1).
int bubble_sign(const Monomial& a, const Monomial& b, int n) {
  if ((a.bits & b.bits) != 0 || (a.theta && b.theta)) return 0;
  std::vector<int> seq;
  for (int i : a.base_indices()) seq.push_back(i);
  if (a.theta) seq.push_back(n + 1);
  for (int i : b.base_indices()) seq.push_back(i);
  if (b.theta) seq.push_back(n + 1);
  int swaps = 0;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = 0; j + 1 < seq.size(); ++j)
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        ++swaps;
      }
  return swaps % 2 == 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("monomial canonical data") {
  Monomial m = Monomial::of({1, 3}, true);
  CHECK(m.degree() == 3);
  CHECK(m.str() == "dx1^dx3^th");
  CHECK(Monomial::scalar().str() == "1");
  CHECK(Monomial::of({}, true).str() == "th");
  CHECK_THROWS_AS(Monomial::of({2, 2}, false), std::invalid_argument);

  // basis of degree k in the mixed coframe has C(n+1, k) elements
  auto binom = [](int n, int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return static_cast<int>(std::lround(v));
  };
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= n + 1; ++k) {
      auto all = Monomial::all_of_degree(n, k);
      CHECK(static_cast<int>(all.size()) == binom(n + 1, k));
      CHECK(std::is_sorted(all.begin(), all.end()));
      for (const auto& mm : all) CHECK(mm.degree() == k);
    }
}

TEST_CASE("wedge signs match the independent bubble-sort oracle") {
  const int n = 3;
  CHECK(wedge_sign(Monomial::dx(2), Monomial::dx(1), n) == -1);
  CHECK(wedge_sign(Monomial::dx(1), Monomial::dx(1), n) == 0);
  CHECK(wedge_sign(Monomial::of({}, true), Monomial::dx(1), n) == -1);   // th^dx1 = -dx1^th
  CHECK(wedge_sign(Monomial::of({1}, true), Monomial::dx(2), n) == -1);  // (dx1^th)^dx2
  CHECK(wedge_sign(Monomial::of({1}, false), Monomial::of({2}, true), n) == 1);

  for (int dim = 1; dim <= 4; ++dim)
    for (int ka = 0; ka <= dim + 1; ++ka)
      for (int kb = 0; kb <= dim + 1; ++kb)
        for (const auto& a : Monomial::all_of_degree(dim, ka))
          for (const auto& b : Monomial::all_of_degree(dim, kb))
            CHECK(wedge_sign(a, b, dim) == bubble_sign(a, b, dim));
}

TEST_CASE("wedge is graded commutative and associative") {
  Rng rng(11);
  const int n = 3;
  for (int trial = 0; trial < 12; ++trial) {
    int ka = rng.uniform_int(0, 2), kb = rng.uniform_int(0, 2), kc = rng.uniform_int(0, 1);
    Form a = testing::random_form(rng, n, ka);
    Form b = testing::random_form(rng, n, kb);
    Form c = testing::random_form(rng, n, kc);
    Form ab = wedge(a, b), ba = wedge(b, a);
    Form flip = (ka * kb) % 2 == 0 ? ba : -ba;
    CHECK(max_abs_diff(ab, flip, points(CarrollBundle::flat(n))) < 1e-12);
    CHECK(max_abs_diff(wedge(ab, c), wedge(a, wedge(b, c)), points(CarrollBundle::flat(n))) < 1e-10);
  }
}

TEST_CASE("interior contraction with the Euler field") {
  const int n = 3;
  Form th = theta_form(n);
  // i(theta) = 1, i(dx^a) = 0, i(dx1 ^ theta) = -dx1, i(theta ^ dx1) = +dx1
  CHECK(interior_euler(th).coeff(Monomial::scalar()).is_constant());
  CHECK(eval(interior_euler(th).coeff(Monomial::scalar()), Point({0, 0, 0}, 1.0)) == 1.0);
  CHECK(interior_euler(parse_form("dx1", n)).structurally_zero());
  Form a = parse_form("dx1^th", n);
  CHECK(eval(interior_euler(a).coeff(Monomial::dx(1)), Point({0, 0, 0}, 1.0)) == -1.0);
  Form b = wedge(th, parse_form("dx1", n));
  CHECK(eval(interior_euler(b).coeff(Monomial::dx(1)), Point({0, 0, 0}, 1.0)) == 1.0);
  CHECK_THROWS_AS(interior_euler(Form::scalar(n, Expr::fibre())), std::invalid_argument);

  // i ^ 2 = 0
  Form g = parse_form("t*dx1^dx2^th + x1*dx1^dx3^th", n);
  CHECK(interior_euler(interior_euler(g)).structurally_zero());

  // antiderivation: i(a^b) = i(a)^b + (-1)^{deg a} a^i(b)
  Rng rng(17);
  auto pts = points(CarrollBundle::flat(n));
  for (int trial = 0; trial < 10; ++trial) {
    int ka = rng.uniform_int(1, 2), kb = rng.uniform_int(1, 2);
    Form u = testing::random_form(rng, n, ka);
    Form v = testing::random_form(rng, n, kb);
    Form lhs = interior_euler(wedge(u, v));
    if (lhs.degree != ka + kb - 1) continue;  // u^v vanished identically
    Form rhs = wedge(interior_euler(u), v);
    Form second = wedge(u, interior_euler(v));
    rhs = rhs + (ka % 2 == 0 ? second : -second);
    CHECK(max_abs_diff(lhs, rhs, pts) < 1e-10);
  }
}

TEST_CASE("horizontal/vertical decomposition reconstructs the form") {
  Rng rng(23);
  const int n = 3;
  Form th = theta_form(n);
  for (int k = 1; k <= n + 1; ++k) {
    Form xi = testing::random_form(rng, n, k);
    auto [h, v] = decompose(xi);
    for (const auto& kv : h.c) CHECK(!kv.first.theta);
    for (const auto& kv : v.c) CHECK(kv.first.theta);
    Form rebuilt = h + wedge(th, interior_euler(xi));
    CHECK(max_abs_diff(rebuilt, xi, points(CarrollBundle::flat(n))) < 1e-12);
  }
}

TEST_CASE("exterior derivative: flat frozen cases") {
  CarrollBundle b = CarrollBundle::flat(2);
  auto pts = points(b);

  // d t = t theta
  Form dt = exterior_derivative(Form::scalar(2, Expr::fibre()), b);
  CHECK(max_abs_diff(dt, parse_form("t*th", 2), pts) < 1e-12);

  // d x1 = dx1
  Form dx1 = exterior_derivative(Form::scalar(2, Expr::coord(0)), b);
  CHECK(max_abs_diff(dx1, parse_form("dx1", 2), pts) < 1e-12);

  // d(x1^2 t^3) = 2 x1 t^3 dx1 + 3 x1^2 t^3 theta
  Form f = Form::scalar(2, parse_scalar("x1^2 * t^3", 2));
  Form expect = parse_form("2*x1*t^3*dx1 + 3*x1^2*t^3*th", 2);
  CHECK(max_abs_diff(exterior_derivative(f, b), expect, pts) < 1e-11);

  // d theta = 0 on a flat bundle; d(t theta) = dt ^ theta = 0
  CHECK(exterior_derivative(theta_form(2), b).structurally_zero());
  CHECK(small(exterior_derivative(parse_form("t*th", 2), b), pts, 1e-12));
}

TEST_CASE("exterior derivative sees the connection") {
  // A = x2 dx1 over n = 2
  std::vector<std::vector<Expr>> g = {{Expr::constant(1.0), Expr::constant(0.0)},
                                      {Expr::constant(0.0), Expr::constant(1.0)}};
  std::vector<Expr> A = {Expr::coord(1), Expr::constant(0.0)};
  CarrollBundle b(2, g, A);
  auto pts = points(b);

  // curvature F = dA = -dx1^dx2
  Form F = curvature(b);
  CHECK(max_abs_diff(F, parse_form("-dx1^dx2", 2), pts) < 1e-12);

  // d theta = F
  CHECK(max_abs_diff(exterior_derivative(theta_form(2), b), F, pts) < 1e-12);

  // d t = t theta - t A_a dx^a
  Form dt = exterior_derivative(Form::scalar(2, Expr::fibre()), b);
  CHECK(max_abs_diff(dt, parse_form("t*th - t*x2*dx1", 2), pts) < 1e-12);

  // covariant derivative keeps the horizontal part only
  Form Dt = covariant_derivative(Form::scalar(2, Expr::fibre()), b);
  CHECK(max_abs_diff(Dt, parse_form("-t*x2*dx1", 2), pts) < 1e-12);
  CHECK_THROWS_AS(covariant_derivative(theta_form(2), b), std::invalid_argument);

  // t-independent scalars keep their chart differential
  Form dx2 = exterior_derivative(Form::scalar(2, Expr::coord(1)), b);
  CHECK(max_abs_diff(dx2, parse_form("dx2", 2), pts) < 1e-12);
}

TEST_CASE("d squared vanishes, including curved bundles with connection") {
  Rng rng(31);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      CarrollBundle b = testing::random_bundle(rng, n, true, true);
      auto pts = points(b, 25, 7);
      int k = rng.uniform_int(0, n);
      Form xi = testing::random_form(rng, n, k);
      Form dd = exterior_derivative(exterior_derivative(xi, b), b);
      CHECK(max_abs(dd, pts) < 1e-9);
    }
  }
}

TEST_CASE("Leibniz rule for the exterior derivative") {
  Rng rng(37);
  const int n = 3;
  CarrollBundle b = testing::random_bundle(rng, n, true, true);
  auto pts = points(b, 25, 9);
  for (int trial = 0; trial < 8; ++trial) {
    int ka = rng.uniform_int(0, 2), kb = rng.uniform_int(0, 2);
    Form u = testing::random_form(rng, n, ka);
    Form v = testing::random_form(rng, n, kb);
    Form lhs = exterior_derivative(wedge(u, v), b);
    Form rhs = wedge(exterior_derivative(u, b), v);
    Form second = wedge(u, exterior_derivative(v, b));
    rhs = rhs + (ka % 2 == 0 ? second : -second);
    CHECK(max_abs_diff(lhs, rhs, pts) < 1e-9);
  }
}

TEST_CASE("Euler derivative agrees with its Cartan form") {
  Rng rng(41);
  for (int n = 2; n <= 3; ++n) {
    CarrollBundle b = testing::random_bundle(rng, n, true, true);
    auto pts = points(b, 25, 13);
    for (int k = 0; k <= n + 1; ++k) {
      Form xi = testing::random_form(rng, n, k);
      CHECK(max_abs_diff(lie_euler(xi, b), lie_euler_cartan(xi, b), pts) < 1e-9);
    }
  }
}

TEST_CASE("scaling weight of homogeneous forms") {
  CarrollBundle b = CarrollBundle::flat(2);
  auto w = [&](const char* s) { return weight_of(parse_form(s, 2), b); };

  WeightResult r = w("t^2*sin(x1)*dx1 + t^2*th");
  CHECK(r.kind == WeightResult::Kind::Value);
  CHECK(r.lambda == 2.0);

  CHECK(w("x1*dx2").lambda == 0.0);
  CHECK(w("x1*dx2").kind == WeightResult::Kind::Value);
  CHECK(w("t*dx1 + dx2").kind == WeightResult::Kind::NonHomogeneous);
  CHECK(w("(t + t^2)*dx1").kind == WeightResult::Kind::NonHomogeneous);
  CHECK(w("0*dx1").kind == WeightResult::Kind::Any);
  CHECK(w("t^2*dx1").str() == "2");
  CHECK(w("t*dx1 + dx2").str() == "non-homogeneous");

  // the Euler derivative multiplies a weight-lambda form by lambda
  Form xi = parse_form("t^3*x2*dx1^th", 2);
  CHECK(max_abs_diff(lie_euler(xi, b), 3.0 * xi, points(b)) < 1e-12);
}

TEST_CASE("form arithmetic guards") {
  Form a = parse_form("dx1", 2);
  Form b = parse_form("dx1^dx2", 2);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(wedge(a, parse_form("dx1", 3)), std::invalid_argument);
  CHECK((a - a).structurally_zero());
  CHECK(parse_form("dx1^dx2^dx1", 2).structurally_zero());
}
