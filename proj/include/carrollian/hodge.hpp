#pragma once

#include <vector>

#include "carrollian/bundle.hpp"
#include "carrollian/form.hpp"

namespace carrollian {

// Metric structures built from G = g - theta (x) theta, block diagonal in the
// mixed coframe: upper block g(x), lower-right entry -1. Inner products of
// k-forms use the Gram-determinant extension over strictly increasing
// monomials (no 1/k! factors).

// Volume form of (P, G): sqrt(det g) dx^1 ^ ... ^ dx^n ^ theta.
Form volume_form(const CarrollBundle& b);

// Symbolic pointwise inner product of basis monomials, <m1, m2>_G.
Expr gram(const Monomial& m1, const Monomial& m2, const CarrollBundle& b);

double inner_product(const Form& xi, const Form& eta, const CarrollBundle& b, const Point& p);

// Unique (n+1-k)-form with  eta ^ star(xi) = <eta, xi>_G Vol_P  for all eta.
Form hodge_star(const Form& xi, const CarrollBundle& b);

// Riemannian Hodge star of the base (M, g), applied fibrewise to horizontal
// forms; errors on non-horizontal input.
Form base_hodge_star(const Form& xi, const CarrollBundle& b);

// delta = (-1)^{1 + k(n+1-k)} star d star on degree k >= 1; zero on degree 0.
Form codifferential(const Form& xi, const CarrollBundle& b);

// Hodge-de Rham Laplacian d delta + delta d.
Form laplacian(const Form& xi, const CarrollBundle& b);

int star_square_sign(int degree, int n);          // (-1)^{1 + k(n+1-k)}
int codifferential_sign(int degree, int n);       // same sign law, k = input degree

struct Classification {
  bool closed = false, coclosed = false, harmonic = false;
  double d_residual = 0.0, delta_residual = 0.0, laplacian_residual = 0.0;
};
Classification classify(const Form& xi, const CarrollBundle& b, double tol = 1e-9,
                        const std::vector<Point>* pts = nullptr);

}  // namespace carrollian
