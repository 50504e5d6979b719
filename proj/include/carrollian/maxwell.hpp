#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "carrollian/bundle.hpp"
#include "carrollian/form.hpp"

namespace carrollian {

// Carrollian electromagnetism on flat R^3 x R^x with the trivial connection.
// The magnetic field enters as a horizontal 2-form with the dictionary
//   B2 = dx^dy B_z - dx^dz B_y + dy^dz B_x,
// the electric field as the horizontal 1-form E1 = dx E_x + dy E_y + dz E_z;
// the field strength is F = B2 + theta ^ E1.

struct EMFieldSymbolic {
  std::array<Expr, 3> E{Expr::constant(0.0), Expr::constant(0.0), Expr::constant(0.0)};
  std::array<Expr, 3> B{Expr::constant(0.0), Expr::constant(0.0), Expr::constant(0.0)};
};

Form magnetic_two_form(const EMFieldSymbolic& f);
Form electric_one_form(const EMFieldSymbolic& f);
Form assemble_field_strength(const EMFieldSymbolic& f);

// Vector components of a horizontal 2-form under the magnetic dictionary.
std::array<Expr, 3> two_form_components(const Form& w);

struct MaxwellResidual {
  Form dF;      // full-stack d of the field strength (3-form)
  Form dstarF;  // full-stack d star of the field strength (3-form)
  Expr div_b;
  std::array<Expr, 3> faraday;  // curl E - L B
  Expr div_e;
  std::array<Expr, 3> ampere;  // curl B + L E
  double max_form_residual = 0.0;
  double max_vector_residual = 0.0;
  // The coefficient dictionary maps the form residuals exactly onto the four
  // vector residuals; this is their max pointwise mismatch (roundoff scale).
  double dictionary_mismatch = 0.0;
  bool equivalent = false;
};
MaxwellResidual maxwell_residual(const EMFieldSymbolic& f, int samples = 100,
                                 uint64_t seed = 1);

// Horizontal/vertical split of the two covariant equations on the flat
// trivial bundle: dF = db - theta ^ faraday and
// d star F = dive + theta ^ ampere, so the four forms below vanish together
// with (dF, d star F). On u-independent fields they reduce to the base-only
// pairs d_M B2 = d_M E1 = d_M *_M B2 = d_M *_M E1 = 0.
struct LocalResiduals {
  Form db;       // d_M B2                  (horizontal 3-form)
  Form faraday;  // d_M E1 - L B2           (horizontal 2-form)
  Form dive;     // d_M *_M E1              (horizontal 3-form)
  Form ampere;   // d_M *_M B2 + L *_M E1   (horizontal 2-form)
};
LocalResiduals local_residual_forms(const EMFieldSymbolic& f);

// Exact solution in logarithmic time u = ln|t|:
//   E = E0 cos(k.x - w u), B = -(k x E0)/w cos(k.x - w u), w = |k|.
// normalize scales E0 to unit length first. Rejects k = 0 and k.E0 != 0.
EMFieldSymbolic plane_wave(const std::array<double, 3>& k, const std::array<double, 3>& e0,
                           bool normalize = false);

// Electromagnetic duality (E, B) -> (B, -E); applying twice gives (-E, -B).
EMFieldSymbolic duality(const EMFieldSymbolic& f);

// Pointwise energy density (|E|^2 + |B|^2) / 2.
Expr energy_density(const EMFieldSymbolic& f);

// Log-time wave operator L^2 - (d^2/dx^2 + d^2/dy^2 + d^2/dz^2) applied to
// all six components (E then B); vanishes on solutions.
std::array<Expr, 6> wave_residual(const EMFieldSymbolic& f);

}  // namespace carrollian
