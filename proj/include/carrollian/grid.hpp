#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace carrollian {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration of the staggered-grid solver. The simulation marches in the
// logarithmic time u = ln|t| on one fibre branch (t = branch * e^u); the file
// format is flat "key = value" lines, '#' starts a comment.
//
// Keys: n, l_box, du, steps, branch (+/-), init.kind (plane_wave | custom),
// init.k, init.e0 (three numbers each, plane_wave only), init.ex .. init.bz
// (expressions in x, y, z; custom only), output.cadence, output.dump_cadence,
// output.dump_prefix.
struct SimConfig {
  int n = 0;          // grid resolution per axis (>= 8)
  double l_box = 0.0; // periodic box edge length
  double du = 0.0;    // log-time step, CFL du <= dx/sqrt(3)
  int steps = 0;
  int branch = 1;  // sign of t on this fibre component
  std::string init_kind;
  std::array<double, 3> k{0.0, 0.0, 0.0};
  std::array<double, 3> e0{0.0, 0.0, 0.0};
  std::array<std::string, 6> init_expr;  // ex, ey, ez, bx, by, bz
  int cadence = 1;
  int dump_cadence = 0;  // 0 = no dumps
  std::string dump_prefix;

  double dx() const { return l_box / n; }
  double cfl_bound() const;

  static SimConfig from_string(const std::string& text);
  static SimConfig from_file(const std::string& path);
  void validate() const;  // throws ConfigError
};

// Yee-staggered periodic grid state, x-fastest linear index i + n*(j + n*k).
// E components live on edge centers at log-time u, B components on face
// centers half a step earlier (u - du/2):
//   Ex (i+1/2, j, k)   Ey (i, j+1/2, k)   Ez (i, j, k+1/2)
//   Bx (i, j+1/2, k+1/2)   By (i+1/2, j, k+1/2)   Bz (i+1/2, j+1/2, k)
struct EMGridState {
  int n = 0;
  double l_box = 0.0;
  double u = 0.0;
  int step = 0;
  std::vector<double> ex, ey, ez, bx, by, bz;
};

EMGridState make_initial_state(const SimConfig& cfg);

// One leapfrog step: B' = B + du curl(E), E' = E - du curl(B'); second-order
// centered staggered curls, discrete divergences exactly conserved. Rejects
// du above the CFL bound, citing the admissible value.
EMGridState fdtd_step(const EMGridState& s, double du);

// Staggered first-difference operators (periodic); exposed for tests.
void curl_e(const EMGridState& s, std::vector<double>& cx, std::vector<double>& cy,
            std::vector<double>& cz);
void curl_b(const EMGridState& s, std::vector<double>& cx, std::vector<double>& cy,
            std::vector<double>& cz);
double max_div_e(const EMGridState& s);
double max_div_b(const EMGridState& s);

struct SeriesRow {
  int step = 0;
  double u = 0.0;
  double t = 0.0;
  double energy = 0.0;
  double max_div_e = 0.0;
  double max_div_b = 0.0;
  double res_faraday = 0.0;  // update-consistency residual of the B half-step
  double res_ampere = 0.0;   // update-consistency residual of the E step
};

struct SimResult {
  std::vector<SeriesRow> rows;
  EMGridState final_state;
  std::vector<std::string> dump_files;
};

// Marches the configured number of steps, reporting on the output cadence.
// The energy column is the exactly conserved leapfrog invariant
//   (dx^3 / 2) * (sum E^2 + sum B^{-1/2} . B^{+1/2}),
// so its drift is a roundoff-level solver diagnostic.
SimResult run_simulation(const SimConfig& cfg);

std::string csv_header();
std::string csv_row(const SeriesRow& row);
void write_csv(const std::string& path, const std::vector<SeriesRow>& rows);

// Binary field dump: magic "CARR", u32 version = 1, u32 n, f64 l_box, f64 u,
// then six n^3 float64 arrays (ex, ey, ez, bx, by, bz) x-fastest, native
// endianness; a human-readable sidecar is written next to it at path +
// ".meta". read_dump validates magic, version and size.
void write_dump(const std::string& path, const EMGridState& s, int branch);
EMGridState read_dump(const std::string& path);

}  // namespace carrollian
