#include "carrollian/grid.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>

#include "carrollian/parse.hpp"

namespace carrollian {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  size_t lo = s.find_first_not_of(" \t\r");
  if (lo == std::string::npos) return "";
  size_t hi = s.find_last_not_of(" \t\r");
  return s.substr(lo, hi - lo + 1);
}

double parse_number(const std::string& value, const std::string& key) {
  try {
    size_t used = 0;
    double out = std::stod(value, &used);
    if (trim(value.substr(used)).empty()) return out;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key " + key + ": expected a number, got '" + value + "'");
}

int parse_int(const std::string& value, const std::string& key) {
  double d = parse_number(value, key);
  int i = static_cast<int>(std::lround(d));
  if (std::abs(d - i) > 1e-12)
    throw ConfigError("config key " + key + ": expected an integer, got '" + value + "'");
  return i;
}

std::array<double, 3> parse_triple(const std::string& value, const std::string& key) {
  std::string v = value;
  for (char& ch : v)
    if (ch == ',') ch = ' ';
  std::istringstream in(v);
  std::array<double, 3> out{};
  std::string tok;
  for (double& slot : out) {
    if (!(in >> tok))
      throw ConfigError("config key " + key + ": expected three numbers, got '" + value + "'");
    slot = parse_number(tok, key);
  }
  if (in >> tok)
    throw ConfigError("config key " + key + ": expected three numbers, got '" + value + "'");
  return out;
}

size_t cube(int n) { return static_cast<size_t>(n) * n * n; }

struct Wrap {
  int n;
  int up(int v) const { return v + 1 == n ? 0 : v + 1; }
  int down(int v) const { return v == 0 ? n - 1 : v - 1; }
  size_t at(int i, int j, int k) const {
    return static_cast<size_t>(i) + static_cast<size_t>(n) * (static_cast<size_t>(j) +
                                                              static_cast<size_t>(n) * k);
  }
};

}  // namespace

double SimConfig::cfl_bound() const { return dx() / std::sqrt(3.0); }

SimConfig SimConfig::from_string(const std::string& text) {
  SimConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> seen;
  bool have_n = false, have_l = false, have_du = false, have_steps = false;
  std::array<bool, 6> have_expr{};
  bool have_k = false, have_e0 = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    for (const std::string& s : seen)
      if (s == key) throw ConfigError("duplicate config key: " + key);
    seen.push_back(key);

    if (key == "n") {
      cfg.n = parse_int(value, key);
      have_n = true;
    } else if (key == "l_box") {
      cfg.l_box = parse_number(value, key);
      have_l = true;
    } else if (key == "du") {
      cfg.du = parse_number(value, key);
      have_du = true;
    } else if (key == "steps") {
      cfg.steps = parse_int(value, key);
      have_steps = true;
    } else if (key == "branch") {
      if (value == "+" || value == "+1" || value == "1")
        cfg.branch = 1;
      else if (value == "-" || value == "-1")
        cfg.branch = -1;
      else
        throw ConfigError("config key branch: expected + or -, got '" + value + "'");
    } else if (key == "init.kind") {
      if (value == "plane-wave") value = "plane_wave";
      cfg.init_kind = value;
    } else if (key == "init.k") {
      cfg.k = parse_triple(value, key);
      have_k = true;
    } else if (key == "init.e0") {
      cfg.e0 = parse_triple(value, key);
      have_e0 = true;
    } else if (key == "output.cadence") {
      cfg.cadence = parse_int(value, key);
    } else if (key == "output.dump_cadence") {
      cfg.dump_cadence = parse_int(value, key);
    } else if (key == "output.dump_prefix") {
      cfg.dump_prefix = value;
    } else {
      static const char* names[6] = {"init.ex", "init.ey", "init.ez",
                                     "init.bx", "init.by", "init.bz"};
      bool matched = false;
      for (int c = 0; c < 6; ++c)
        if (key == names[c]) {
          cfg.init_expr[static_cast<size_t>(c)] = value;
          have_expr[static_cast<size_t>(c)] = true;
          matched = true;
        }
      if (!matched) throw ConfigError("unknown config key: " + key);
    }
  }

  if (!have_n) throw ConfigError("missing config key: n");
  if (!have_l) throw ConfigError("missing config key: l_box");
  if (!have_du) throw ConfigError("missing config key: du");
  if (!have_steps) throw ConfigError("missing config key: steps");
  if (cfg.init_kind.empty()) throw ConfigError("missing config key: init.kind");
  if (cfg.init_kind == "plane_wave") {
    if (!have_k) throw ConfigError("missing config key: init.k");
    if (!have_e0) throw ConfigError("missing config key: init.e0");
    for (bool h : have_expr)
      if (h) throw ConfigError("init.ex .. init.bz are only valid with init.kind = custom");
  } else if (cfg.init_kind == "custom") {
    static const char* names[6] = {"init.ex", "init.ey", "init.ez",
                                   "init.bx", "init.by", "init.bz"};
    for (int c = 0; c < 6; ++c)
      if (!have_expr[static_cast<size_t>(c)])
        throw ConfigError(std::string("missing config key: ") + names[c]);
    if (have_k || have_e0)
      throw ConfigError("init.k / init.e0 are only valid with init.kind = plane_wave");
  } else {
    throw ConfigError("init.kind must be plane_wave or custom, got '" + cfg.init_kind + "'");
  }
  cfg.validate();
  return cfg;
}

SimConfig SimConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return from_string(text.str());
}

void SimConfig::validate() const {
  if (n < 8) throw ConfigError("resolution n must be at least 8");
  if (!(l_box > 0.0)) throw ConfigError("l_box must be positive");
  if (!(du > 0.0)) throw ConfigError("du must be positive");
  if (steps < 0) throw ConfigError("steps must be nonnegative");
  if (cadence < 1) throw ConfigError("output.cadence must be at least 1");
  if (dump_cadence < 0) throw ConfigError("output.dump_cadence must be nonnegative");
  if (dump_cadence > 0 && dump_prefix.empty())
    throw ConfigError("output.dump_cadence needs output.dump_prefix");
  double bound = cfl_bound();
  if (du > bound * (1.0 + 1e-12)) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "du = %g violates the stability bound du <= %g (dx / sqrt(3), dx = %g)", du,
                  bound, dx());
    throw ConfigError(msg);
  }
  if (init_kind == "plane_wave") {
    double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
    if (k2 == 0.0) throw ConfigError("plane wave needs a nonzero init.k");
    for (double kc : k) {
      double cycles = kc * l_box / (2.0 * kPi);
      if (std::abs(cycles - std::round(cycles)) > 1e-9)
        throw ConfigError("init.k must be 2*pi*(integer)/l_box per component for periodicity");
    }
    double dot = k[0] * e0[0] + k[1] * e0[1] + k[2] * e0[2];
    double e2 = e0[0] * e0[0] + e0[1] * e0[1] + e0[2] * e0[2];
    if (e2 == 0.0) throw ConfigError("plane wave needs a nonzero init.e0");
    if (std::abs(dot) > 1e-9 * std::sqrt(k2 * e2))
      throw ConfigError("plane wave amplitude must be transverse: k . e0 = 0");
  } else if (init_kind == "custom") {
    for (const std::string& text : init_expr) {
      try {
        Expr e = parse_scalar(text, 3);
        if (e.uses_fibre())
          throw ConfigError("initial data is a spatial snapshot; expression '" + text +
                            "' must not use t");
      } catch (const ParseError& err) {
        throw ConfigError("initial-data expression '" + text + "': " + err.what());
      }
    }
  }
}

namespace {

// Edge/face center positions of the Yee layout for component c (0..5 in the
// order ex, ey, ez, bx, by, bz); offsets in units of the grid spacing.
std::array<double, 3> stagger_offset(int c) {
  switch (c) {
    case 0: return {0.5, 0.0, 0.0};  // Ex
    case 1: return {0.0, 0.5, 0.0};  // Ey
    case 2: return {0.0, 0.0, 0.5};  // Ez
    case 3: return {0.0, 0.5, 0.5};  // Bx
    case 4: return {0.5, 0.0, 0.5};  // By
    default: return {0.5, 0.5, 0.0};  // Bz
  }
}

void fill_component(std::vector<double>& arr, int c, int n, double h,
                    const std::function<double(double, double, double)>& f) {
  Wrap w{n};
  std::array<double, 3> off = stagger_offset(c);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        arr[w.at(i, j, k)] = f((i + off[0]) * h, (j + off[1]) * h, (k + off[2]) * h);
}

}  // namespace

EMGridState make_initial_state(const SimConfig& cfg) {
  EMGridState s;
  s.n = cfg.n;
  s.l_box = cfg.l_box;
  s.u = 0.0;
  s.step = 0;
  size_t total = cube(cfg.n);
  for (std::vector<double>* a : {&s.ex, &s.ey, &s.ez, &s.bx, &s.by, &s.bz}) a->assign(total, 0.0);
  double h = cfg.dx();

  if (cfg.init_kind == "plane_wave") {
    double omega = std::sqrt(cfg.k[0] * cfg.k[0] + cfg.k[1] * cfg.k[1] + cfg.k[2] * cfg.k[2]);
    std::array<double, 3> b0{-(cfg.k[1] * cfg.e0[2] - cfg.k[2] * cfg.e0[1]) / omega,
                             -(cfg.k[2] * cfg.e0[0] - cfg.k[0] * cfg.e0[2]) / omega,
                             -(cfg.k[0] * cfg.e0[1] - cfg.k[1] * cfg.e0[0]) / omega};
    // E is sampled at u = 0, B half a step earlier at u = -du/2.
    double half = omega * cfg.du / 2.0;
    std::vector<double>* arrays[6] = {&s.ex, &s.ey, &s.ez, &s.bx, &s.by, &s.bz};
    for (int c = 0; c < 6; ++c) {
      double amp = c < 3 ? cfg.e0[static_cast<size_t>(c)] : b0[static_cast<size_t>(c - 3)];
      double phase0 = c < 3 ? 0.0 : half;
      fill_component(*arrays[c], c, cfg.n, h, [&](double x, double y, double z) {
        return amp * std::cos(cfg.k[0] * x + cfg.k[1] * y + cfg.k[2] * z + phase0);
      });
    }
  } else {
    std::vector<double>* arrays[6] = {&s.ex, &s.ey, &s.ez, &s.bx, &s.by, &s.bz};
    for (int c = 0; c < 6; ++c) {
      Expr e = parse_scalar(cfg.init_expr[static_cast<size_t>(c)], 3);
      fill_component(*arrays[c], c, cfg.n, h, [&](double x, double y, double z) {
        return eval(e, Point({x, y, z}, static_cast<double>(cfg.branch)));
      });
    }
  }
  return s;
}

void curl_e(const EMGridState& s, std::vector<double>& cx, std::vector<double>& cy,
            std::vector<double>& cz) {
  int n = s.n;
  double inv_h = n / s.l_box;
  Wrap w{n};
  size_t total = cube(n);
  cx.resize(total);
  cy.resize(total);
  cz.resize(total);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        size_t at = w.at(i, j, k);
        // (curl E)_x at Bx(i, j+1/2, k+1/2) and cyclic siblings.
        cx[at] = (s.ez[w.at(i, w.up(j), k)] - s.ez[at] - s.ey[w.at(i, j, w.up(k))] + s.ey[at]) *
                 inv_h;
        cy[at] = (s.ex[w.at(i, j, w.up(k))] - s.ex[at] - s.ez[w.at(w.up(i), j, k)] + s.ez[at]) *
                 inv_h;
        cz[at] = (s.ey[w.at(w.up(i), j, k)] - s.ey[at] - s.ex[w.at(i, w.up(j), k)] + s.ex[at]) *
                 inv_h;
      }
}

void curl_b(const EMGridState& s, std::vector<double>& cx, std::vector<double>& cy,
            std::vector<double>& cz) {
  int n = s.n;
  double inv_h = n / s.l_box;
  Wrap w{n};
  size_t total = cube(n);
  cx.resize(total);
  cy.resize(total);
  cz.resize(total);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        size_t at = w.at(i, j, k);
        // (curl B)_x at Ex(i+1/2, j, k) and cyclic siblings.
        cx[at] = (s.bz[at] - s.bz[w.at(i, w.down(j), k)] - s.by[at] +
                  s.by[w.at(i, j, w.down(k))]) *
                 inv_h;
        cy[at] = (s.bx[at] - s.bx[w.at(i, j, w.down(k))] - s.bz[at] +
                  s.bz[w.at(w.down(i), j, k)]) *
                 inv_h;
        cz[at] = (s.by[at] - s.by[w.at(w.down(i), j, k)] - s.bx[at] +
                  s.bx[w.at(i, w.down(j), k)]) *
                 inv_h;
      }
}

double max_div_e(const EMGridState& s) {
  int n = s.n;
  double inv_h = n / s.l_box;
  Wrap w{n};
  double out = 0.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        size_t at = w.at(i, j, k);
        double d = (s.ex[at] - s.ex[w.at(w.down(i), j, k)] + s.ey[at] -
                    s.ey[w.at(i, w.down(j), k)] + s.ez[at] - s.ez[w.at(i, j, w.down(k))]) *
                   inv_h;
        out = std::max(out, std::abs(d));
      }
  return out;
}

double max_div_b(const EMGridState& s) {
  int n = s.n;
  double inv_h = n / s.l_box;
  Wrap w{n};
  double out = 0.0;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        size_t at = w.at(i, j, k);
        double d = (s.bx[w.at(w.up(i), j, k)] - s.bx[at] + s.by[w.at(i, w.up(j), k)] -
                    s.by[at] + s.bz[w.at(i, j, w.up(k))] - s.bz[at]) *
                   inv_h;
        out = std::max(out, std::abs(d));
      }
  return out;
}

namespace {

void check_cfl(const EMGridState& s, double du) {
  double bound = (s.l_box / s.n) / std::sqrt(3.0);
  if (du > bound * (1.0 + 1e-12)) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "du = %g violates the stability bound du <= %g (dx / sqrt(3), dx = %g)", du,
                  bound, s.l_box / s.n);
    throw std::invalid_argument(msg);
  }
  if (!(du > 0.0)) throw std::invalid_argument("du must be positive");
}

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

EMGridState fdtd_step(const EMGridState& s, double du) {
  check_cfl(s, du);
  EMGridState out = s;
  std::vector<double> cx, cy, cz;
  curl_e(s, cx, cy, cz);
  axpy(out.bx, du, cx);
  axpy(out.by, du, cy);
  axpy(out.bz, du, cz);
  curl_b(out, cx, cy, cz);
  axpy(out.ex, -du, cx);
  axpy(out.ey, -du, cy);
  axpy(out.ez, -du, cz);
  out.u = s.u + du;
  out.step = s.step + 1;
  return out;
}

SimResult run_simulation(const SimConfig& cfg) {
  SimResult result;
  EMGridState state = make_initial_state(cfg);
  check_cfl(state, cfg.du);
  double h = cfg.dx();
  double dv = h * h * h;
  size_t total = cube(cfg.n);

  std::vector<double> cx, cy, cz;
  double res_ampere = 0.0;  // no E update has happened before step 0

  for (int s = 0;; ++s) {
    bool report = (s % cfg.cadence == 0) || s == cfg.steps;
    bool dump = cfg.dump_cadence > 0 && ((s % cfg.dump_cadence == 0) || s == cfg.steps);

    if (dump) {
      std::string path = cfg.dump_prefix + std::to_string(state.step) + ".bin";
      write_dump(path, state, cfg.branch);
      result.dump_files.push_back(path);
    }

    // Advance B to u + du/2 (needed for the conserved energy at this step).
    curl_e(state, cx, cy, cz);
    std::vector<double> bx_new = state.bx, by_new = state.by, bz_new = state.bz;
    axpy(bx_new, cfg.du, cx);
    axpy(by_new, cfg.du, cy);
    axpy(bz_new, cfg.du, cz);

    if (report) {
      SeriesRow row;
      row.step = state.step;
      row.u = state.u;
      row.t = cfg.branch * std::exp(state.u);
      double acc_e = 0.0, acc_b = 0.0;
      for (size_t i = 0; i < total; ++i) {
        acc_e += state.ex[i] * state.ex[i] + state.ey[i] * state.ey[i] +
                 state.ez[i] * state.ez[i];
        acc_b += state.bx[i] * bx_new[i] + state.by[i] * by_new[i] + state.bz[i] * bz_new[i];
      }
      row.energy = 0.5 * dv * (acc_e + acc_b);
      row.max_div_e = max_div_e(state);
      EMGridState b_half = state;
      b_half.bx = bx_new;
      b_half.by = by_new;
      b_half.bz = bz_new;
      row.max_div_b = max_div_b(b_half);
      // Update-consistency residuals: how well the stored arrays satisfy the
      // discrete equations they were just advanced by (roundoff scale).
      double res_f = 0.0;
      for (size_t i = 0; i < total; ++i) {
        res_f = std::max(res_f, std::abs((bx_new[i] - state.bx[i]) / cfg.du - cx[i]));
        res_f = std::max(res_f, std::abs((by_new[i] - state.by[i]) / cfg.du - cy[i]));
        res_f = std::max(res_f, std::abs((bz_new[i] - state.bz[i]) / cfg.du - cz[i]));
      }
      row.res_faraday = res_f;
      row.res_ampere = res_ampere;
      result.rows.push_back(row);
    }

    if (s == cfg.steps) break;

    // Commit the half-step B, then advance E with the same kernels as
    // fdtd_step.
    std::vector<double> ex_old = state.ex, ey_old = state.ey, ez_old = state.ez;
    state.bx = std::move(bx_new);
    state.by = std::move(by_new);
    state.bz = std::move(bz_new);
    curl_b(state, cx, cy, cz);
    axpy(state.ex, -cfg.du, cx);
    axpy(state.ey, -cfg.du, cy);
    axpy(state.ez, -cfg.du, cz);
    res_ampere = 0.0;
    for (size_t i = 0; i < total; ++i) {
      res_ampere = std::max(res_ampere,
                            std::abs((state.ex[i] - ex_old[i]) / cfg.du + cx[i]));
      res_ampere = std::max(res_ampere,
                            std::abs((state.ey[i] - ey_old[i]) / cfg.du + cy[i]));
      res_ampere = std::max(res_ampere,
                            std::abs((state.ez[i] - ez_old[i]) / cfg.du + cz[i]));
    }
    state.u += cfg.du;
    state.step += 1;
  }
  result.final_state = std::move(state);
  return result;
}

std::string csv_header() {
  return "step,u,t,energy,max_divE,max_divB,max_residual_faraday,max_residual_ampere";
}

std::string csv_row(const SeriesRow& row) {
  char buf[320];
  std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", row.step, row.u,
                row.t, row.energy, row.max_div_e, row.max_div_b, row.res_faraday,
                row.res_ampere);
  return buf;
}

void write_csv(const std::string& path, const std::vector<SeriesRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << csv_header() << "\n";
  for (const SeriesRow& row : rows) out << csv_row(row) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_dump(const std::string& path, const EMGridState& s, int branch) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  const char magic[4] = {'C', 'A', 'R', 'R'};
  uint32_t version = 1;
  uint32_t n = static_cast<uint32_t>(s.n);
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&s.l_box), sizeof s.l_box);
  out.write(reinterpret_cast<const char*>(&s.u), sizeof s.u);
  for (const std::vector<double>* a : {&s.ex, &s.ey, &s.ez, &s.bx, &s.by, &s.bz})
    out.write(reinterpret_cast<const char*>(a->data()),
              static_cast<std::streamsize>(a->size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);

  std::ofstream meta(path + ".meta");
  meta << "format: carrollian-em-dump\n"
       << "version: 1\n"
       << "n: " << s.n << "\n"
       << "l_box: " << s.l_box << "\n"
       << "u: " << s.u << "\n"
       << "t: " << branch * std::exp(s.u) << "\n"
       << "step: " << s.step << "\n"
       << "layout: six n^3 float64 arrays ex,ey,ez,bx,by,bz, x-fastest, "
          "index i + n*(j + n*k)\n"
       << "staggering: E on edge centers at u, B on face centers at u - du/2\n";
}

EMGridState read_dump(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dump: " + path);
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "CARR", 4) != 0)
    throw std::runtime_error("not a field dump (bad magic): " + path);
  uint32_t version = 0, n = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  if (!in || version != 1)
    throw std::runtime_error("unsupported dump version in " + path);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  EMGridState s;
  if (!in || n == 0 || n > (1u << 12)) throw std::runtime_error("corrupt dump header: " + path);
  s.n = static_cast<int>(n);
  in.read(reinterpret_cast<char*>(&s.l_box), sizeof s.l_box);
  in.read(reinterpret_cast<char*>(&s.u), sizeof s.u);
  size_t total = cube(s.n);
  for (std::vector<double>* a : {&s.ex, &s.ey, &s.ez, &s.bx, &s.by, &s.bz}) {
    a->resize(total);
    in.read(reinterpret_cast<char*>(a->data()),
            static_cast<std::streamsize>(total * sizeof(double)));
  }
  if (!in) throw std::runtime_error("truncated dump: " + path);
  char extra = 0;
  if (in.read(&extra, 1)) throw std::runtime_error("trailing bytes in dump: " + path);
  return s;
}

}  // namespace carrollian
