// Command-line surface: verification suites, table dumps, simulations and
// report emission for the Carrollian exterior-calculus library.

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "carrollian/bundle.hpp"
#include "carrollian/form.hpp"
#include "carrollian/grid.hpp"
#include "carrollian/hodge.hpp"
#include "carrollian/horizon.hpp"
#include "carrollian/maxwell.hpp"
#include "carrollian/parse.hpp"
#include "carrollian/report.hpp"
#include "carrollian/verify.hpp"
#include "json.hpp"

namespace {

using namespace carrollian;

struct GlobalOpts {
  uint64_t seed = 1;
  double tolerance = -1.0;  // negative: per-command default
  int samples = -1;         // negative: per-command default
  std::string output;       // empty: stdout
  std::string format = "text";
};

void add_common(CLI::App* cmd, GlobalOpts& g) {
  cmd->add_option("--seed", g.seed, "Seed for the quasi-random sample sets");
  cmd->add_option("--tolerance", g.tolerance,
                  "Pass tolerance (default depends on the command)");
  cmd->add_option("--samples", g.samples,
                  "Sample count: evaluation points (verify, maxwell-check) or random "
                  "table entries per degree (horizon-table)");
  cmd->add_option("--output", g.output, "Write the report to this file instead of stdout");
  cmd->add_option("--format", g.format, "Report format: text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw std::runtime_error("cannot open for writing: " + g.output);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + g.output);
}

int finish_report(const GlobalOpts& g, const Report& rep) {
  emit(g, render(rep, parse_format(g.format)));
  if (rep.all_pass()) return 0;
  const CaseResult* f = rep.first_failure();
  std::fprintf(stderr, "first violated invariant: %s :: %s (max deviation %g)\n",
               f->suite.c_str(), f->name.c_str(), f->max_deviation);
  if (!f->witness.empty()) std::fprintf(stderr, "  witness: %s\n", f->witness.c_str());
  return 1;
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

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const GlobalOpts& g, const std::vector<int>& dims) {
  VerifyOptions opts;
  if (!dims.empty()) opts.dims = dims;
  opts.seed = g.seed;
  if (g.samples > 0) opts.samples = g.samples;
  if (g.tolerance > 0) opts.tolerance = g.tolerance;
  return finish_report(g, run_verify(opts));
}

// ---- star-table -----------------------------------------------------------

CarrollBundle described_bundle(int n, const std::optional<double>& kappa,
                               const std::vector<std::string>& g_entries,
                               const std::vector<std::string>& a_entries) {
  if (kappa) return make_horizon_bundle(*kappa);
  std::vector<std::vector<Expr>> g(static_cast<size_t>(n),
                                   std::vector<Expr>(static_cast<size_t>(n), Expr::constant(0.0)));
  size_t nn = static_cast<size_t>(n);
  auto metric_entry = [&](const std::string& text) {
    Expr e = parse_scalar(text, n);
    if (e.uses_fibre())
      throw std::invalid_argument("metric entries must not depend on t: " + text);
    return e;
  };
  if (g_entries.empty()) {
    for (size_t i = 0; i < nn; ++i) g[i][i] = Expr::constant(1.0);
  } else if (g_entries.size() == nn) {
    for (size_t i = 0; i < nn; ++i) g[i][i] = metric_entry(g_entries[i]);
  } else if (g_entries.size() == nn * nn) {
    for (size_t i = 0; i < nn; ++i)
      for (size_t j = 0; j < nn; ++j) g[i][j] = metric_entry(g_entries[i * nn + j]);
  } else {
    throw std::invalid_argument("--g needs n entries (diagonal) or n*n entries (row-major)");
  }
  std::vector<Expr> A(nn, Expr::constant(0.0));
  if (!a_entries.empty()) {
    if (a_entries.size() != nn)
      throw std::invalid_argument("--connection needs exactly n entries");
    for (size_t i = 0; i < nn; ++i) A[i] = metric_entry(a_entries[i]);
  }
  return CarrollBundle(n, std::move(g), std::move(A));
}

int cmd_star_table(const GlobalOpts& g, const CarrollBundle& b) {
  struct Row {
    std::string input;
    int degree;
    std::string star;
  };
  std::vector<Row> rows;
  for (int k = 0; k <= b.n + 1; ++k) {
    for (const Monomial& m : Monomial::all_of_degree(b.n, k)) {
      Form s = hodge_star(Form::monomial(b.n, m, Expr::constant(1.0)), b);
      rows.push_back({m.str(), k, s.str()});
    }
  }
  ReportFormat fmt = parse_format(g.format);
  std::ostringstream out;
  if (fmt == ReportFormat::Text) {
    for (const Row& r : rows) out << "star(" << r.input << ") = " << r.star << "\n";
  } else if (fmt == ReportFormat::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Row& r : rows)
      arr.push_back({{"input", r.input}, {"degree", r.degree}, {"star", r.star}});
    out << arr.dump(2) << "\n";
  } else {
    out << "input,degree,star\n";
    for (const Row& r : rows)
      out << csv_field(r.input) << ',' << r.degree << ',' << csv_field(r.star) << "\n";
  }
  emit(g, out.str());
  return 0;
}

// ---- maxwell-check --------------------------------------------------------

int cmd_maxwell_check(const GlobalOpts& g, const std::array<std::string, 6>& exprs) {
  double tol = g.tolerance > 0 ? g.tolerance : 1e-9;
  int samples = g.samples > 0 ? g.samples : 100;

  EMFieldSymbolic f;
  for (int c = 0; c < 6; ++c) {
    Expr e = parse_scalar(exprs[static_cast<size_t>(c)], 3);
    if (c < 3)
      f.E[static_cast<size_t>(c)] = e;
    else
      f.B[static_cast<size_t>(c - 3)] = e;
  }
  MaxwellResidual r = maxwell_residual(f, samples, g.seed);

  CarrollBundle b = CarrollBundle::flat(3);
  std::vector<Point> pts = sample_points(b.sample_spec(samples, g.seed));
  Report rep;
  auto add_expr = [&](const std::string& name, const Expr& e) {
    CaseResult c;
    c.suite = "maxwell";
    c.name = name;
    double worst = 0.0;
    const Point* at = nullptr;
    for (const Point& p : pts) {
      double v = std::abs(eval(e, p));
      if (v > worst) {
        worst = v;
        at = &p;
      }
    }
    c.max_deviation = worst;
    c.pass = worst <= tol;
    if (!c.pass && at) c.witness = describe_point(*at);
    rep.cases.push_back(std::move(c));
  };
  auto add_form = [&](const std::string& name, const Form& form) {
    CaseResult c;
    c.suite = "maxwell";
    c.name = name;
    double worst = 0.0;
    const Point* at = nullptr;
    for (const auto& kv : form.c) {
      for (const Point& p : pts) {
        double v = std::abs(eval(kv.second, p));
        if (v > worst) {
          worst = v;
          at = &p;
        }
      }
    }
    c.max_deviation = worst;
    c.pass = worst <= tol;
    if (!c.pass && at) c.witness = describe_point(*at);
    rep.cases.push_back(std::move(c));
  };

  add_form("covariant dF = 0", r.dF);
  add_form("covariant d star F = 0", r.dstarF);
  add_expr("div B = 0", r.div_b);
  const char* axes = "xyz";
  for (int i = 0; i < 3; ++i)
    add_expr(std::string("faraday ") + axes[i] + ": (curl E - LB)_" + axes[i] + " = 0",
             r.faraday[static_cast<size_t>(i)]);
  add_expr("div E = 0", r.div_e);
  for (int i = 0; i < 3; ++i)
    add_expr(std::string("ampere ") + axes[i] + ": (curl B + LE)_" + axes[i] + " = 0",
             r.ampere[static_cast<size_t>(i)]);
  CaseResult eq;
  eq.suite = "maxwell";
  eq.name = "form/vector dictionary equivalence";
  eq.pass = r.equivalent;
  eq.max_deviation = r.dictionary_mismatch;
  if (!eq.pass) eq.witness = "form-residual and vector-residual dictionaries disagree";
  rep.cases.push_back(std::move(eq));

  return finish_report(g, rep);
}

// ---- maxwell-run ----------------------------------------------------------

int cmd_maxwell_run(const GlobalOpts& g, const std::string& config_path) {
  SimConfig cfg = SimConfig::from_file(config_path);
  SimResult result = run_simulation(cfg);
  std::ostringstream out;
  out << csv_header() << "\n";
  for (const SeriesRow& row : result.rows) out << csv_row(row) << "\n";
  emit(g, out.str());
  for (const std::string& path : result.dump_files)
    std::fprintf(stderr, "wrote field dump %s\n", path.c_str());
  return 0;
}

// ---- horizon-table --------------------------------------------------------

void append_table(Report& rep, const std::string& suite, const TableReport& table) {
  for (const TableEntry& e : table.entries) {
    CaseResult c;
    c.suite = suite;
    c.name = e.entry;
    c.pass = e.pass;
    c.max_deviation = e.max_deviation;
    if (!e.pass) c.witness = "expected " + e.expected + ", computed " + e.computed;
    rep.cases.push_back(std::move(c));
  }
}

int cmd_horizon_table(const GlobalOpts& g, double kappa) {
  double tol_star = g.tolerance > 0 ? g.tolerance : 1e-10;
  double tol_lap = g.tolerance > 0 ? g.tolerance : 1e-8;
  int per_degree = g.samples > 0 ? g.samples : 20;
  Report rep;
  append_table(rep, "horizon-star", verify_hodge_table(kappa, tol_star));
  append_table(rep, "horizon-laplacian",
               laplacian_table_suite(kappa, tol_lap, per_degree, g.seed));
  return finish_report(g, rep);
}

// ---- horizon-scan ---------------------------------------------------------

int cmd_horizon_scan(const GlobalOpts& g, double kappa, int l_max, int lambda_max) {
  double tol = g.tolerance > 0 ? g.tolerance : 1e-8;
  std::vector<ScanHit> hits = harmonic_scan(kappa, l_max, lambda_max, tol);
  ReportFormat fmt = parse_format(g.format);
  std::ostringstream out;
  if (fmt == ReportFormat::Text) {
    out << hits.size() << " harmonic candidate(s) at kappa = " << kappa << ", l <= " << l_max
        << ", lambda <= " << lambda_max << "\n";
    for (const ScanHit& h : hits) {
      char line[200];
      std::snprintf(line, sizeof line,
                    "degree %d slot %-5s l=%d m=%+d lambda=%d  stack residual %.3e  table "
                    "residual %.3e  %s\n",
                    h.degree, h.slot.c_str(), h.l, h.m, h.lambda, h.stack_residual,
                    h.table_residual, h.regular ? "regular at t=0" : "not regular at t=0");
      out << line;
    }
  } else if (fmt == ReportFormat::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ScanHit& h : hits)
      arr.push_back({{"degree", h.degree},
                     {"slot", h.slot},
                     {"l", h.l},
                     {"m", h.m},
                     {"lambda", h.lambda},
                     {"stack_residual", h.stack_residual},
                     {"table_residual", h.table_residual},
                     {"regular", h.regular}});
    out << arr.dump(2) << "\n";
  } else {
    out << "degree,slot,l,m,lambda,stack_residual,table_residual,regular\n";
    for (const ScanHit& h : hits) {
      char line[200];
      std::snprintf(line, sizeof line, "%d,%s,%d,%d,%d,%.17g,%.17g,%s\n", h.degree,
                    h.slot.c_str(), h.l, h.m, h.lambda, h.stack_residual, h.table_residual,
                    h.regular ? "true" : "false");
      out << line;
    }
  }
  emit(g, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exterior calculus, Hodge theory and electromagnetism on Carrollian "
               "R^x-bundles"};
  app.require_subcommand(1);

  GlobalOpts g;
  add_common(&app, g);

  // verify
  std::vector<int> verify_dims;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the seeded exterior-calculus/Hodge property suite (dimensions 1-3)");
  verify->add_option("--n", verify_dims, "Restrict to these base dimensions (default 1 2 3)")
      ->check(CLI::Range(1, 3));
  add_common(verify, g);

  // star-table
  int st_n = 3;
  std::optional<double> st_kappa;
  std::vector<std::string> st_g, st_a;
  CLI::App* star_table = app.add_subcommand(
      "star-table", "Print the Hodge star of every mixed-coframe basis monomial");
  star_table->add_option("--n", st_n, "Base dimension (flat metric unless --g is given)")
      ->check(CLI::Range(1, 6));
  CLI::Option* st_kappa_opt = star_table->add_option(
      "--kappa", st_kappa, "Use the horizon bundle with this surface gravity (n = 2)");
  star_table
      ->add_option("--g", st_g,
                   "Metric entries (repeatable): n entries = diagonal, n*n = row-major")
      ->excludes(st_kappa_opt);
  star_table
      ->add_option("--connection", st_a, "Connection components A_a (repeatable, n entries)")
      ->excludes(st_kappa_opt);
  add_common(star_table, g);

  // maxwell-check
  std::array<std::string, 6> mc_exprs{"0", "0", "0", "0", "0", "0"};
  CLI::App* maxwell_check = app.add_subcommand(
      "maxwell-check", "Evaluate Carrollian Maxwell residuals of symbolic E and B fields");
  maxwell_check->add_option("--ex", mc_exprs[0], "E_x(x, y, z, t)");
  maxwell_check->add_option("--ey", mc_exprs[1], "E_y(x, y, z, t)");
  maxwell_check->add_option("--ez", mc_exprs[2], "E_z(x, y, z, t)");
  maxwell_check->add_option("--bx", mc_exprs[3], "B_x(x, y, z, t)");
  maxwell_check->add_option("--by", mc_exprs[4], "B_y(x, y, z, t)");
  maxwell_check->add_option("--bz", mc_exprs[5], "B_z(x, y, z, t)");
  add_common(maxwell_check, g);

  // maxwell-run
  std::string mr_config;
  CLI::App* maxwell_run = app.add_subcommand(
      "maxwell-run", "Run the staggered-grid solver from a config file and emit the CSV series");
  maxwell_run->add_option("config", mr_config, "Solver config file (key = value lines)")
      ->required();
  add_common(maxwell_run, g);

  // horizon-table
  double ht_kappa = 0.5;
  CLI::App* horizon_table = app.add_subcommand(
      "horizon-table",
      "Check the horizon star table and the component Laplacian table against the stack");
  horizon_table->add_option("--kappa", ht_kappa, "Surface gravity (> 0)");
  add_common(horizon_table, g);

  // horizon-scan
  double hs_kappa = 0.5;
  int hs_lmax = 4, hs_lambda_max = 3;
  CLI::App* horizon_scan = app.add_subcommand(
      "horizon-scan", "Scan separable t^lambda * Y_lm candidates for harmonic forms");
  horizon_scan->add_option("--kappa", hs_kappa, "Surface gravity (> 0)");
  horizon_scan->add_option("--l-max", hs_lmax, "Largest harmonic degree l (<= 4)")
      ->check(CLI::Range(0, 4));
  horizon_scan->add_option("--lambda-max", hs_lambda_max, "Largest t-power lambda")
      ->check(CLI::Range(0, 8));
  add_common(horizon_scan, g);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(g, verify_dims);
    if (star_table->parsed())
      return cmd_star_table(g, described_bundle(st_kappa ? 2 : st_n, st_kappa, st_g, st_a));
    if (maxwell_check->parsed()) return cmd_maxwell_check(g, mc_exprs);
    if (maxwell_run->parsed()) return cmd_maxwell_run(g, mr_config);
    if (horizon_table->parsed()) return cmd_horizon_table(g, ht_kappa);
    if (horizon_scan->parsed()) return cmd_horizon_scan(g, hs_kappa, hs_lmax, hs_lambda_max);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;  // unreachable with require_subcommand(1)
}
