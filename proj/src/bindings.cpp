// Python bindings: a string-first surface over the exterior-calculus stack.
// Forms and scalars cross the boundary as expression text in the chart
// grammar; bundles are opaque handles.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "carrollian/bundle.hpp"
#include "carrollian/form.hpp"
#include "carrollian/grid.hpp"
#include "carrollian/hodge.hpp"
#include "carrollian/horizon.hpp"
#include "carrollian/maxwell.hpp"
#include "carrollian/parse.hpp"
#include "carrollian/report.hpp"
#include "carrollian/verify.hpp"

namespace py = pybind11;
using namespace carrollian;

namespace {

CarrollBundle bundle_from_strings(int n, const std::vector<std::string>& g_entries,
                                  const std::vector<std::string>& a_entries) {
  auto parse_entry = [n](const std::string& text) {
    Expr e = parse_scalar(text, n);
    if (e.uses_fibre())
      throw std::invalid_argument("bundle data must not depend on the fibre coordinate t");
    return e;
  };
  std::vector<std::vector<Expr>> g(static_cast<size_t>(n),
                                   std::vector<Expr>(static_cast<size_t>(n), Expr::constant(0.0)));
  if (g_entries.size() == static_cast<size_t>(n)) {
    for (int i = 0; i < n; ++i)
      g[static_cast<size_t>(i)][static_cast<size_t>(i)] = parse_entry(g_entries[static_cast<size_t>(i)]);
  } else if (g_entries.size() == static_cast<size_t>(n) * static_cast<size_t>(n)) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            parse_entry(g_entries[static_cast<size_t>(i * n + j)]);
  } else {
    throw std::invalid_argument("metric needs n (diagonal) or n*n (row-major) entries");
  }
  std::vector<Expr> a(static_cast<size_t>(n), Expr::constant(0.0));
  if (!a_entries.empty()) {
    if (a_entries.size() != static_cast<size_t>(n))
      throw std::invalid_argument("connection needs exactly n entries");
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = parse_entry(a_entries[static_cast<size_t>(i)]);
  }
  return CarrollBundle(n, std::move(g), std::move(a));
}

using FormOp = Form (*)(const Form&, const CarrollBundle&);

std::string apply_op(FormOp op, const std::string& form_text, const CarrollBundle& b) {
  return op(parse_form(form_text, b.n), b).str();
}

py::dict residual_dict(const MaxwellResidual& r) {
  py::dict out;
  out["max_form_residual"] = r.max_form_residual;
  out["max_vector_residual"] = r.max_vector_residual;
  out["dictionary_mismatch"] = r.dictionary_mismatch;
  out["equivalent"] = r.equivalent;
  return out;
}

py::list table_list(const TableReport& r) {
  py::list rows;
  for (const TableEntry& e : r.entries) {
    py::dict row;
    row["entry"] = e.entry;
    row["expected"] = e.expected;
    row["computed"] = e.computed;
    row["max_deviation"] = e.max_deviation;
    row["pass"] = e.pass;
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exterior calculus, Hodge theory and electromagnetism on Carrollian R^x-bundles";

  py::class_<CarrollBundle>(m, "Bundle")
      .def_readonly("n", &CarrollBundle::n)
      .def("__repr__", [](const CarrollBundle& b) {
        return "<Bundle n=" + std::to_string(b.n) + ">";
      });

  m.def("flat_bundle", &CarrollBundle::flat, py::arg("n"),
        "Flat metric, zero connection, n base dimensions.");
  m.def("horizon_bundle", &make_horizon_bundle, py::arg("kappa"),
        "Two-sphere horizon chart at surface gravity kappa.");
  m.def("custom_bundle", &bundle_from_strings, py::arg("n"), py::arg("g"),
        py::arg("connection") = std::vector<std::string>{},
        "Bundle from metric entries (n diagonal or n*n row-major) and an "
        "optional connection, all t-independent expression strings.");

  m.def("eval_scalar",
        [](const std::string& text, const std::vector<double>& x, double t) {
          return eval(parse_scalar(text, static_cast<int>(x.size())), Point(x, t));
        },
        py::arg("text"), py::arg("x"), py::arg("t") = 1.0,
        "Evaluate a scalar expression at base point x, fibre coordinate t.");
  m.def("partial_base",
        [](const std::string& text, int n, int axis) {
          return to_string(partial(parse_scalar(text, n), axis));
        },
        py::arg("text"), py::arg("n"), py::arg("axis"),
        "Symbolic base-coordinate partial derivative (axis is 0-based).");
  m.def("partial_fibre",
        [](const std::string& text, int n) {
          return to_string(partial_fibre(parse_scalar(text, n)));
        },
        py::arg("text"), py::arg("n"), "Symbolic fibre derivative d/dt.");

  m.def("d",
        [](const std::string& form, const CarrollBundle& b) {
          return apply_op(exterior_derivative, form, b);
        },
        py::arg("form"), py::arg("bundle"), "Exterior derivative.");
  m.def("star",
        [](const std::string& form, const CarrollBundle& b) {
          return apply_op(hodge_star, form, b);
        },
        py::arg("form"), py::arg("bundle"), "Hodge star of the mixed-signature metric.");
  m.def("delta",
        [](const std::string& form, const CarrollBundle& b) {
          return apply_op(codifferential, form, b);
        },
        py::arg("form"), py::arg("bundle"), "Codifferential.");
  m.def("laplacian",
        [](const std::string& form, const CarrollBundle& b) {
          return apply_op(laplacian, form, b);
        },
        py::arg("form"), py::arg("bundle"), "Hodge-de Rham Laplacian d delta + delta d.");
  m.def("lie_euler",
        [](const std::string& form, const CarrollBundle& b) {
          return apply_op(lie_euler, form, b);
        },
        py::arg("form"), py::arg("bundle"), "Lie derivative along the Euler field t d/dt.");
  m.def("wedge",
        [](const std::string& a, const std::string& b, int n) {
          return wedge(parse_form(a, n), parse_form(b, n)).str();
        },
        py::arg("a"), py::arg("b"), py::arg("n"), "Wedge product in n base dimensions.");
  m.def("weight",
        [](const std::string& form, const CarrollBundle& b) {
          return weight_of(parse_form(form, b.n), b).str();
        },
        py::arg("form"), py::arg("bundle"),
        "Homogeneity weight under the Euler field, as text.");
  m.def("star_square_sign", &star_square_sign, py::arg("degree"), py::arg("n"),
        "Sign of star applied twice on a degree-k form over an n-dimensional base.");

  m.def("verify",
        [](const std::vector<int>& dims, uint64_t seed, int samples, double tolerance,
           const std::string& format) {
          VerifyOptions opts;
          if (!dims.empty()) opts.dims = dims;
          opts.seed = seed;
          opts.samples = samples;
          opts.tolerance = tolerance;
          Report r = run_verify(opts);
          return py::make_tuple(r.all_pass(), render(r, parse_format(format)));
        },
        py::arg("dims") = std::vector<int>{}, py::arg("seed") = 1, py::arg("samples") = 40,
        py::arg("tolerance") = 1e-9, py::arg("format") = "text",
        "Run the property suite; returns (all_pass, rendered_report).");

  m.def("maxwell_residual",
        [](const std::vector<std::string>& e, const std::vector<std::string>& b, int samples,
           uint64_t seed) {
          if (e.size() != 3 || b.size() != 3)
            throw std::invalid_argument("expected three electric and three magnetic components");
          EMFieldSymbolic f;
          for (size_t i = 0; i < 3; ++i) {
            f.E[i] = parse_scalar(e[i], 3);
            f.B[i] = parse_scalar(b[i], 3);
          }
          return residual_dict(maxwell_residual(f, samples, seed));
        },
        py::arg("e"), py::arg("b"), py::arg("samples") = 100, py::arg("seed") = 1,
        "Field-strength and vector-calculus residuals of a symbolic field pair.");
  m.def("plane_wave_residual",
        [](const std::array<double, 3>& k, const std::array<double, 3>& e0) {
          return residual_dict(maxwell_residual(plane_wave(k, e0)));
        },
        py::arg("k"), py::arg("e0"),
        "Residuals of the exact logarithmic-time plane wave.");

  m.def("run_simulation",
        [](const std::string& config_text) {
          SimConfig cfg = SimConfig::from_string(config_text);
          SimResult r = run_simulation(cfg);
          double e0 = r.rows.empty() ? 0.0 : r.rows.front().energy;
          double drift = 0.0;
          for (const SeriesRow& row : r.rows)
            drift = std::max(drift, e0 == 0.0 ? 0.0 : std::abs(row.energy - e0) / e0);
          std::string csv = csv_header() + "\n";
          for (const SeriesRow& row : r.rows) csv += csv_row(row) + "\n";
          py::dict out;
          out["csv"] = csv;
          out["rows"] = static_cast<int>(r.rows.size());
          out["relative_energy_drift"] = drift;
          py::list dumps;
          for (const std::string& path : r.dump_files) dumps.append(path);
          out["dump_files"] = dumps;
          return out;
        },
        py::arg("config_text"),
        "Run the staggered-grid solver from configuration text; returns the "
        "report series as CSV plus the relative energy drift.");

  m.def("horizon_star_table",
        [](double kappa, double tol) { return table_list(verify_hodge_table(kappa, tol)); },
        py::arg("kappa"), py::arg("tol") = 1e-10,
        "The eight orthonormal-coframe star entries, re-verified numerically.");
  m.def("horizon_laplacian_table",
        [](double kappa, double tol, int per_degree, uint64_t seed) {
          return table_list(laplacian_table_suite(kappa, tol, per_degree, seed));
        },
        py::arg("kappa"), py::arg("tol") = 1e-8, py::arg("per_degree") = 20,
        py::arg("seed") = 1,
        "Laplacian component table cross-checked against the operator stack.");
  m.def("horizon_scan",
        [](double kappa, int l_max, int lambda_max, double tol) {
          py::list hits;
          for (const ScanHit& h : harmonic_scan(kappa, l_max, lambda_max, tol)) {
            py::dict row;
            row["degree"] = h.degree;
            row["slot"] = h.slot;
            row["l"] = h.l;
            row["m"] = h.m;
            row["lambda"] = h.lambda;
            row["stack_residual"] = h.stack_residual;
            row["table_residual"] = h.table_residual;
            row["regular"] = h.regular;
            hits.append(row);
          }
          return hits;
        },
        py::arg("kappa"), py::arg("l_max") = 4, py::arg("lambda_max") = 3,
        py::arg("tol") = 1e-8,
        "Separable harmonic-form scan over t^lambda * Y_lm component slots.");
  m.def("extend_to_zero",
        [](const std::string& form, double kappa) {
          ExtensionResult r = extend_to_zero(parse_form(form, 2), kappa);
          py::dict out;
          out["accepted"] = r.accepted;
          out["finite_limit"] = r.finite_limit;
          out["refusal"] = r.refusal;
          out["laplacian"] = r.laplacian.str();
          out["limit"] = r.limit.str();
          return out;
        },
        py::arg("form"), py::arg("kappa"),
        "Extend the Laplacian of a regular form to the zero section t = 0.");
}
