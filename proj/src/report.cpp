#include "carrollian/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace carrollian {

namespace {

std::string format_deviation(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// CSV fields never contain quotes in practice; escape defensively anyway.
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

}  // namespace

bool Report::all_pass() const {
  for (const CaseResult& c : cases)
    if (!c.pass) return false;
  return true;
}

const CaseResult* Report::first_failure() const {
  for (const CaseResult& c : cases)
    if (!c.pass) return &c;
  return nullptr;
}

ReportFormat parse_format(const std::string& name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown report format '" + name + "' (expected text, json or csv)");
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  size_t failed = 0;
  for (const CaseResult& c : report.cases) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.suite << " :: " << c.name
        << "  (max deviation " << format_deviation(c.max_deviation) << ")";
    if (!c.pass) {
      ++failed;
      if (!c.witness.empty()) out << "\n       witness: " << c.witness;
    }
    out << "\n";
  }
  out << report.cases.size() << " case(s), " << failed << " failure(s)\n";
  return out.str();
}

std::string render_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const CaseResult& c : report.cases) {
    rows.push_back({{"suite", c.suite},
                    {"case", c.name},
                    {"status", c.pass ? "pass" : "fail"},
                    {"max_deviation", c.max_deviation},
                    {"witness", c.witness}});
  }
  return rows.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
  std::ostringstream out;
  out << "suite,case,status,max_deviation,witness\n";
  for (const CaseResult& c : report.cases) {
    char dev[40];
    std::snprintf(dev, sizeof dev, "%.17g", c.max_deviation);
    out << csv_field(c.suite) << ',' << csv_field(c.name) << ','
        << (c.pass ? "pass" : "fail") << ',' << dev << ',' << csv_field(c.witness) << "\n";
  }
  return out.str();
}

std::string render(const Report& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Text: return render_text(report);
    case ReportFormat::Json: return render_json(report);
    default: return render_csv(report);
  }
}

}  // namespace carrollian
