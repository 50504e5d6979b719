#pragma once

#include <string>
#include <vector>

namespace carrollian {

// One verification case: an invariant checked over sampled points. The
// witness is filled on failure with the worst sample point (or a short
// explanation), so every failing report names what broke and where.
struct CaseResult {
  std::string suite;
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;
  std::string witness;
};

struct Report {
  std::vector<CaseResult> cases;

  bool all_pass() const;
  const CaseResult* first_failure() const;  // nullptr when everything passed
};

enum class ReportFormat { Text, Json, Csv };

// Accepts "text", "json", "csv"; throws std::invalid_argument otherwise.
ReportFormat parse_format(const std::string& name);

// Renderers are deterministic: same report, same bytes.
// JSON is an array of {"suite", "case", "status", "max_deviation", "witness"}.
std::string render_text(const Report& report);
std::string render_json(const Report& report);
std::string render_csv(const Report& report);
std::string render(const Report& report, ReportFormat format);

}  // namespace carrollian
