#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace geomtv {

/// Evaluated right-hand side of a theorem bound next to the exactly
/// computed left-hand side. `hard` marks rows whose dominance is asserted
/// (paper-explicit constants); Monte Carlo rows stay soft and carry a
/// standard error instead.
struct BoundReport {
  std::string theorem_tag;
  std::vector<std::pair<std::string, double>> params;
  std::string lhs_metric = "tv";  // "tv" | "local"
  double lhs_value = 0.0;
  double lhs_slack = 0.0;
  double rhs_value = 0.0;
  double rhs_std_error = 0.0;
  std::optional<double> empirical_c;
  bool hard = false;
  bool pass = true;
};

// RFC-4180 CSV with a mandatory header row:
//   theorem,<param names...>,lhs_metric,lhs,slack,rhs,stderr,empirical_c,status
// All rows must share one parameter schema. Floats are printed with
// shortest round-trip formatting so identical runs are byte-identical.
void write_reports_csv(const std::vector<BoundReport>& reports,
                       std::ostream& os);

std::string report_to_json(const BoundReport& report);

// Human-readable PASS/FAIL/soft line for terminal summaries.
std::string report_summary_line(const BoundReport& report);

}  // namespace geomtv
