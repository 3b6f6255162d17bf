#include "geomtv/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "geomtv/pmf.hpp"

namespace geomtv {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string status_of(const BoundReport& r) {
  if (!r.hard) return "soft";
  return r.pass ? "PASS" : "FAIL";
}

}  // namespace

void write_reports_csv(const std::vector<BoundReport>& reports,
                       std::ostream& os) {
  os << "theorem";
  if (!reports.empty())
    for (const auto& [name, _] : reports.front().params) os << "," << name;
  os << ",lhs_metric,lhs,slack,rhs,stderr,empirical_c,status\r\n";
  for (const BoundReport& r : reports) {
    if (!reports.empty() && r.params.size() != reports.front().params.size())
      throw std::invalid_argument("report rows have mixed parameter schemas");
    os << csv_escape(r.theorem_tag);
    for (const auto& [_, value] : r.params) os << "," << format_double(value);
    os << "," << r.lhs_metric << "," << format_double(r.lhs_value) << ","
       << format_double(r.lhs_slack) << "," << format_double(r.rhs_value)
       << "," << format_double(r.rhs_std_error) << ","
       << (r.empirical_c ? format_double(*r.empirical_c) : std::string())
       << "," << status_of(r) << "\r\n";
  }
}

std::string report_to_json(const BoundReport& r) {
  nlohmann::json j;
  j["theorem"] = r.theorem_tag;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  j["params"] = params;
  j["lhs_metric"] = r.lhs_metric;
  j["lhs"] = r.lhs_value;
  j["slack"] = r.lhs_slack;
  j["rhs"] = r.rhs_value;
  j["stderr"] = r.rhs_std_error;
  if (r.empirical_c) j["empirical_c"] = *r.empirical_c;
  j["status"] = status_of(r);
  return j.dump();
}

std::string report_summary_line(const BoundReport& r) {
  std::ostringstream os;
  os << (r.hard ? (r.pass ? "[PASS] " : "[FAIL] ") : "[soft] ");
  os << r.theorem_tag;
  for (const auto& [name, value] : r.params)
    os << " " << name << "=" << format_double(value);
  os << " | " << r.lhs_metric << " lhs=" << format_double(r.lhs_value);
  if (r.lhs_slack > 0.0) os << "(+" << format_double(r.lhs_slack) << ")";
  os << " rhs=" << format_double(r.rhs_value);
  if (r.rhs_std_error > 0.0)
    os << " (se " << format_double(r.rhs_std_error) << ")";
  if (r.empirical_c) os << " C~" << format_double(*r.empirical_c);
  return os.str();
}

}  // namespace geomtv
