#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace acl::report {

inline constexpr const char* kArtifactVersion = "0.1.0";

// One named numeric check: value relation bound, with uncertainty.
struct CheckResult {
  std::string name;
  double value = 0.0;
  double se = 0.0;
  double bound = 0.0;
  std::string relation = ">=";  // how value compares against bound
  bool pass = false;
};

// Machine-readable run report. Deterministic given (command, config, seed);
// wall_time_ms is the one volatile field and is documented as such.
struct Report {
  std::string command;
  nlohmann::json config;
  nlohmann::json constants;
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;
  double wall_time_ms = 0.0;

  bool pass() const;
  void add(CheckResult check);

  nlohmann::json to_json() const;
  // RFC-4180 CSV: header + one row per check, 17 significant digits.
  std::string to_csv() const;
};

std::string format_double(double v);            // 17 significant digits
std::string csv_escape(const std::string& s);   // RFC-4180 quoting

// Merge several reports (parsed JSON) into one combined document.
nlohmann::json merge_reports(const std::vector<nlohmann::json>& reports);

}  // namespace acl::report
