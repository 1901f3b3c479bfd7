#include "acl/report.hpp"

#include <cstdio>

namespace acl::report {

bool Report::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void Report::add(CheckResult check) { checks.push_back(std::move(check)); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

nlohmann::json Report::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"value", c.value},
                           {"stderr", c.se},
                           {"bound", c.bound},
                           {"relation", c.relation},
                           {"pass", c.pass}});
  }
  return nlohmann::json{{"artifact_version", kArtifactVersion},
                        {"command", command},
                        {"config", config},
                        {"constants", constants},
                        {"checks", checks_json},
                        {"pass", pass()},
                        {"seed", seed},
                        {"wall_time_ms", wall_time_ms}};
}

std::string Report::to_csv() const {
  std::string out = "name,value,stderr,bound,relation,pass\r\n";
  for (const auto& c : checks) {
    out += csv_escape(c.name) + ',' + format_double(c.value) + ',' +
           format_double(c.se) + ',' + format_double(c.bound) + ',' +
           csv_escape(c.relation) + ',' + (c.pass ? "true" : "false") + "\r\n";
  }
  return out;
}

nlohmann::json merge_reports(const std::vector<nlohmann::json>& reports) {
  nlohmann::json merged;
  merged["artifact_version"] = kArtifactVersion;
  merged["command"] = "report-merge";
  nlohmann::json items = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& r : reports) {
    items.push_back(r);
    if (r.contains("pass") && r["pass"].is_boolean() && !r["pass"].get<bool>())
      all_pass = false;
  }
  merged["reports"] = items;
  merged["pass"] = all_pass;
  return merged;
}

}  // namespace acl::report
