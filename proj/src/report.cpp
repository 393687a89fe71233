#include "doxa/report.hpp"

#include <sstream>

namespace doxa {

bool ValidationReport::has(const std::string& check) const { return find(check) != nullptr; }

const Violation* ValidationReport::find(const std::string& check) const {
  for (const auto& v : violations)
    if (v.check == check) return &v;
  return nullptr;
}

namespace {

void print(std::ostream& os, const char* tag, const Violation& v) {
  os << tag << ' ' << v.check << " (";
  for (std::size_t i = 0; i < v.witness.size(); ++i) os << (i ? ", " : "") << v.witness[i];
  os << ')';
  if (!v.detail.empty()) os << ": " << v.detail;
  os << '\n';
}

nlohmann::json entry(const Violation& v) {
  nlohmann::json j = {{"check", v.check}, {"witness", v.witness}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

}  // namespace

std::string to_text(const ValidationReport& report) {
  std::ostringstream os;
  os << "ok: " << (report.ok() ? "true" : "false") << '\n';
  for (const auto& [name, value] : report.flags) os << name << ": " << (value ? "true" : "false") << '\n';
  for (const auto& v : report.violations) print(os, "violation", v);
  for (const auto& v : report.warnings) print(os, "warning", v);
  return os.str();
}

nlohmann::json to_json(const ValidationReport& report) {
  nlohmann::json j;
  j["ok"] = report.ok();
  j["flags"] = report.flags;
  j["violations"] = nlohmann::json::array();
  j["warnings"] = nlohmann::json::array();
  for (const auto& v : report.violations) j["violations"].push_back(entry(v));
  for (const auto& v : report.warnings) j["warnings"].push_back(entry(v));
  return j;
}

}  // namespace doxa
