#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace doxa {

/// A failed (or informational) check together with the ids that witness it.
struct Violation {
  std::string check;
  std::vector<std::string> witness;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Outcome of a validator. Only `violations` affect ok(); `warnings` and
/// `flags` carry informational findings such as properness or a-seriality.
struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;
  std::map<std::string, bool> flags;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& check) const;
  const Violation* find(const std::string& check) const;
};

std::string to_text(const ValidationReport& report);
nlohmann::json to_json(const ValidationReport& report);

}  // namespace doxa
