#pragma once

#include <string>
#include <vector>

namespace bmoment {

/// One named structural check with the elements that violate it.
struct Condition {
  std::string name;
  bool pass = false;
  std::vector<std::string> offenders;
  std::string detail;
};

struct ValidationReport {
  std::vector<Condition> conditions;
  std::vector<std::string> notes;

  bool ok() const {
    for (const auto& c : conditions)
      if (!c.pass) return false;
    return true;
  }
  const Condition* find(const std::string& name) const {
    for (const auto& c : conditions)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace bmoment
