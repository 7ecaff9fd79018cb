#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace endolift {

/// Outcome of one check. Failures are human-readable lines; the
/// check passes iff there are none.
struct CheckResult {
  std::string id;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json invariants = nlohmann::json::object();
  nlohmann::json witnesses = nlohmann::json::object();
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void merge(const CheckResult& o, const std::string& prefix);
  nlohmann::json to_json() const;
};

}  // namespace endolift
