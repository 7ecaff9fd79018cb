#include "endolift/report.hpp"

namespace endolift {

void CheckResult::merge(const CheckResult& o, const std::string& prefix) {
  invariants[prefix] = o.invariants;
  if (!o.witnesses.empty()) witnesses[prefix] = o.witnesses;
  for (const auto& f : o.failures) failures.push_back(prefix + ": " + f);
}

nlohmann::json CheckResult::to_json() const {
  return {{"id", id},
          {"inputs", inputs},
          {"invariants", invariants},
          {"witnesses", witnesses},
          {"pass", pass()},
          {"failures", failures}};
}

}  // namespace endolift
