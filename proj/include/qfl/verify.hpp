#ifndef QFL_VERIFY_HPP
#define QFL_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfl/parallel.hpp"

namespace qfl {

struct CheckResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  nlohmann::json metrics = nlohmann::json::object();  // measured values and tolerances
  double seconds = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  Execution exec = Execution::Parallel;
};

/// Acceptance criteria, numbered 1..14.
int acceptance_count();
CheckResult run_acceptance(int number, const VerifyOptions& opts = {});

/// Named identity and oracle suites for `qfl verify`.
std::vector<std::string> suite_names();
CheckResult run_suite(const std::string& name, const VerifyOptions& opts = {});

nlohmann::json to_json(const CheckResult& r);

}  // namespace qfl

#endif
