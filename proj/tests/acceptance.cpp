// Runs the acceptance criteria and prints one PASS/FAIL line each.
//   acceptance [--only N] [--json FILE]
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qfl/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  std::string json_path;
  app.add_option("--only", only, "run a single criterion (1-14)");
  app.add_option("--json", json_path, "write the full report as JSON");
  CLI11_PARSE(app, argc, argv);

  nlohmann::json report = nlohmann::json::array();
  int failed = 0;
  for (int n = 1; n <= qfl::acceptance_count(); ++n) {
    if (only != 0 && n != only) continue;
    const auto r = qfl::run_acceptance(n);
    std::printf("AC%-2d %s  %-60s %s (%.1fs)\n", n, r.passed ? "PASS" : "FAIL", r.title.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
    report.push_back(qfl::to_json(r));
    if (!r.passed) ++failed;
  }
  if (!json_path.empty()) std::ofstream(json_path) << report.dump(2) << '\n';
  return failed == 0 ? 0 : 1;
}
