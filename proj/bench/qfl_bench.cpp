#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "qfl/force.hpp"
#include "qfl/parallel.hpp"
#include "qfl/stability.hpp"

using namespace qfl;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-22s serial %9.4f s   parallel %9.4f s   speedup %5.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qfl kernel timings, serial against parallel"};
  int repeats = 3;
  int grid = 6;
  app.add_option("--repeats", repeats, "best-of count");
  app.add_option("--grid", grid, "diagram grid size per axis");
  CLI11_PARSE(app, argc, argv);

  std::printf("workers: %d\n", worker_count());
  const ShearConfig cfg = ShearConfig::symmetric(0.19, 0.1, 0.1);

  const auto scan = [&](Execution e) {
    ScanOptions o;
    o.points = 4000;
    o.exec = e;
    return best_of(repeats, [&] { max_growth(cfg, o); });
  };
  report("growth-rate scan", scan(Execution::Serial), scan(Execution::Parallel));

  std::vector<double> vs, ls;
  for (int i = 0; i < grid; ++i) {
    vs.push_back(0.06 + 0.1 * i / std::max(grid - 1, 1));
    ls.push_back(0.06 + 0.2 * i / std::max(grid - 1, 1));
  }
  const auto diagram = [&](Execution e) {
    CriticalOptions co;
    co.scan.exec = Execution::Serial;
    return best_of(repeats, [&] { stability_diagram(vs, ls, co, e); });
  };
  report("stability diagram", diagram(Execution::Serial), diagram(Execution::Parallel));

  const auto force = [&](Execution e) {
    ForceOptions fo;
    fo.exec = e;
    fo.scan.exec = e;
    return best_of(repeats, [&] { total_force(cfg, fo); });
  };
  report("total force", force(Execution::Serial), force(Execution::Parallel));
  return 0;
}
