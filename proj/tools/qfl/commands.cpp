#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include "output.hpp"
#include "qfl/error.hpp"
#include "qfl/force.hpp"
#include "qfl/material.hpp"
#include "qfl/parallel.hpp"
#include "qfl/scattering.hpp"
#include "qfl/stability.hpp"
#include "qfl/units.hpp"
#include "qfl/verify.hpp"

namespace qfl::tool {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1.0);
  }
  return out;
}

template <typename T>
T value_or_set(std::optional<T>& slot, T fallback) {
  if (!slot) slot = fallback;
  return *slot;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError(what);
}

ShearConfig shear_config(RunConfig& c, double gamma_default, double v_default, double gap_default) {
  const double gamma = value_or_set(c.gamma, gamma_default);
  const double gap = value_or_set(c.L, gap_default);
  ShearConfig cfg;
  if (c.v_upper || c.v_lower) {
    require(!c.v, "--v cannot be combined with --v-upper/--v-lower");
    cfg = ShearConfig::symmetric(gamma, 0.0, gap);
    cfg.v_upper = value_or_set(c.v_upper, 0.0);
    cfg.v_lower = value_or_set(c.v_lower, 0.0);
  } else {
    cfg = ShearConfig::symmetric(gamma, value_or_set(c.v, v_default), gap);
  }
  cfg.validate();
  return cfg;
}

ScanOptions scan_options(const RunConfig& c) {
  require(c.scan_points >= 8, "scan_points must be at least 8");
  ScanOptions s;
  s.points = c.scan_points;
  if (c.k_max) s.kx_max = *c.k_max;
  return s;
}

Rule parse_rule(const std::string& s) {
  if (s == "gk15") return Rule::GK15;
  if (s == "gk21") return Rule::GK21;
  throw UsageError("unknown quadrature rule '" + s + "' (expected gk15 or gk21)");
}

IntegrandForm parse_form(const std::string& s) {
  if (s == "reflection-product") return IntegrandForm::ReflectionProduct;
  if (s == "coefficient") return IntegrandForm::Coefficient;
  throw UsageError("unknown integrand form '" + s + "' (expected reflection-product or coefficient)");
}

std::string tag(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

void write_artifact(const std::string& path, const std::string& contents, json& artifacts) {
  write_atomic(path, contents);
  artifacts.push_back(path);
  log_event("info", "artifact_written", {{"path", path}, {"bytes", contents.size()}});
}

void finish(const std::string& command, const RunConfig& c, Clock::time_point t0, json artifacts,
            json extra = json::object()) {
  extra["artifacts"] = std::move(artifacts);
  const double wall = seconds_since(t0);
  write_atomic(c.out + ".json", sidecar(command, json(c), wall, extra).dump(2) + "\n");
  log_event("info", "finished", {{"command", command}, {"wall_seconds", wall}});
}

void log_start(const std::string& command, const RunConfig& c) {
  log_event("info", "started",
            {{"command", command}, {"workers", worker_count()}, {"out", c.out}});
}

}  // namespace

int cmd_roots(RunConfig c) {
  const auto t0 = Clock::now();
  log_start("roots", c);
  const double kx_min = value_or_set(c.kx_min, 0.5);
  const double kx_max = value_or_set(c.kx_max, 40.0);
  require(kx_min > 0.0 && kx_max > kx_min, "roots needs 0 < kx_min < kx_max");
  require(c.steps >= 2, "roots needs steps >= 2");
  require(c.ky == 0.0, "root loci are traced at ky = 0");

  std::vector<std::pair<std::string, double>> regimes;
  ShearConfig base = shear_config(c, 0.0, 0.1, 0.1);
  if (!c.gammas.empty()) {
    for (double g : c.gammas) regimes.emplace_back("gamma_" + tag(g), g);
  } else if (c.gamma && *c.gamma != 0.0) {
    regimes.emplace_back("custom", *c.gamma);
  } else if (base.is_symmetric() && base.relative_velocity() > 0.0) {
    CriticalOptions co;
    co.scan = scan_options(c);
    const CriticalValue cr = critical_gamma(base.relative_velocity(), base.gap(), co);
    log_event("info", "critical_damping", {{"gamma_cr", cr.value}});
    regimes = {{"stable", 1.5 * cr.value}, {"critical", cr.value}, {"unstable", 0.5 * cr.value}};
    c.gammas = {regimes[0].second, regimes[1].second, regimes[2].second};
  } else {
    regimes.emplace_back("default", 0.1);
    c.gammas = {0.1};
  }

  json artifacts = json::array();
  json regime_meta = json::array();
  for (const auto& [name, gamma] : regimes) {
    ShearConfig cfg = base;
    cfg.drude.gamma = gamma;
    cfg.validate();
    const auto locus = root_locus(cfg, kx_min, kx_max, c.steps);
    CsvTable table({"kx [k_p]", "branch", "Re_omega [omega_p]", "Im_omega [omega_p]",
                    "residual", "status"});
    double max_growth = -INFINITY;
    for (const auto& p : locus) {
      for (int i = 0; i < 4; ++i) {
        const cplx w = p.roots.roots[static_cast<std::size_t>(i)];
        const bool spurious = p.roots.spurious[static_cast<std::size_t>(i)];
        if (!spurious) max_growth = std::max(max_growth, w.imag());
        table.add_row({p.roots.kx, static_cast<long>(p.branch[static_cast<std::size_t>(i)]),
                       w.real(), w.imag(), p.roots.residuals[static_cast<std::size_t>(i)],
                       std::string(spurious ? "spurious" : "ok")});
      }
    }
    write_artifact(c.out + "_" + name + ".csv", table.str(), artifacts);
    regime_meta.push_back({{"name", name}, {"gamma", gamma}, {"max_imag", max_growth}});
  }
  finish("roots", c, t0, artifacts, {{"regimes", regime_meta}});
  return kOk;
}

namespace {

struct CellKey {
  double v, gap;
  bool operator<(const CellKey& o) const { return v != o.v ? v < o.v : gap < o.gap; }
};

class Journal {
 public:
  Journal(std::string path, json fingerprint, bool resume)
      : path_(std::move(path)), fingerprint_(std::move(fingerprint)) {
    if (const auto dir = std::filesystem::path(path_).parent_path(); !dir.empty()) {
      std::filesystem::create_directories(dir);
    }
    if (resume) load();
    if (!valid_) {
      std::ofstream out(path_, std::ios::trunc);
      out << json{{"fingerprint", fingerprint_}}.dump() << '\n';
    }
    out_.open(path_, std::ios::app);
    if (!out_) throw std::runtime_error("cannot open journal '" + path_ + "'");
  }

  const std::map<CellKey, DiagramCell>& cells() const { return cells_; }

  void record(const CellKey& key, const DiagramCell& cell) {
    json line = {{"v", key.v},
                 {"L", key.gap},
                 {"gamma_cr", cell.gamma_cr},
                 {"estimate", cell.estimate},
                 {"status", to_string(cell.status)},
                 {"message", cell.message}};
    std::lock_guard lock(mutex_);
    out_ << line.dump() << '\n' << std::flush;
  }

 private:
  void load() {
    std::ifstream in(path_);
    if (!in) return;
    std::string line;
    if (!std::getline(in, line)) return;
    try {
      if (json::parse(line).at("fingerprint") != fingerprint_) {
        log_event("warning", "journal_discarded", {{"path", path_}, {"reason", "config changed"}});
        return;
      }
    } catch (const json::exception&) {
      return;
    }
    valid_ = true;
    while (std::getline(in, line)) {
      try {
        const json j = json::parse(line);
        DiagramCell cell;
        cell.gamma_cr = j.at("gamma_cr").get<double>();
        cell.estimate = j.at("estimate").get<double>();
        const std::string s = j.at("status").get<std::string>();
        cell.status = s == to_string(CellStatus::Ok)             ? CellStatus::Ok
                      : s == to_string(CellStatus::NoSignChange) ? CellStatus::NoSignChange
                                                                 : CellStatus::Failed;
        cell.message = j.at("message").get<std::string>();
        cells_[{j.at("v").get<double>(), j.at("L").get<double>()}] = cell;
      } catch (const json::exception&) {
        // a torn final line from an interrupted run
      }
    }
  }

  std::string path_;
  json fingerprint_;
  bool valid_ = false;
  std::map<CellKey, DiagramCell> cells_;
  std::ofstream out_;
  std::mutex mutex_;
};

std::vector<Cell> diagram_row(double v, double gap, const DiagramCell& cell) {
  const double value = cell.status == CellStatus::Ok ? cell.gamma_cr : std::nan("");
  return {gap, v, value, cell.estimate, std::string(to_string(cell.status)), cell.message};
}

}  // namespace

int cmd_diagram(RunConfig c) {
  const auto t0 = Clock::now();
  log_start("diagram", c);
  require(c.n_v >= 1 && c.n_L >= 1, "diagram needs n_v >= 1 and n_L >= 1");
  require(c.v_min > 0.0 && c.v_max >= c.v_min && c.v_max < 1.0,
          "diagram needs 0 < v_min <= v_max < 1");
  require(c.L_min > 0.0 && c.L_max >= c.L_min, "diagram needs 0 < L_min <= L_max");
  const double cut_v = value_or_set(c.cut_v, 0.1);
  const double cut_L = value_or_set(c.cut_L, 0.1);
  require(cut_v > 0.0 && cut_v < 1.0 && cut_L > 0.0, "diagram cuts need 0 < cut_v < 1, cut_L > 0");

  const auto v_axis = linspace(c.v_min, c.v_max, c.n_v);
  const auto gap_axis = linspace(c.L_min, c.L_max, c.n_L);

  CriticalOptions co;
  co.tol = c.tol;
  co.scan = scan_options(c);
  co.scan.exec = Execution::Serial;

  std::vector<CellKey> wanted;
  for (double gap : gap_axis) {
    for (double v : v_axis) wanted.push_back({v, gap});
  }
  for (double v : v_axis) wanted.push_back({v, cut_L});
  for (double gap : gap_axis) wanted.push_back({cut_v, gap});

  const json fingerprint = {{"version", kToolVersion},
                            {"tol", c.tol},
                            {"scan_points", c.scan_points},
                            {"k_max", c.k_max ? json(*c.k_max) : json(nullptr)}};
  Journal journal(c.out + ".journal", fingerprint, c.resume);
  std::map<CellKey, DiagramCell> cells = journal.cells();
  std::vector<CellKey> pending;
  for (const auto& k : wanted) {
    if (!cells.count(k) && std::find_if(pending.begin(), pending.end(), [&](const CellKey& p) {
          return !(p < k) && !(k < p);
        }) == pending.end()) {
      pending.push_back(k);
    }
  }
  log_event("info", "diagram_plan",
            {{"cells", wanted.size()}, {"from_journal", cells.size()}, {"pending", pending.size()}});

  std::vector<DiagramCell> computed(pending.size());
  for_each_index(pending.size(), Execution::Parallel, [&](std::size_t i) {
    computed[i] = diagram_cell(pending[i].v, pending[i].gap, co);
    journal.record(pending[i], computed[i]);
  });
  for (std::size_t i = 0; i < pending.size(); ++i) cells[pending[i]] = computed[i];

  const std::vector<std::string> header = {"L [1/k_p]",  "v [c]",  "gamma_cr [omega_p]",
                                           "estimate [omega_p]", "status", "message"};
  CsvTable matrix(header);
  std::size_t failed = 0;
  std::vector<std::vector<double>> heat(gap_axis.size(), std::vector<double>(v_axis.size()));
  for (std::size_t iL = 0; iL < gap_axis.size(); ++iL) {
    for (std::size_t iv = 0; iv < v_axis.size(); ++iv) {
      const DiagramCell& cell = cells.at({v_axis[iv], gap_axis[iL]});
      if (cell.status == CellStatus::Failed) ++failed;
      auto row = diagram_row(v_axis[iv], gap_axis[iL], cell);
      heat[iL][iv] = std::get<double>(row[2]);
      matrix.add_row(std::move(row));
    }
  }
  CsvTable cut_along_v(header);
  for (double v : v_axis) cut_along_v.add_row(diagram_row(v, cut_L, cells.at({v, cut_L})));
  CsvTable cut_along_L(header);
  for (double gap : gap_axis) cut_along_L.add_row(diagram_row(cut_v, gap, cells.at({cut_v, gap})));

  json artifacts = json::array();
  write_artifact(c.out + ".csv", matrix.str(), artifacts);
  write_artifact(c.out + "_cut_v.csv", cut_along_v.str(), artifacts);
  write_artifact(c.out + "_cut_L.csv", cut_along_L.str(), artifacts);
  if (c.svg) {
    Heatmap h{v_axis, gap_axis, heat, "v [c]", "L [1/k_p]", "critical damping gamma_cr [omega_p]",
              false, {}};
    write_artifact(c.out + ".svg", render_svg(h), artifacts);
  }
  if (failed) log_event("warning", "cells_failed", {{"count", failed}});
  finish("diagram", c, t0, artifacts, {{"failed_cells", failed}});
  return kOk;
}

int cmd_spectrum(RunConfig c) {
  const auto t0 = Clock::now();
  log_start("spectrum", c);
  const ShearConfig cfg = shear_config(c, 0.19, 0.1, 0.1);
  const double kx_min = value_or_set(c.kx_min, -40.0);
  const double kx_max = value_or_set(c.kx_max, 40.0);
  require(kx_max > kx_min, "spectrum needs kx_min < kx_max");
  require(c.omega_max > c.omega_min && c.omega_min >= 0.0, "spectrum needs 0 <= omega_min < omega_max");
  require(c.n_omega >= 2 && c.n_kx >= 2, "spectrum needs n_omega >= 2 and n_kx >= 2");

  const auto grid = spectral_density_grid(cfg, c.omega_min, c.omega_max, kx_min, kx_max, c.n_omega,
                                          c.n_kx, c.ky, parse_form(c.form));
  CsvTable table({"omega [omega_p]", "kx [k_p]", "density [hbar k_p]", "status"});
  for (std::size_t i = 0; i < grid.omega_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.kx_axis.size(); ++j) {
      const double w = grid.omega_axis[i], kx = grid.kx_axis[j], d = grid.values[i][j];
      const bool window =
          in_gain_window(cfg, Side::Upper, w, kx) || in_gain_window(cfg, Side::Lower, w, kx);
      const char* status = !std::isfinite(d) ? "failed" : window ? "ok" : "outside-window";
      table.add_row({w, kx, d, std::string(status)});
    }
  }
  json artifacts = json::array();
  write_artifact(c.out + ".csv", table.str(), artifacts);
  if (c.svg) {
    Heatmap h{grid.kx_axis, grid.omega_axis, grid.values, "kx [k_p]", "omega [omega_p]",
              "force spectral density", true, {}};
    const std::vector<double> xs = {kx_min, kx_max};
    for (Side side : {Side::Upper, Side::Lower}) {
      const double vs = cfg.velocity(side);
      const auto line = [&](double offset) {
        return std::vector<double>{offset + kx_min * vs, offset + kx_max * vs};
      };
      h.overlays.push_back({xs, line(0.0), "black", std::string("window edge ") + to_string(side)});
      h.overlays.push_back({xs, line(kOmegaSp), "#555555", std::string("+omega_sp, ") + to_string(side)});
      h.overlays.push_back({xs, line(-kOmegaSp), "#555555", std::string("-omega_sp, ") + to_string(side)});
    }
    write_artifact(c.out + ".svg", render_svg(h), artifacts);
  }
  finish("spectrum", c, t0, artifacts);
  return kOk;
}

int cmd_force(RunConfig c) {
  const auto t0 = Clock::now();
  log_start("force", c);
  require(!c.parameter.empty(), "force needs --parameter gamma|velocity|gap");
  require(!c.v_upper && !c.v_lower, "force sweeps use the symmetric setup; use --v");
  const Parameter param = parameter_from_string(c.parameter);
  c.parameter = to_string(param);

  std::optional<double>* swept = nullptr;
  std::vector<double> defaults;
  switch (param) {
    case Parameter::Gamma:
      swept = &c.gamma;
      defaults = linspace(0.185, 0.40, 12);
      break;
    case Parameter::Velocity:
      swept = &c.v;
      defaults = linspace(0.02, 0.12, 11);
      break;
    case Parameter::Gap:
      swept = &c.L;
      defaults = linspace(0.05, 0.3, 11);
      break;
  }
  if (c.values.empty()) c.values = *swept ? std::vector<double>{**swept} : defaults;
  swept->reset();
  const double gamma = param == Parameter::Gamma ? 0.0 : value_or_set(c.gamma, 0.18);
  const double v = param == Parameter::Velocity ? 0.0 : value_or_set(c.v, 0.1);
  const double gap = param == Parameter::Gap ? 1.0 : value_or_set(c.L, 0.1);
  const ShearConfig tmpl = ShearConfig::symmetric(gamma, v, gap);

  ForceOptions fo;
  fo.rel_tol = c.tol;
  fo.rule = parse_rule(c.rule);
  fo.form = parse_form(c.form);
  fo.scan = scan_options(c);
  if (c.k_max) fo.k_max = *c.k_max;

  const char* unit = param == Parameter::Gamma ? "gamma [omega_p]"
                     : param == Parameter::Velocity ? "v [c]"
                                                    : "L [1/k_p]";
  CsvTable table({unit, "F [hbar omega_p k_p^3]", "abs_error [hbar omega_p k_p^3]", "evaluations",
                  "regime", "near_critical", "status", "message"});
  const auto results = force_sweep(tmpl, param, c.values, fo);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const ForceResult& r = results[i];
    std::string status = "ok";
    if (r.regime == Regime::UnstableRejected) {
      status = "unstable-rejected";
    } else if (!r.message.empty()) {
      status = "failed";
    }
    std::string message = r.message;
    for (const auto& w : r.warnings) message += (message.empty() ? "" : "; ") + w;
    table.add_row({c.values[i], r.value, r.abs_error_estimate, r.integrand_evaluations,
                   std::string(to_string(r.regime)), std::string(r.near_critical ? "yes" : "no"),
                   status, message});
    log_event("info", "force_point",
              {{"parameter", c.parameter}, {"value", c.values[i]}, {"status", status},
               {"F", std::isfinite(r.value) ? json(r.value) : json(nullptr)}});
  }
  json artifacts = json::array();
  write_artifact(c.out + ".csv", table.str(), artifacts);
  finish("force", c, t0, artifacts);
  return kOk;
}

int cmd_critical(RunConfig c) {
  const auto t0 = Clock::now();
  log_start("critical", c);
  if (c.parameter.empty()) c.parameter = "gamma";
  const Parameter param = parameter_from_string(c.parameter);
  c.parameter = to_string(param);
  CriticalOptions co;
  co.tol = c.tol;
  co.scan = scan_options(c);
  CriticalValue cr;
  double estimate = std::nan("");
  const char* unit = "";
  switch (param) {
    case Parameter::Gamma:
      c.gamma.reset();
      cr = critical_gamma(value_or_set(c.v, 0.1), value_or_set(c.L, 0.1), co);
      estimate = critical_gamma_estimate(*c.v, *c.L);
      unit = "gamma_cr [omega_p]";
      break;
    case Parameter::Velocity:
      c.v.reset();
      cr = critical_velocity(value_or_set(c.gamma, 0.18), value_or_set(c.L, 0.1), co);
      unit = "v_cr [c]";
      break;
    case Parameter::Gap:
      c.L.reset();
      cr = critical_gap(value_or_set(c.gamma, 0.18), value_or_set(c.v, 0.1), co);
      unit = "L_cr [1/k_p]";
      break;
  }
  CsvTable table({"parameter", unit, "bracket_lo", "bracket_hi", "iterations", "estimate", "status"});
  table.add_row({c.parameter, cr.value, cr.bracket[0], cr.bracket[1],
                 static_cast<long>(cr.iterations), estimate, std::string("ok")});
  std::cout << c.parameter << " " << format_number(cr.value) << '\n';
  json artifacts = json::array();
  write_artifact(c.out + ".csv", table.str(), artifacts);
  finish("critical", c, t0, artifacts);
  return kOk;
}

int cmd_verify(RunConfig c) {
  const auto t0 = Clock::now();
  log_start("verify", c);
  const auto names = c.only.empty() ? suite_names() : c.only;
  const auto known = suite_names();
  for (const auto& n : names) {
    require(std::find(known.begin(), known.end(), n) != known.end(),
            "unknown verify suite '" + n + "'");
  }
  VerifyOptions vo;
  vo.seed = c.seed;
  json suites = json::array();
  bool all = true;
  for (const auto& n : names) {
    const CheckResult r = run_suite(n, vo);
    all = all && r.passed;
    suites.push_back(to_json(r));
    log_event(r.passed ? "info" : "error", "suite_result",
              {{"suite", n}, {"passed", r.passed}, {"seconds", r.seconds}});
  }
  const json report = {{"tool", "qfl"},     {"version", kToolVersion}, {"seed", c.seed},
                       {"passed", all},     {"suites", suites},
                       {"wall_seconds", seconds_since(t0)}};
  std::cout << report.dump(2) << '\n';
  return all ? kOk : kNumerical;
}

}  // namespace qfl::tool
