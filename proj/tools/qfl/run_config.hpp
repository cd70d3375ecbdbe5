#ifndef QFL_TOOL_RUN_CONFIG_HPP
#define QFL_TOOL_RUN_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qfl::tool {

inline constexpr const char* kToolVersion = "1.0.0";

/// Everything a run depends on. Unset optionals fall back to per-command
/// defaults, so a sidecar echo reproduces the run exactly.
struct RunConfig {
  // physical
  std::optional<double> gamma;
  std::optional<double> v;
  std::optional<double> v_upper;
  std::optional<double> v_lower;
  std::optional<double> L;

  // numerics
  double tol = 1e-4;
  int scan_points = 400;
  std::optional<double> k_max;
  std::string rule = "gk21";
  std::string form = "reflection-product";

  // roots
  std::optional<double> kx_min;
  std::optional<double> kx_max;
  int steps = 160;
  double ky = 0.0;
  std::vector<double> gammas;  // one locus per damping; empty selects the regime presets

  // spectrum
  double omega_min = 0.0;
  double omega_max = 2.0;
  int n_omega = 201;
  int n_kx = 201;

  // diagram
  double v_min = 0.02;
  double v_max = 0.2;
  int n_v = 10;
  double L_min = 0.05;
  double L_max = 0.5;
  int n_L = 10;
  std::optional<double> cut_v;
  std::optional<double> cut_L;
  bool resume = true;

  // force sweep / critical search
  std::string parameter;  // gamma | velocity | gap
  std::vector<double> values;

  // verify
  std::vector<std::string> only;
  unsigned long long seed = 20240917ULL;

  // output
  std::string out = "qfl_out";
  bool svg = false;
};

void to_json(nlohmann::json& j, const RunConfig& c);
/// Unknown keys are rejected so that typos cannot silently fall back to defaults.
void from_json(const nlohmann::json& j, RunConfig& c);

/// Accepts a bare config object or a sidecar written by a previous run.
RunConfig load_config(const std::string& path);

}  // namespace qfl::tool

#endif
