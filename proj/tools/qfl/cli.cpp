#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "output.hpp"
#include "qfl/error.hpp"

namespace qfl::tool {

namespace {

struct Overrides {
  std::string config;
  std::optional<double> gamma, v, v_upper, v_lower, L, tol, k_max, kx_min, kx_max, ky;
  std::optional<double> omega_min, omega_max, v_min, v_max, L_min, L_max, cut_v, cut_L;
  std::optional<int> steps, scan_points, n_omega, n_kx, n_v, n_L;
  std::optional<std::string> rule, form, parameter, out;
  std::optional<unsigned long long> seed;
  std::vector<double> gammas, values;
  std::vector<std::string> only;
  bool svg = false;
  bool no_resume = false;
};

void add_options(CLI::App& sub, Overrides& o) {
  sub.add_option("--config", o.config, "JSON run configuration or a previous run's sidecar");
  sub.add_option("--gamma", o.gamma, "Drude damping [omega_p]");
  sub.add_option("--v", o.v, "relative velocity of the symmetric setup [c]");
  sub.add_option("--v-upper", o.v_upper, "upper slab velocity [c]");
  sub.add_option("--v-lower", o.v_lower, "lower slab velocity [c]");
  sub.add_option("--L", o.L, "gap width [1/k_p]");
  sub.add_option("--tol", o.tol, "relative tolerance");
  sub.add_option("--k-max", o.k_max, "wavenumber cutoff override [k_p]");
  sub.add_option("--scan-points", o.scan_points, "growth-rate scan resolution");
  sub.add_option("--kx-min", o.kx_min, "lower kx bound [k_p]");
  sub.add_option("--kx-max", o.kx_max, "upper kx bound [k_p]");
  sub.add_option("--ky", o.ky, "transverse wavenumber [k_p]");
  sub.add_option("--steps", o.steps, "number of kx steps");
  sub.add_option("--gammas", o.gammas, "damping values, one locus each")->delimiter(',');
  sub.add_option("--omega-min", o.omega_min, "lower frequency bound [omega_p]");
  sub.add_option("--omega-max", o.omega_max, "upper frequency bound [omega_p]");
  sub.add_option("--n-omega", o.n_omega, "frequency grid size");
  sub.add_option("--n-kx", o.n_kx, "kx grid size");
  sub.add_option("--v-min", o.v_min, "diagram velocity axis start [c]");
  sub.add_option("--v-max", o.v_max, "diagram velocity axis end [c]");
  sub.add_option("--n-v", o.n_v, "diagram velocity axis size");
  sub.add_option("--L-min", o.L_min, "diagram gap axis start [1/k_p]");
  sub.add_option("--L-max", o.L_max, "diagram gap axis end [1/k_p]");
  sub.add_option("--n-L", o.n_L, "diagram gap axis size");
  sub.add_option("--cut-v", o.cut_v, "velocity of the line cut along L [c]");
  sub.add_option("--cut-L", o.cut_L, "gap of the line cut along v [1/k_p]");
  sub.add_flag("--no-resume", o.no_resume, "ignore an existing diagram journal");
  sub.add_option("--parameter", o.parameter, "gamma, velocity or gap");
  sub.add_option("--values", o.values, "swept parameter values")->delimiter(',');
  sub.add_option("--rule", o.rule, "gk15 or gk21");
  sub.add_option("--form", o.form, "reflection-product or coefficient");
  sub.add_option("--only", o.only, "verify suites to run")->delimiter(',');
  sub.add_option("--seed", o.seed, "verify seed");
  sub.add_option("--out", o.out, "output path prefix");
  sub.add_flag("--svg", o.svg, "also render an SVG");
}

template <typename T, typename U>
void apply(const std::optional<T>& flag, U& slot) {
  if (flag) slot = *flag;
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  apply(o.gamma, c.gamma);
  apply(o.v, c.v);
  apply(o.v_upper, c.v_upper);
  apply(o.v_lower, c.v_lower);
  apply(o.L, c.L);
  apply(o.tol, c.tol);
  apply(o.k_max, c.k_max);
  apply(o.scan_points, c.scan_points);
  apply(o.kx_min, c.kx_min);
  apply(o.kx_max, c.kx_max);
  apply(o.ky, c.ky);
  apply(o.steps, c.steps);
  apply(o.omega_min, c.omega_min);
  apply(o.omega_max, c.omega_max);
  apply(o.n_omega, c.n_omega);
  apply(o.n_kx, c.n_kx);
  apply(o.v_min, c.v_min);
  apply(o.v_max, c.v_max);
  apply(o.n_v, c.n_v);
  apply(o.L_min, c.L_min);
  apply(o.L_max, c.L_max);
  apply(o.n_L, c.n_L);
  apply(o.cut_v, c.cut_v);
  apply(o.cut_L, c.cut_L);
  apply(o.parameter, c.parameter);
  apply(o.rule, c.rule);
  apply(o.form, c.form);
  apply(o.seed, c.seed);
  apply(o.out, c.out);
  if (!o.gammas.empty()) c.gammas = o.gammas;
  if (!o.values.empty()) c.values = o.values;
  if (!o.only.empty()) c.only = o.only;
  if (o.svg) c.svg = true;
  if (o.no_resume) c.resume = false;
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  return c;
}

int dispatch(const std::string& name, const RunConfig& c) {
  if (name == "roots") return cmd_roots(c);
  if (name == "diagram") return cmd_diagram(c);
  if (name == "spectrum") return cmd_spectrum(c);
  if (name == "force") return cmd_force(c);
  if (name == "critical") return cmd_critical(c);
  return cmd_verify(c);
}

int fail(int code, const std::string& kind, const std::string& what) {
  log_event("error", "failed", {{"kind", kind}, {"message", what}, {"exit_code", code}});
  std::cerr << "qfl: " << what << '\n';
  return code;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Quantum friction and shear instability between sliding Drude slabs", "qfl"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  Overrides o;
  const std::vector<std::pair<const char*, const char*>> subs = {
      {"roots", "root loci of the characteristic equation"},
      {"diagram", "critical damping over a (v, L) grid"},
      {"spectrum", "force spectral density on an (omega, kx) grid"},
      {"force", "total friction force along one parameter"},
      {"critical", "a single threshold value"},
      {"verify", "identity and oracle suites"}};
  for (const auto& [name, help] : subs) add_options(*app.add_subcommand(name, help), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return dispatch(name, resolve(o));
  } catch (const UsageError& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::UnstableRegime ? kUnstable
                     : e.kind() == ErrorKind::Domain      ? kUsage
                                                          : kNumerical;
    return fail(code, to_string(e.kind()), e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, "usage", e.what());
  } catch (const std::exception& e) {
    return fail(kNumerical, "runtime", e.what());
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "qfl");
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace qfl::tool
