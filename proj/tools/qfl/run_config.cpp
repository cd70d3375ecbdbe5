#include "run_config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace qfl::tool {

namespace {

template <typename T>
void put(nlohmann::json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
void get(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    v.reset();
  } else {
    v = j.at(key).get<T>();
  }
}

template <typename T>
void get(const nlohmann::json& j, const char* key, T& v) {
  if (j.contains(key)) v = j.at(key).get<T>();
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "gamma", "v", "v_upper", "v_lower", "L", "tol", "scan_points", "k_max", "rule", "form",
      "kx_min", "kx_max", "steps", "ky", "gammas", "omega_min", "omega_max", "n_omega", "n_kx",
      "v_min", "v_max", "n_v", "L_min", "L_max", "n_L",
      "cut_v", "cut_L", "resume", "parameter", "values", "only", "seed", "out", "svg"};
  return keys;
}

}  // namespace

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json::object();
  put(j, "gamma", c.gamma);
  put(j, "v", c.v);
  put(j, "v_upper", c.v_upper);
  put(j, "v_lower", c.v_lower);
  put(j, "L", c.L);
  j["tol"] = c.tol;
  j["scan_points"] = c.scan_points;
  put(j, "k_max", c.k_max);
  j["rule"] = c.rule;
  j["form"] = c.form;
  put(j, "kx_min", c.kx_min);
  put(j, "kx_max", c.kx_max);
  j["steps"] = c.steps;
  j["ky"] = c.ky;
  j["gammas"] = c.gammas;
  j["omega_min"] = c.omega_min;
  j["omega_max"] = c.omega_max;
  j["n_omega"] = c.n_omega;
  j["n_kx"] = c.n_kx;
  j["v_min"] = c.v_min;
  j["v_max"] = c.v_max;
  j["n_v"] = c.n_v;
  j["L_min"] = c.L_min;
  j["L_max"] = c.L_max;
  j["n_L"] = c.n_L;
  put(j, "cut_v", c.cut_v);
  put(j, "cut_L", c.cut_L);
  j["resume"] = c.resume;
  j["parameter"] = c.parameter;
  j["values"] = c.values;
  j["only"] = c.only;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["svg"] = c.svg;
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known_keys().count(key)) throw std::invalid_argument("unknown config key '" + key + "'");
  }
  get(j, "gamma", c.gamma);
  get(j, "v", c.v);
  get(j, "v_upper", c.v_upper);
  get(j, "v_lower", c.v_lower);
  get(j, "L", c.L);
  get(j, "tol", c.tol);
  get(j, "scan_points", c.scan_points);
  get(j, "k_max", c.k_max);
  get(j, "rule", c.rule);
  get(j, "form", c.form);
  get(j, "kx_min", c.kx_min);
  get(j, "kx_max", c.kx_max);
  get(j, "steps", c.steps);
  get(j, "ky", c.ky);
  get(j, "gammas", c.gammas);
  get(j, "omega_min", c.omega_min);
  get(j, "omega_max", c.omega_max);
  get(j, "n_omega", c.n_omega);
  get(j, "n_kx", c.n_kx);
  get(j, "v_min", c.v_min);
  get(j, "v_max", c.v_max);
  get(j, "n_v", c.n_v);
  get(j, "L_min", c.L_min);
  get(j, "L_max", c.L_max);
  get(j, "n_L", c.n_L);
  get(j, "cut_v", c.cut_v);
  get(j, "cut_L", c.cut_L);
  get(j, "resume", c.resume);
  get(j, "parameter", c.parameter);
  get(j, "values", c.values);
  get(j, "only", c.only);
  get(j, "seed", c.seed);
  get(j, "out", c.out);
  get(j, "svg", c.svg);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("tool") && j.contains("config")) j = j.at("config");
  RunConfig c;
  try {
    from_json(j, c);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  return c;
}

}  // namespace qfl::tool
