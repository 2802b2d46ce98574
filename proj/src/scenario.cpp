#include "nlsplit/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlsplit/csv.hpp"

namespace nlsplit::scenario {

namespace {

using Section = std::vector<std::pair<std::string, std::string>>;
using Sections = std::vector<std::pair<std::string, Section>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Sections parse_ini(const std::string& text) {
  Sections out;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      current = trim(t.substr(1, t.size() - 2));
      out.emplace_back(current, Section{});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (current.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside of any section");
    out.back().second.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return out;
}

double to_double(const std::string& path, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ConfigError(path + ": not a number: '" + v + "'");
  }
}

long to_long(const std::string& path, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return d;
  } catch (...) {
    throw ConfigError(path + ": not an integer: '" + v + "'");
  }
}

bool to_bool(const std::string& path, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError(path + ": not a boolean: '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

const std::set<std::string> kUnconstrainedMethods = {
    "gd", "nag", "nsgd", "nsnag", "nsgd-newton1", "nsnag-newton1", "aa-newton1", "aa-gd"};
const std::set<std::string> kConstrainedMethods = {
    "ns-adj-gd", "ns-adj-nag", "ns-adj-aa", "adj-gd", "adj-nag", "adj-aa"};

void apply_problem_key(Scenario& s, const std::string& key, const std::string& v) {
  const std::string path = "problem." + key;
  if (key == "name") {
    s.problem = v;
  } else if (key == "seed") {
    s.seed = static_cast<std::uint64_t>(to_long(path, v));
  } else if (key == "splitting") {
    if (v != "li" && v != "avf") throw ConfigError(path + ": must be li or avf");
    s.splitting = v;
  } else if (key == "quad_order") {
    const long q = to_long(path, v);
    if (q < 1) throw ConfigError(path + ": must be >= 1");
    s.quad_order = static_cast<int>(q);
  } else if (key == "x0") {
    s.x0.clear();
    for (const auto& item : split_list(v)) s.x0.push_back(to_double(path, item));
    if (s.x0.empty()) throw ConfigError(path + ": empty point");
  } else if (key == "n_qubits") {
    const long n = to_long(path, v);
    if (n < 1 || n > 20) throw ConfigError(path + ": must be in [1, 20]");
    s.n_qubits = static_cast<int>(n);
  } else if (key == "n_operators") {
    const long n = to_long(path, v);
    if (n < 1) throw ConfigError(path + ": must be >= 1");
    s.n_operators = static_cast<int>(n);
  } else if (key == "n_cells") {
    const long n = to_long(path, v);
    if (n < 1) throw ConfigError(path + ": must be >= 1");
    s.n_cells = static_cast<int>(n);
  } else if (key == "n_angles") {
    const long n = to_long(path, v);
    if (n < 2 || n % 2 != 0) throw ConfigError(path + ": must be even and >= 2");
    s.n_angles = static_cast<int>(n);
  } else if (key == "sigma_t") {
    s.sigma_t = to_double(path, v);
    if (!(s.sigma_t > 0)) throw ConfigError(path + ": must be > 0");
  } else if (key == "sigma_s0") {
    s.sigma_s0 = to_double(path, v);
    if (s.sigma_s0 < 0) throw ConfigError(path + ": must be >= 0");
  } else if (key == "alpha_scatter") {
    s.alpha_scatter = to_double(path, v);
    if (s.alpha_scatter < 0) throw ConfigError(path + ": must be >= 0");
  } else if (key == "slab_width") {
    s.slab_width = to_double(path, v);
    if (!(s.slab_width > 0)) throw ConfigError(path + ": must be > 0");
  } else if (key == "inflow") {
    s.inflow = to_double(path, v);
    if (s.inflow < 0) throw ConfigError(path + ": must be >= 0");
  } else if (key == "n_nodes") {
    const long n = to_long(path, v);
    if (n < 1) throw ConfigError(path + ": must be >= 1");
    s.n_nodes = static_cast<int>(n);
  } else if (key == "n_steps") {
    const long n = to_long(path, v);
    if (n < 1) throw ConfigError(path + ": must be >= 1");
    s.n_steps = static_cast<int>(n);
  } else if (key == "final_time") {
    s.final_time = to_double(path, v);
    if (!(s.final_time > 0)) throw ConfigError(path + ": must be > 0");
  } else {
    throw ConfigError(path + ": unknown key");
  }
}

void apply_method_key(Scenario& s, const std::string& key, const std::string& v) {
  const std::string path = "method." + key;
  if (key == "name") {
    s.method = v;
  } else if (key == "gamma") {
    s.gamma = to_double(path, v);
    if (!(s.gamma > 0)) throw ConfigError(path + ": must be > 0");
  } else if (key == "mu") {
    s.mu = to_double(path, v);
    if (s.mu < 0) throw ConfigError(path + ": must be >= 0");
  } else if (key == "m") {
    const long m = to_long(path, v);
    if (m < 1) throw ConfigError(path + ": must be >= 1");
    s.m = static_cast<int>(m);
  } else if (key == "alpha") {
    s.alpha = to_double(path, v);
    if (s.alpha < 0 || s.alpha > 1) throw ConfigError(path + ": must be in [0, 1]");
  } else if (key == "inner_mode") {
    if (v != "auto" && v != "direct-linear" && v != "newton" && v != "fixed-point")
      throw ConfigError(path + ": must be auto, direct-linear, newton, or fixed-point");
    s.inner_mode = v;
  } else if (key == "inner_tol") {
    s.inner_tol = to_double(path, v);
    if (!(s.inner_tol > 0)) throw ConfigError(path + ": must be > 0");
  } else if (key == "inner_max") {
    const long n = to_long(path, v);
    if (n < 1) throw ConfigError(path + ": must be >= 1");
    s.inner_max = static_cast<int>(n);
  } else if (key == "inner_damping") {
    s.inner_damping = to_double(path, v);
    if (!(s.inner_damping > 0) || s.inner_damping > 1)
      throw ConfigError(path + ": must be in (0, 1]");
  } else if (key == "paper_literal_sign") {
    s.paper_literal_sign = to_bool(path, v);
  } else if (key == "baseline_inner_tol") {
    s.baseline_inner_tol = to_double(path, v);
    if (!(s.baseline_inner_tol > 0)) throw ConfigError(path + ": must be > 0");
  } else {
    throw ConfigError(path + ": unknown key");
  }
}

void apply_run_key(Scenario& s, const std::string& key, const std::string& v) {
  const std::string path = "run." + key;
  if (key == "max_iters") {
    s.max_iters = to_long(path, v);
    if (s.max_iters < 0) throw ConfigError(path + ": must be >= 0");
  } else if (key == "cost_tol") {
    s.cost_tol = to_double(path, v);
  } else if (key == "grad_tol") {
    s.grad_tol = to_double(path, v);
    if (s.grad_tol < 0) throw ConfigError(path + ": must be >= 0");
  } else if (key == "constraint_tol") {
    s.constraint_tol = to_double(path, v);
    if (!(s.constraint_tol > 0)) throw ConfigError(path + ": must be > 0");
  } else {
    throw ConfigError(path + ": unknown key");
  }
}

void apply_output_key(Scenario& s, const std::string& key, const std::string& v) {
  const std::string path = "output." + key;
  if (key == "dir") {
    s.out_dir = v;
  } else if (key == "prefix") {
    s.prefix = v;
  } else {
    throw ConfigError(path + ": unknown key");
  }
}

void apply_experiment_key(Scenario& s, const std::string& key, const std::string& v) {
  const std::string path = "experiment." + key;
  if (key == "methods") {
    s.methods = split_list(v);
    if (s.methods.empty()) throw ConfigError(path + ": empty list");
  } else if (key == "gammas") {
    s.gammas.clear();
    for (const auto& item : split_list(v)) {
      const double g = to_double(path, item);
      if (!(g > 0)) throw ConfigError(path + ": stepsizes must be > 0");
      s.gammas.push_back(g);
    }
    if (s.gammas.empty()) throw ConfigError(path + ": empty list");
  } else if (key == "n_restarts") {
    const long n = to_long(path, v);
    if (n < 1) throw ConfigError(path + ": must be >= 1");
    s.n_restarts = static_cast<int>(n);
  } else {
    throw ConfigError(path + ": unknown key");
  }
}

void validate_cross_fields(const Scenario& s) {
  static const std::set<std::string> kProblems = {"rastrigin",  "rosenbrock", "beale",
                                                  "tomography", "transport1d", "diffusion"};
  if (s.problem.empty()) throw ConfigError("problem.name: required");
  if (!kProblems.count(s.problem))
    throw ConfigError("problem.name: unknown problem '" + s.problem + "'");

  auto check_method = [&](const std::string& m, const std::string& path) {
    const bool uncon = kUnconstrainedMethods.count(m) > 0;
    const bool con = kConstrainedMethods.count(m) > 0;
    if (!uncon && !con) throw ConfigError(path + ": unknown method '" + m + "'");
    if (s.is_constrained_problem() && !con)
      throw ConfigError(path + ": method '" + m + "' does not apply to constrained problem '" +
                        s.problem + "'");
    if (!s.is_constrained_problem() && !uncon)
      throw ConfigError(path + ": method '" + m + "' requires a constrained problem");
  };
  if (!s.method.empty()) check_method(s.method, "method.name");
  for (const auto& m : s.methods) check_method(m, "experiment.methods");

  if (s.is_benchmark() && !s.x0.empty() && s.x0.size() != 2)
    throw ConfigError("problem.x0: benchmarks are 2-dimensional");
}

Scenario from_sections(const Sections& sections) {
  Scenario s;
  for (const auto& [name, kvs] : sections) {
    for (const auto& [key, value] : kvs) {
      if (name == "problem")
        apply_problem_key(s, key, value);
      else if (name == "method")
        apply_method_key(s, key, value);
      else if (name == "run")
        apply_run_key(s, key, value);
      else if (name == "output")
        apply_output_key(s, key, value);
      else if (name == "experiment")
        apply_experiment_key(s, key, value);
      else
        throw ConfigError("[" + name + "]: unknown section");
    }
  }
  validate_cross_fields(s);
  return s;
}

std::string json_scalar_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return csv::format_double(v.get<double>());
  throw ConfigError("manifest: unsupported value type");
}

}  // namespace

Scenario parse_scenario_ini(const std::string& text) { return from_sections(parse_ini(text)); }

Scenario parse_scenario_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("manifest: invalid JSON: ") + e.what());
  }
  Sections sections;
  for (const auto& [sec, body] : j.items()) {
    if (sec == "resolved") continue;  // informational echo, not config
    if (!body.is_object()) throw ConfigError("[" + sec + "]: expected an object");
    Section kvs;
    for (const auto& [key, value] : body.items()) {
      if (value.is_array()) {
        std::string joined;
        for (const auto& item : value) {
          if (!joined.empty()) joined += ",";
          joined += json_scalar_to_string(item);
        }
        kvs.emplace_back(key, joined);
      } else {
        kvs.emplace_back(key, json_scalar_to_string(value));
      }
    }
    sections.emplace_back(sec, std::move(kvs));
  }
  return from_sections(sections);
}

Scenario load_scenario(const std::string& path) {
  const std::string text = csv::read_file(path);
  const std::string t = trim(text);
  if (!t.empty() && t[0] == '{') return parse_scenario_json(text);
  return parse_scenario_ini(text);
}

std::string scenario_manifest_json(const Scenario& s, const std::string& command, int jobs) {
  nlohmann::json j;
  auto& prob = j["problem"];
  prob["name"] = s.problem;
  prob["seed"] = s.seed;
  if (s.is_benchmark()) {
    prob["splitting"] = s.splitting;
    prob["quad_order"] = s.quad_order;
    if (!s.x0.empty()) prob["x0"] = s.x0;
  } else if (s.problem == "tomography") {
    prob["n_qubits"] = s.n_qubits;
    prob["n_operators"] = s.n_operators;
  } else if (s.problem == "transport1d") {
    prob["n_cells"] = s.n_cells;
    prob["n_angles"] = s.n_angles;
    prob["sigma_t"] = s.sigma_t;
    prob["sigma_s0"] = s.sigma_s0;
    prob["alpha_scatter"] = s.alpha_scatter;
    prob["slab_width"] = s.slab_width;
    prob["inflow"] = s.inflow;
  } else if (s.problem == "diffusion") {
    prob["n_nodes"] = s.n_nodes;
    prob["n_steps"] = s.n_steps;
    prob["final_time"] = s.final_time;
  }

  auto& meth = j["method"];
  if (!s.method.empty()) meth["name"] = s.method;
  meth["gamma"] = s.gamma;
  meth["mu"] = s.mu;
  meth["m"] = s.m;
  if (s.problem == "diffusion") meth["alpha"] = s.alpha;
  if (!s.is_constrained_problem()) {
    meth["inner_mode"] = s.inner_mode;
    meth["inner_tol"] = s.inner_tol;
    meth["inner_max"] = s.inner_max;
    meth["inner_damping"] = s.inner_damping;
  } else {
    meth["paper_literal_sign"] = s.paper_literal_sign;
    meth["baseline_inner_tol"] = s.baseline_inner_tol;
  }

  auto& run = j["run"];
  run["max_iters"] = s.max_iters;
  run["cost_tol"] = s.cost_tol;
  run["grad_tol"] = s.grad_tol;
  run["constraint_tol"] = s.constraint_tol;

  auto& out = j["output"];
  out["dir"] = resolve_output_dir(s);
  out["prefix"] = s.prefix;

  if (!s.methods.empty() || !s.gammas.empty()) {
    auto& exp = j["experiment"];
    if (!s.methods.empty()) exp["methods"] = s.methods;
    if (!s.gammas.empty()) exp["gammas"] = s.gammas;
    exp["n_restarts"] = s.n_restarts;
  }

  j["resolved"]["command"] = command;
  j["resolved"]["jobs"] = jobs;
  return j.dump(2) + "\n";
}

std::string resolve_output_dir(const Scenario& s) {
  if (!s.out_dir.empty()) return s.out_dir;
  if (const char* env = std::getenv("NLSPLIT_OUTPUT"); env && *env) return env;
  return ".";
}

}  // namespace nlsplit::scenario
