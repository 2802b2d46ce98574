#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlsplit/linalg.hpp"

namespace nlsplit::scenario {

/// Fully resolved run configuration. Loaded from an INI-style scenario file
/// (sections [problem] [method] [run] [output] [experiment]) or from a JSON
/// manifest with the same section structure. Unknown sections/keys are
/// rejected; numeric fields are validated at load time.
struct Scenario {
  // [problem]
  std::string problem;  // rastrigin | rosenbrock | beale | tomography | transport1d | diffusion
  std::uint64_t seed = 42;
  std::string splitting = "li";  // benchmarks: li | avf
  int quad_order = 8;
  Vec x0;  // optional initial point (benchmarks)
  int n_qubits = 6;
  int n_operators = 500;
  int n_cells = 64;
  int n_angles = 8;
  double sigma_t = 2.0;
  double sigma_s0 = 1.0;
  double alpha_scatter = 0.02;
  double slab_width = 1.0;
  double inflow = 1.0;
  int n_nodes = 50;
  int n_steps = 100;
  double final_time = 1.0;

  // [method]
  std::string method;
  double gamma = 0.1;
  double mu = 0.9;
  int m = 5;
  double alpha = 0.0;  // diffusion splitting parameter
  std::string inner_mode = "auto";  // auto | direct-linear | newton | fixed-point
  double inner_tol = 1e-10;
  int inner_max = 50;
  double inner_damping = 1.0;
  bool paper_literal_sign = false;
  double baseline_inner_tol = 1e-6;  // constraint solve tolerance for adj baselines

  // [run]
  long max_iters = 1000;
  double cost_tol = 1e-10;
  double grad_tol = 0.0;
  double constraint_tol = 1e-6;

  // [output]
  std::string out_dir;  // empty -> $NLSPLIT_OUTPUT or "."
  std::string prefix = "run";

  // [experiment]
  std::vector<std::string> methods;
  std::vector<double> gammas;
  int n_restarts = 100;

  bool is_constrained_problem() const {
    return problem == "transport1d" || problem == "diffusion";
  }
  bool is_benchmark() const {
    return problem == "rastrigin" || problem == "rosenbrock" || problem == "beale";
  }
};

/// Parse + validate; throws ConfigError with the offending key path.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_ini(const std::string& text);
Scenario parse_scenario_json(const std::string& text);

/// Manifest JSON echoing the resolved configuration; loading it back as a
/// scenario reproduces the run.
std::string scenario_manifest_json(const Scenario& s, const std::string& command, int jobs);

std::string resolve_output_dir(const Scenario& s);

}  // namespace nlsplit::scenario
