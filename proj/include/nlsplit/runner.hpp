#pragma once

#include <cstdint>
#include <string>

#include "nlsplit/adjoint.hpp"
#include "nlsplit/optim.hpp"
#include "nlsplit/scenario.hpp"
#include "nlsplit/splitting.hpp"
#include "nlsplit/trace.hpp"

namespace nlsplit::runner {

using scenario::Scenario;

struct RunOutcome {
  Trace trace;
  Vec x_final;  // final iterate (unconstrained) or parameters (constrained)
};

/// Unconstrained problem named by the scenario (benchmark or tomography).
splitting::SplitGradientProblem build_unconstrained_problem(const Scenario& s);

/// Initial iterate: scenario x0, else the problem default.
Vec initial_point(const Scenario& s);

adjoint::ConstrainedProblem build_constrained_problem(const Scenario& s);

optim::OptimizerConfig optimizer_config(const Scenario& s,
                                        const splitting::SplitGradientProblem& p);
adjoint::ConstrainedConfig constrained_config(const Scenario& s);

/// Execute scenario.method; overrides allow harness cells to reuse one
/// scenario across a grid.
RunOutcome run_scenario(const Scenario& s);
RunOutcome run_with(const Scenario& s, const std::string& method, double gamma,
                    const Vec* x0_override);

}  // namespace nlsplit::runner
