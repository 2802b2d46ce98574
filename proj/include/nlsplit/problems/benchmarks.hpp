#pragma once

#include <array>
#include <string>

#include "nlsplit/splitting.hpp"

namespace nlsplit::problems {

/// One of the nonconvex benchmark functions with its linearly-implicit
/// splitting and an average-vector-field variant.
struct BenchmarkSpec {
  std::string name;
  splitting::SplitGradientProblem li;
  splitting::SplitGradientProblem avf;
  Vec default_x0;
  std::array<double, 4> init_box;  // {x1_lo, x1_hi, x2_lo, x2_hi} for multistarts
};

/// name in {rastrigin, rosenbrock, beale}. Throws UnknownBenchmark otherwise.
/// A randomized consistency self-check (split_grad on the diagonal vs grad,
/// grad vs finite differences of the cost) runs at construction.
BenchmarkSpec benchmark(const std::string& name, int avf_quad_order = 8);

}  // namespace nlsplit::problems
