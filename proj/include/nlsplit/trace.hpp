#pragma once

#include <string>
#include <vector>

namespace nlsplit {

enum class RunStatus { Converged, MaxIters, Diverged };

std::string to_string(RunStatus s);

struct IterationRecord {
  int iter = 0;
  double cost = 0.0;
  double grad_norm = 0.0;
  double step_norm = 0.0;
  /// NaN for unconstrained runs (serialized as an empty CSV field).
  double constraint_residual = 0.0;
  long inner_solves = 0;
  long cumulative_inner_solves = 0;
};

struct Trace {
  std::vector<IterationRecord> records;
  RunStatus status = RunStatus::MaxIters;
  std::string note;

  const IterationRecord& last() const { return records.back(); }
};

}  // namespace nlsplit
