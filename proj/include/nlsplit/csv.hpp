#pragma once

#include <string>
#include <vector>

#include "nlsplit/trace.hpp"

namespace nlsplit::csv {

/// Round-trip-safe formatting: 17 significant digits, '.' decimal point.
std::string format_double(double v);

/// Fixed trace schema:
/// iter,cost,grad_norm,step_norm,constraint_residual,inner_solves,cumulative_inner_solves
/// NaN constraint_residual fields are written empty (unconstrained runs).
std::string trace_csv(const Trace& trace);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace nlsplit::csv
