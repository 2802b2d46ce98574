#include "nlsplit/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nlsplit/errors.hpp"

namespace nlsplit::csv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trace_csv(const Trace& trace) {
  std::string out =
      "iter,cost,grad_norm,step_norm,constraint_residual,inner_solves,cumulative_inner_solves\n";
  for (const auto& r : trace.records) {
    out += std::to_string(r.iter);
    out += ',';
    out += format_double(r.cost);
    out += ',';
    out += format_double(r.grad_norm);
    out += ',';
    out += format_double(r.step_norm);
    out += ',';
    if (!std::isnan(r.constraint_residual)) out += format_double(r.constraint_residual);
    out += ',';
    out += std::to_string(r.inner_solves);
    out += ',';
    out += std::to_string(r.cumulative_inner_solves);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for writing: " + path);
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace nlsplit::csv
