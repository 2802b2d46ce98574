#include "nlsplit/trace.hpp"

namespace nlsplit {

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "converged";
    case RunStatus::MaxIters: return "max-iters";
    case RunStatus::Diverged: return "diverged";
  }
  return "?";
}

}  // namespace nlsplit
