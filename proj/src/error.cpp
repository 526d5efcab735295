#include "backscatter/error.hpp"

namespace backscatter {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::invalid_config: return "invalid link configuration";
    case ErrorCode::tag_starved: return "tag starved";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::unsustainable: return "unsustainable";
    case ErrorCode::degenerate_circuit: return "degenerate circuit";
    case ErrorCode::open_circuit: return "open circuit";
    case ErrorCode::invariant_violation: return "invariant violation";
  }
  return "unknown";
}

}  // namespace backscatter
