#pragma once

#include <stdexcept>
#include <string>

namespace backscatter {

enum class ErrorCode {
  invalid_argument,
  invalid_config,
  tag_starved,
  infeasible,
  unsustainable,
  degenerate_circuit,
  open_circuit,
  invariant_violation,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every failure raised by the library. The code maps
/// one-to-one onto the status values of the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace backscatter
