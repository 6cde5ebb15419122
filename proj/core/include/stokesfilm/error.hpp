#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stokesfilm {

enum class ErrorCode {
  invalid_argument,
  degenerate_curve,
  self_intersection,
  near_singular_evaluation,
  positivity_violation,
  approaching_self_intersection,
  energy_ceiling,
  non_finite_state,
  characteristic_crossing,
  config_error,
  io_error,
};

/// Stable machine-readable name, used in logs and CLI stop reports.
std::string_view to_string(ErrorCode code) noexcept;

/// True for the codes that stop a run because the numerical state left the
/// regime where the model is valid (as opposed to caller mistakes).
bool is_numerical_stop(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stokesfilm
