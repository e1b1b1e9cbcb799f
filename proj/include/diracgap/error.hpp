#pragma once

#include <stdexcept>
#include <string>

namespace diracgap {

enum class Errc {
  invalid_argument,
  invalid_curve,
  degenerate_mesh,
  near_zigzag,
  zigzag_spectral_use,
  degenerate_projector,
  no_convergence,
  indefinite_mass,
  residual_mismatch,
  bc_violation,
  singular_system,
  wrong_eta,
  structure_mismatch,
  bracketing_failure,
  domain_error,
  config_error,
  io_error,
};

const char* to_string(Errc code) noexcept;

/// Single exception type for the library; the code identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace diracgap
