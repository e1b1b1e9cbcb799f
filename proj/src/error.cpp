#include "diracgap/error.hpp"

namespace diracgap {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::invalid_curve: return "invalid-curve";
    case Errc::degenerate_mesh: return "degenerate-mesh";
    case Errc::near_zigzag: return "near-zigzag";
    case Errc::zigzag_spectral_use: return "zigzag-spectral-use";
    case Errc::degenerate_projector: return "degenerate-projector";
    case Errc::no_convergence: return "no-convergence";
    case Errc::indefinite_mass: return "indefinite-mass";
    case Errc::residual_mismatch: return "residual-mismatch";
    case Errc::bc_violation: return "bc-violation";
    case Errc::singular_system: return "singular-system";
    case Errc::wrong_eta: return "wrong-eta";
    case Errc::structure_mismatch: return "structure-mismatch";
    case Errc::bracketing_failure: return "bracketing-failure";
    case Errc::domain_error: return "domain-error";
    case Errc::config_error: return "config-error";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace diracgap
