#pragma once

#include <stdexcept>
#include <string>

namespace polynet {

/// Raised when a request exceeds a configured capability cap (exact adversary
/// size limits, overflow guards on binomials, grid memory budgets).
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a numerical procedure fails beyond its tolerance contract
/// (non-convergence, infeasible LPs that signal violated preconditions,
/// non-PSD moment matrices).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polynet
