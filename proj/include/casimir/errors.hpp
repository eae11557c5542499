#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Bad input: domain violations, malformed files, inconsistent configuration.
/// CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
  public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric routine failed to meet its accuracy contract (quadrature panel
/// budget exhausted, Matsubara sum not converged, ...). Distinct from domain
/// errors; CLI maps this to exit code 1.
class convergence_error : public std::runtime_error {
  public:
    convergence_error(const std::string& what, long iterations_used)
        : std::runtime_error(what), iterations_used_(iterations_used) {}

    /// Largest subdivision / term count that was reached before giving up.
    long iterations_used() const { return iterations_used_; }

  private:
    long iterations_used_;
};

}  // namespace casimir
