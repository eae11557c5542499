#pragma once

/// Central-difference differentiation in temperature with Richardson
/// extrapolation. Used for entropies S = -dF/dT; zero-temperature quantities
/// have dedicated closed forms elsewhere and never go through here.

#include <cmath>
#include <limits>

#include "casimir/errors.hpp"

namespace casimir {

struct DerivativeEstimate {
    double value = 0.0;
    double error = 0.0;
};

/// Derivative of g at temperature T. The default step is
/// h0 = max(0.5 K, 1e-3*T); g is evaluated at T +- h0/2^k, k = 0..2, and the
/// three central differences are Richardson-extrapolated. The reported error
/// comes from the extrapolation ladder.
template <class G>
DerivativeEstimate derivative_in_T(const G& g, double T, double h0 = 0.0) {
    if (!(T > 0.0)) {
        throw validation_error("derivative_in_T: T must be positive");
    }
    if (h0 <= 0.0) {
        h0 = std::max(0.5, 1e-3 * T);
    }
    if (h0 >= T) {
        h0 = 0.5 * T;
    }
    if (h0 < 1024.0 * std::numeric_limits<double>::epsilon() * T) {
        throw validation_error("derivative_in_T: step underflow near T = 0");
    }

    double central[3];
    double h = h0;
    for (int k = 0; k < 3; ++k, h *= 0.5) {
        central[k] = (g(T + h) - g(T - h)) / (2.0 * h);
    }

    const double b1 = (4.0 * central[1] - central[0]) / 3.0;
    const double b2 = (4.0 * central[2] - central[1]) / 3.0;
    const double c2 = (16.0 * b2 - b1) / 15.0;

    const double err = std::fabs(c2 - b2) + std::fabs(b2 - b1) / 15.0 +
                       4.0 * std::numeric_limits<double>::epsilon() * std::fabs(c2);
    return {c2, err};
}

}  // namespace casimir
