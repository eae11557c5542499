#pragma once

/// Matsubara frequencies xi_l = 2 pi k_B T l / hbar and the primed-sum
/// convention (the l = 0 term enters with weight 1/2).

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

struct MatsubaraTerm {
    long index = 0;      // l >= 0
    double xi = 0.0;     // rad/s
    double weight = 1.0; // 1/2 for l = 0, else 1
};

/// Spacing xi_1 = 2 pi k_B T / hbar of the Matsubara ladder at temperature T.
inline double matsubara_spacing(double T, const PhysicalConstants& pc = kSiConstants) {
    if (!(T > 0.0)) {
        throw validation_error("matsubara_spacing: T must be positive");
    }
    return 2.0 * kPi * pc.k_B * T / pc.hbar;
}

inline MatsubaraTerm matsubara_xi(long l, double T, const PhysicalConstants& pc = kSiConstants) {
    if (l < 0) {
        throw validation_error("matsubara_xi: index must be nonnegative");
    }
    const double xi1 = matsubara_spacing(T, pc);  // validates T
    return {l, xi1 * static_cast<double>(l), l == 0 ? 0.5 : 1.0};
}

}  // namespace casimir
