#pragma once

/// Fundamental constants (SI) and the eV <-> rad/s frequency conversion used
/// throughout the library. All internal computations are done in SI; metal
/// parameters are specified in eV and converted at the evaluation boundary.

#include <numbers>

#include "casimir/errors.hpp"

namespace casimir {

struct PhysicalConstants {
    double hbar = 1.054571817e-34;    // reduced Planck constant, J s
    double c = 2.99792458e8;          // speed of light, m/s
    double k_B = 1.380649e-23;        // Boltzmann constant, J/K
    double ev_to_radps = 1.51927e15;  // rad/s per eV

    constexpr bool valid() const {
        return hbar > 0.0 && c > 0.0 && k_B > 0.0 && ev_to_radps > 0.0;
    }
};

// Historic (erroneous) eV -> rad/s coefficient found in older tabulations.
// Exposed only for reproduction studies; see the CLI --legacy-conversion flag.
inline constexpr double kLegacyEvToRadps = 1.537e15;

inline constexpr PhysicalConstants kSiConstants{};

inline constexpr double kPi = std::numbers::pi_v<double>;
inline constexpr double kZeta3 = 1.2020569031595942854;  // Riemann zeta(3)

enum class FrequencyDirection { EvToRadps, RadpsToEv };

/// Multiplies or divides by the eV <-> rad/s coefficient. Round trip is an
/// identity to machine precision. Negative input is rejected.
inline double convert_frequency(double value, FrequencyDirection direction,
                                const PhysicalConstants& pc = kSiConstants) {
    if (value < 0.0) {
        throw validation_error("convert_frequency: negative frequency value");
    }
    return direction == FrequencyDirection::EvToRadps ? value * pc.ev_to_radps
                                                      : value / pc.ev_to_radps;
}

}  // namespace casimir
