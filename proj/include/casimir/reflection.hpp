#pragma once

/// Fresnel reflection coefficients at imaginary Matsubara frequencies for
/// both polarizations under every boundary model, including the contested
/// zero-frequency prescriptions that distinguish the approaches.
///
/// Coefficients are returned signed; downstream code squares them once.

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/materials.hpp"

namespace casimir {

struct ReflectionPair {
    double r_tm = 0.0;
    double r_te = 0.0;
};

/// Reflection amplitudes at xi > 0 and transverse wavenumber k >= 0.
/// Dielectric models use q = sqrt(k^2 + xi^2/c^2), k1 = sqrt(k^2 + eps xi^2/c^2):
///   r_tm = (eps q - k1)/(eps q + k1),   r_te = (q - k1)/(q + k1).
/// The impedance prescription uses Z(i xi):
///   r_tm = (c q - xi Z)/(c q + xi Z),   r_te = (c q Z - xi)/(c q Z + xi).
/// Ideal metal and MIM reflect perfectly at every nonzero frequency.
inline ReflectionPair reflection_pair(BoundaryModel model, const MaterialSpec& material,
                                      double xi, double k, double T,
                                      const QuadratureSpec& quad = {},
                                      const PhysicalConstants& pc = kSiConstants) {
    if (!(xi > 0.0)) {
        throw validation_error("reflection_pair: xi must be positive; use "
                               "zero_frequency_pair for the xi = 0 term");
    }
    if (k < 0.0) throw validation_error("reflection_pair: k must be >= 0");

    switch (model) {
        case BoundaryModel::IdealMetal:
        case BoundaryModel::MIM:
            return {1.0, -1.0};
        case BoundaryModel::ImpedanceIR: {
            material.validate();
            const double q = std::hypot(k, xi / pc.c);
            const double Z = surface_impedance(material, xi, pc);
            const double cq = pc.c * q;
            return {(cq - xi * Z) / (cq + xi * Z), (cq * Z - xi) / (cq * Z + xi)};
        }
        case BoundaryModel::Drude:
        case BoundaryModel::Plasma:
        case BoundaryModel::Tabulated: {
            const double eps = permittivity(model, material, xi, T, quad, pc);
            const double xi_c = xi / pc.c;
            const double q = std::hypot(k, xi_c);
            const double k1 = std::hypot(k, std::sqrt(eps) * xi_c);
            return {(eps * q - k1) / (eps * q + k1), (q - k1) / (q + k1)};
        }
    }
    throw validation_error("reflection_pair: unknown model");
}

/// The xi = 0 prescriptions (k > 0):
///   Drude:       (1, 0)   -- the TE zero mode is absent
///   Plasma:      (1, (ck - sqrt(c^2 k^2 + wp^2))/(ck + sqrt(c^2 k^2 + wp^2)))
///   ImpedanceIR: (1, (ck - wp)/(ck + wp))  -- limit along Z(i xi) ~ xi/wp
///   IdealMetal:  (1, -1)
///   MIM:         (1, 0)   -- ideal metal with the TE zero mode removed
///   Tabulated:   (1, 0)   -- tabulated data are combined with the Drude
///                            zero-frequency term (the convention of the
///                            approach the data pathway reproduces)
inline ReflectionPair zero_frequency_pair(BoundaryModel model, const MaterialSpec& material,
                                          double k, const PhysicalConstants& pc = kSiConstants) {
    if (!(k > 0.0)) {
        throw validation_error("zero_frequency_pair: k must be positive (the k = 0 point "
                               "never contributes to the k-integral)");
    }
    switch (model) {
        case BoundaryModel::Drude:
        case BoundaryModel::MIM:
        case BoundaryModel::Tabulated:
            return {1.0, 0.0};
        case BoundaryModel::IdealMetal:
            return {1.0, -1.0};
        case BoundaryModel::Plasma: {
            material.validate();
            const double wp = material.omega_p_ev * pc.ev_to_radps;
            const double ck = pc.c * k;
            const double w = std::hypot(ck, wp);
            return {1.0, (ck - w) / (ck + w)};
        }
        case BoundaryModel::ImpedanceIR: {
            material.validate();
            const double wp = material.omega_p_ev * pc.ev_to_radps;
            const double ck = pc.c * k;
            return {1.0, (ck - wp) / (ck + wp)};
        }
    }
    throw validation_error("zero_frequency_pair: unknown model");
}

}  // namespace casimir
