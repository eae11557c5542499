#pragma once

/// Entropy of the fluctuating field, the closed forms tied to the
/// perfect-lattice Drude metal and the Modified Ideal Metal, and Nernst
/// heat theorem verdicts per model.

#include <cmath>
#include <utility>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/differentiation.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir {

struct EntropyResult {
    double value = 0.0;          // J/(K m^2), plate-plate convention
    double numeric_error = 0.0;  // same units
    double T = 0.0;
    BoundaryModel model = BoundaryModel::IdealMetal;
};

/// S(z,T) = -dF/dT via Richardson-extrapolated central differences.
/// Valid for T >= 2 K; the T -> 0 limits are served by closed forms.
inline EntropyResult entropy(double z, double T, BoundaryModel model,
                             const MaterialSpec& material, const QuadratureSpec& quad = {},
                             const PhysicalConstants& pc = kSiConstants) {
    if (!(T >= 2.0)) {
        throw validation_error("entropy: finite differences require T >= 2 K "
                               "(closed forms serve the T -> 0 limit)");
    }
    double max_f_err = 0.0;
    auto g = [&](double temp) {
        const EnergyResult f = free_energy_per_area({z, temp}, model, material, quad, pc);
        max_f_err = std::max(max_f_err, f.numeric_error);
        return f.value;
    };
    const double h0 = std::max(0.5, 1e-3 * T);
    const DerivativeEstimate d = derivative_in_T(g, T, h0);
    // Quadrature noise enters the smallest-step difference as 2 err / (2 h_min).
    const double quad_err = 4.0 * max_f_err / h0;
    return {-d.value, d.error + quad_err, T, model};
}

/// Zero-temperature entropy of the perfect-lattice Drude metal,
///   S(z,0) = [k_B/(16 pi z^2)] int_0^inf y ln[1 - R(y)^2 e^-y] dy,
///   R(y) = (y - sqrt(a^2 + y^2)) / (y + sqrt(a^2 + y^2)),  a = 2 wp z / c.
/// Always negative: the Nernst-violating residual entropy.
inline double perfect_drude_entropy_T0(double z, const MaterialSpec& material,
                                       const QuadratureSpec& quad = {},
                                       const PhysicalConstants& pc = kSiConstants) {
    if (!(z > 0.0)) throw validation_error("perfect_drude_entropy_T0: z must be positive");
    material.validate();
    const double a = 2.0 * material.omega_p_ev * pc.ev_to_radps * z / pc.c;
    auto f = [a](double y) {
        const double root = std::hypot(a, y);
        const double ratio = (y - root) / (y + root);
        return y * std::log1p(-ratio * ratio * std::exp(-y));
    };
    const IntegralEstimate est = integrate_decaying(f, quad);
    return pc.k_B / (16.0 * kPi * z * z) * est.value;
}

/// F_MIM(z,T) = F_IM(z,T) + zeta(3) k_B T / (16 pi z^2), the identity that
/// isolates the removed TE zero mode.
inline double mim_free_energy(double z, double T, double ideal_free_energy,
                              const PhysicalConstants& pc = kSiConstants) {
    if (!(z > 0.0)) throw validation_error("mim_free_energy: z must be positive");
    if (!std::isfinite(ideal_free_energy) || !std::isfinite(T)) {
        throw validation_error("mim_free_energy: inputs must be finite");
    }
    return ideal_free_energy + kZeta3 * pc.k_B * T / (16.0 * kPi * z * z);
}

/// S_MIM(z,0) = -zeta(3) k_B / (16 pi z^2), independent of material.
inline double mim_entropy_T0(double z, const PhysicalConstants& pc = kSiConstants) {
    if (!(z > 0.0)) throw validation_error("mim_entropy_T0: z must be positive");
    return -kZeta3 * pc.k_B / (16.0 * kPi * z * z);
}

struct NernstVerdict {
    BoundaryModel model = BoundaryModel::IdealMetal;
    double z = 0.0;
    double limit_estimate = 0.0;       // best estimate of S(z, T -> 0)
    double extrapolated_limit = 0.0;   // linear fit on the three lowest grid points
    bool analytic_limit_used = false;  // limit_estimate came from a closed form
    double threshold = 0.0;            // theta_N = 1e-3 zeta(3) k_B/(16 pi z^2)
    bool satisfied = false;            // |limit_estimate| < threshold
    std::vector<std::pair<double, double>> trajectory;  // (T, S) pairs, descending T
};

/// Scans the entropy trajectory on a descending temperature grid and issues a
/// Nernst heat theorem verdict.
///
/// Two limit estimators are reported. The linear fit over the three lowest
/// grid points extrapolates the trajectory to T = 0; it is reliable whenever
/// the trajectory has settled (compliant conductors have S ~ T at low T, and
/// the perfect-lattice Drude plateau is flat on any >= 2 K grid). The models
/// shipped here also admit closed-form T -> 0 limits (zero for plasma,
/// impedance and ideal boundaries; zero for Drude with residual relaxation,
/// whose entropy collapse happens below the reachable grid; the Eq.-style
/// quadrature value for the perfect-lattice Drude metal; the exact constant
/// for MIM), and the verdict uses the closed form when one exists. Both
/// numbers are kept in the verdict so the finite-temperature trajectory
/// remains auditable.
inline NernstVerdict nernst_scan(double z, BoundaryModel model, const MaterialSpec& material,
                                 const std::vector<double>& T_grid,
                                 const QuadratureSpec& quad = {},
                                 const PhysicalConstants& pc = kSiConstants) {
    if (T_grid.size() < 5) {
        throw validation_error("nernst_scan: need at least 5 grid temperatures");
    }
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        if (T_grid[i] < 2.0) {
            throw validation_error("nernst_scan: grid temperatures must be >= 2 K");
        }
        if (i > 0 && !(T_grid[i] < T_grid[i - 1])) {
            throw validation_error("nernst_scan: grid must be strictly descending");
        }
    }

    NernstVerdict v;
    v.model = model;
    v.z = z;
    v.threshold = 1e-3 * kZeta3 * pc.k_B / (16.0 * kPi * z * z);

    v.trajectory.reserve(T_grid.size());
    for (double T : T_grid) {
        v.trajectory.emplace_back(T, entropy(z, T, model, material, quad, pc).value);
    }

    // Least-squares line S = b + a T through the three lowest-T points.
    {
        const std::size_t n = v.trajectory.size();
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = n - 3; i < n; ++i) {
            const double x = v.trajectory[i].first, y = v.trajectory[i].second;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double denom = 3.0 * sxx - sx * sx;
        const double slope = (3.0 * sxy - sx * sy) / denom;
        v.extrapolated_limit = (sy - slope * sx) / 3.0;
    }

    switch (model) {
        case BoundaryModel::Plasma:
        case BoundaryModel::ImpedanceIR:
        case BoundaryModel::IdealMetal:
            v.limit_estimate = 0.0;
            v.analytic_limit_used = true;
            break;
        case BoundaryModel::MIM:
            v.limit_estimate = mim_entropy_T0(z, pc);
            v.analytic_limit_used = true;
            break;
        case BoundaryModel::Drude:
            // nu(0) = nu_residual decides between the Nernst-compliant
            // dissipative metal (S -> 0, reached far below any usable grid)
            // and the perfect lattice with its residual-entropy plateau.
            v.limit_estimate = material.nu_residual_ev > 0.0
                                   ? 0.0
                                   : perfect_drude_entropy_T0(z, material, quad, pc);
            v.analytic_limit_used = true;
            break;
        case BoundaryModel::Tabulated:
            v.limit_estimate = v.extrapolated_limit;
            v.analytic_limit_used = false;
            break;
    }

    v.satisfied = std::fabs(v.limit_estimate) < v.threshold;
    return v;
}

/// Default scan grid used by the CLI.
inline std::vector<double> default_nernst_grid() { return {20.0, 15.0, 10.0, 5.0, 3.0, 2.0}; }

}  // namespace casimir
