#pragma once

/// Metal descriptions: plasma frequency, temperature-dependent relaxation
/// (Bloch-Gruneisen phonon term plus an impurity residual, Matthiessen
/// additivity), and the dielectric permittivity evaluated on the imaginary
/// frequency axis for each analytic boundary model. Tabulated eps(i xi) data
/// can be attached to a material and is interpolated log-log.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

enum class BoundaryModel { Drude, Plasma, ImpedanceIR, IdealMetal, MIM, Tabulated };

inline const char* to_string(BoundaryModel m) {
    switch (m) {
        case BoundaryModel::Drude: return "drude";
        case BoundaryModel::Plasma: return "plasma";
        case BoundaryModel::ImpedanceIR: return "impedance";
        case BoundaryModel::IdealMetal: return "ideal";
        case BoundaryModel::MIM: return "mim";
        case BoundaryModel::Tabulated: return "tabulated";
    }
    return "?";
}

inline BoundaryModel parse_boundary_model(const std::string& name) {
    if (name == "drude") return BoundaryModel::Drude;
    if (name == "plasma") return BoundaryModel::Plasma;
    if (name == "impedance" || name == "impedance-ir") return BoundaryModel::ImpedanceIR;
    if (name == "ideal" || name == "ideal-metal") return BoundaryModel::IdealMetal;
    if (name == "mim") return BoundaryModel::MIM;
    if (name == "tabulated") return BoundaryModel::Tabulated;
    throw validation_error("unknown boundary model '" + name + "'");
}

struct PermittivityPoint {
    double xi_ev = 0.0;
    double eps = 1.0;
};

struct MaterialSpec {
    std::string name;
    double omega_p_ev = 0.0;      // plasma frequency, eV
    double nu_ref_ev = 0.0;       // relaxation at T_ref, eV
    double T_ref = 300.0;         // K
    double nu_residual_ev = 0.0;  // impurity contribution, eV
    double theta_debye = 165.0;   // Debye temperature, K (handbook Au default)
    std::vector<PermittivityPoint> table;  // optional eps(i xi) samples
    // Below-range handling for tabulated data: extend with the Drude form of
    // this material, or refuse. Surfaced here so the choice is never silent.
    bool extend_table_with_drude = true;

    void validate() const {
        if (!(omega_p_ev > 0.0)) throw validation_error("MaterialSpec: omega_p must be > 0");
        if (nu_ref_ev < 0.0) throw validation_error("MaterialSpec: nu_ref must be >= 0");
        if (nu_residual_ev < 0.0) throw validation_error("MaterialSpec: nu_residual must be >= 0");
        if (nu_residual_ev > nu_ref_ev) {
            throw validation_error("MaterialSpec: nu_residual must not exceed nu_ref");
        }
        if (!(theta_debye > 0.0)) throw validation_error("MaterialSpec: theta_debye must be > 0");
        if (!(T_ref > 0.0)) throw validation_error("MaterialSpec: T_ref must be > 0");
        for (std::size_t i = 0; i < table.size(); ++i) {
            if (table[i].eps < 1.0) {
                throw validation_error("MaterialSpec: table eps < 1 at entry " +
                                       std::to_string(i + 1));
            }
            if (i > 0 && !(table[i].xi_ev > table[i - 1].xi_ev)) {
                throw validation_error("MaterialSpec: table xi not strictly ascending at entry " +
                                       std::to_string(i + 1));
            }
        }
    }
};

/// Au parameters actually used in the precise dynamic pressure determination
/// (omega_p = 9.00 eV, nu(300 K) = 0.0350 eV). CLI alias "au-19a".
inline MaterialSpec gold_19a() {
    MaterialSpec m;
    m.name = "au-19a";
    m.omega_p_ev = 9.00;
    m.nu_ref_ev = 0.0350;
    return m;
}

/// Au parameters from the older optical-data tabulation
/// (omega_p = 9.03 eV, nu(300 K) = 0.0345 eV). CLI alias "au-7".
inline MaterialSpec gold_7() {
    MaterialSpec m;
    m.name = "au-7";
    m.omega_p_ev = 9.03;
    m.nu_ref_ev = 0.0345;
    return m;
}

/// Cu config example with handbook (non-benchmark) values; not used by any
/// acceptance path.
inline MaterialSpec copper_example() {
    MaterialSpec m;
    m.name = "cu-example";
    m.omega_p_ev = 8.97;
    m.nu_ref_ev = 0.0300;
    m.theta_debye = 343.0;
    return m;
}

namespace detail {

/// int_0^u x^5 e^x/(e^x - 1)^2 dx, the Bloch-Gruneisen shape integral.
/// The integrand is evaluated as x^5 e^-x / (1 - e^-x)^2 which is stable at
/// both ends; it behaves like x^3 near zero and decays like x^5 e^-x.
inline double bloch_gruneisen_integral(double u, const QuadratureSpec& quad) {
    if (u <= 0.0) return 0.0;
    auto f = [](double x) {
        if (x <= 0.0) return 0.0;
        const double em = std::expm1(-x);  // -(1 - e^-x)
        return std::pow(x, 5) * std::exp(-x) / (em * em);
    };
    // Beyond ~60 the remaining mass is below double precision of the total.
    return integrate_interval(f, 0.0, std::min(u, 60.0), quad).value;
}

}  // namespace detail

/// Relaxation frequency nu(T) in eV: residual impurity part plus a
/// Bloch-Gruneisen phonon part calibrated so that nu(T_ref) = nu_ref.
/// For a perfect lattice (nu_residual = 0) this vanishes at T = 0 exactly.
inline double relaxation(const MaterialSpec& material, double T,
                         const QuadratureSpec& quad = {},
                         const PhysicalConstants& pc = kSiConstants) {
    (void)pc;
    material.validate();
    if (T < 0.0) throw validation_error("relaxation: T must be >= 0");
    if (T == 0.0) return material.nu_residual_ev;

    const double nu_phonon_ref = material.nu_ref_ev - material.nu_residual_ev;
    if (nu_phonon_ref == 0.0) return material.nu_residual_ev;

    auto shape = [&](double temp) {
        const double u = material.theta_debye / temp;
        return std::pow(temp / material.theta_debye, 5) *
               detail::bloch_gruneisen_integral(u, quad);
    };
    return material.nu_residual_ev + nu_phonon_ref * shape(T) / shape(material.T_ref);
}

/// Dielectric permittivity on the imaginary axis, eps(i xi), xi in rad/s.
/// Drude:  1 + wp^2/(xi (xi + nu(T)))
/// Plasma: 1 + wp^2/xi^2
/// Tabulated: log-log interpolation inside the table range; below it the
/// Drude form of the material is used when extend_table_with_drude is set;
/// above it the request is rejected (tables must cover the Matsubara range).
/// IdealMetal/MIM/ImpedanceIR have no finite permittivity; callers use
/// reflection coefficients directly.
inline double permittivity(BoundaryModel model, const MaterialSpec& material, double xi,
                           double T, const QuadratureSpec& quad = {},
                           const PhysicalConstants& pc = kSiConstants) {
    if (!(xi > 0.0)) {
        throw validation_error("permittivity: xi must be positive (xi = 0 is handled "
                               "by the reflection module's zero-frequency prescriptions)");
    }
    material.validate();
    const double wp = material.omega_p_ev * pc.ev_to_radps;

    switch (model) {
        case BoundaryModel::Drude: {
            const double nu = relaxation(material, T, quad, pc) * pc.ev_to_radps;
            return 1.0 + wp * wp / (xi * (xi + nu));
        }
        case BoundaryModel::Plasma:
            return 1.0 + (wp / xi) * (wp / xi);
        case BoundaryModel::Tabulated: {
            if (material.table.empty()) {
                throw validation_error("permittivity: Tabulated model requires a table");
            }
            const double xi_ev = xi / pc.ev_to_radps;
            if (xi_ev < material.table.front().xi_ev) {
                if (!material.extend_table_with_drude) {
                    throw validation_error("permittivity: xi below table range and Drude "
                                           "extension disabled");
                }
                const double nu = relaxation(material, T, quad, pc) * pc.ev_to_radps;
                return 1.0 + wp * wp / (xi * (xi + nu));
            }
            if (xi_ev > material.table.back().xi_ev) {
                throw validation_error("permittivity: xi above table range (table must "
                                       "cover the needed Matsubara frequencies)");
            }
            const auto& t = material.table;
            std::size_t hi = 1;
            while (hi + 1 < t.size() && t[hi].xi_ev < xi_ev) ++hi;
            const double lx0 = std::log(t[hi - 1].xi_ev), lx1 = std::log(t[hi].xi_ev);
            const double le0 = std::log(t[hi - 1].eps), le1 = std::log(t[hi].eps);
            const double w = (std::log(xi_ev) - lx0) / (lx1 - lx0);
            return std::exp(le0 + w * (le1 - le0));
        }
        case BoundaryModel::ImpedanceIR:
        case BoundaryModel::IdealMetal:
        case BoundaryModel::MIM:
            throw validation_error("permittivity: model has no finite permittivity; use "
                                   "reflection coefficients directly");
    }
    throw validation_error("permittivity: unknown model");
}

/// Infrared-optics (free-electron) surface impedance on the imaginary axis:
/// Z(i xi) = xi / sqrt(xi^2 + wp^2). Z(0) = 0 with slope 1/wp, which fixes
/// the zero-frequency reflection limit of the impedance prescription.
inline double surface_impedance(const MaterialSpec& material, double xi,
                                const PhysicalConstants& pc = kSiConstants) {
    material.validate();
    if (xi < 0.0) throw validation_error("surface_impedance: xi must be >= 0");
    if (xi == 0.0) return 0.0;
    const double wp = material.omega_p_ev * pc.ev_to_radps;
    return xi / std::hypot(xi, wp);
}

/// Reads a permittivity table from a CSV stream with header `xi_ev,eps`.
/// Comment lines start with '#'. Violations are reported with row numbers.
inline std::vector<PermittivityPoint> load_permittivity_table(std::istream& in) {
    std::vector<PermittivityPoint> table;
    std::string line;
    long row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        // Strip trailing CR from files produced on other platforms.
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header_seen) {
            std::string squashed;
            for (char ch : line) {
                if (!std::isspace(static_cast<unsigned char>(ch))) squashed += ch;
            }
            if (squashed != "xi_ev,eps") {
                throw validation_error("permittivity table: expected header 'xi_ev,eps' at row " +
                                       std::to_string(row));
            }
            header_seen = true;
            continue;
        }
        std::string cell;
        std::istringstream ls(line);
        PermittivityPoint p;
        char comma = 0;
        if (!(ls >> p.xi_ev >> comma >> p.eps) || comma != ',') {
            throw validation_error("permittivity table: malformed row " + std::to_string(row));
        }
        if (p.eps < 1.0) {
            throw validation_error("permittivity table: eps < 1 at row " + std::to_string(row));
        }
        if (!table.empty() && !(p.xi_ev > table.back().xi_ev)) {
            throw validation_error("permittivity table: xi not strictly ascending at row " +
                                   std::to_string(row));
        }
        if (!(p.xi_ev > 0.0)) {
            throw validation_error("permittivity table: xi must be positive at row " +
                                   std::to_string(row));
        }
        table.push_back(p);
    }
    if (table.size() < 8) {
        throw validation_error("permittivity table: insufficient rows (need >= 8, got " +
                               std::to_string(table.size()) + ")");
    }
    return table;
}

}  // namespace casimir
