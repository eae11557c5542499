// Acceptance suite: the quantitative gate for the whole engine, one
// pass/fail line per criterion. Each criterion pins its tolerance in code.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <vector>

#include "casimir/casimir.hpp"

using namespace casimir;

namespace {

const MaterialSpec kAu = gold_19a();

void report(const char* id, bool ok, const std::string& detail) {
    std::printf("[%s] %s — %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    CHECK(ok);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

}  // namespace

TEST_CASE("acceptance") {
    // ---- A1: zero-temperature entropy reaches its strong-coupling limit ---
    {
        const auto t0 = std::chrono::steady_clock::now();
        const double wp = kAu.omega_p_ev * kSiConstants.ev_to_radps;
        const double z = 1e4 * kSiConstants.c / (2.0 * wp);  // a = 2 wp z/c = 1e4
        const double s = perfect_drude_entropy_T0(z, kAu);
        const double limit = -kZeta3 * kSiConstants.k_B / (16.0 * kPi * z * z);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double rel = std::fabs(s - limit) / std::fabs(limit);
        report("A1", rel < 1e-3 && secs < 1.0,
               fmt("S(a=1e4) = %.6e vs -zeta3 kB/(16 pi z^2) = %.6e, rel dev %.2e, %.3f s", s,
                   limit, rel, secs));
    }

    // ---- A2: MIM rearrangement identity ----------------------------------
    {
        bool ok = true;
        double worst = 0.0;
        for (double z : {0.5e-6, 1e-6, 2e-6}) {
            for (double T : {77.0, 300.0, 600.0}) {
                const auto fmim = free_energy_per_area({z, T}, BoundaryModel::MIM, kAu);
                const auto fim = free_energy_per_area({z, T}, BoundaryModel::IdealMetal, kAu);
                const double term = kZeta3 * kSiConstants.k_B * T / (16.0 * kPi * z * z);
                const double rel = std::fabs((fmim.value - fim.value - term) / term);
                worst = std::max(worst, rel);
                ok = ok && rel < 1e-8;
            }
        }
        report("A2", ok, fmt("F_MIM - F_IM vs zeta(3) kB T/(16 pi z^2): worst rel dev %.2e over "
                             "{0.5,1,2} um x {77,300,600} K (tolerance 1e-8)", worst));
    }

    // ---- A3: finite-difference MIM entropy at 2 K -------------------------
    {
        const auto s = entropy(500e-9, 2.0, BoundaryModel::MIM, kAu);
        const double expected = -1.3207e-12;
        const double rel = std::fabs(s.value - expected) / std::fabs(expected);
        report("A3", rel < 0.01,
               fmt("S_MIM(500 nm, 2 K) = %.5e vs %.5e J/(K m^2), rel dev %.2e (tolerance 1%%)",
                   s.value, expected, rel));
    }

    // ---- A4: ideal-metal thermal correction at 1 um, 300 K ----------------
    {
        const auto tp =
            thermal_correction(1e-6, 300.0, BoundaryModel::IdealMetal, kAu, Quantity::Pressure);
        const auto tf = thermal_correction(1e-6, 300.0, BoundaryModel::IdealMetal, kAu,
                                           Quantity::PfaForce, 150e-6);
        const double p_pct = std::fabs(tp.relative) * 100.0;
        const double f_pct = std::fabs(tf.relative) * 100.0;
        const bool p_ok = std::fabs(p_pct - 1.2) <= 0.3;
        const bool f_ok = std::fabs(f_pct - 1.2) <= 0.3;
        report("A4", p_ok || f_ok,
               fmt("relative thermal correction: plate pressure %.3f%%, PFA force %.3f%% "
                   "(need one equal to 1.2%% +- 0.3 pp)", p_pct, f_pct));
    }

    // ---- A5: ideal vs Drude decomposition at 1 um, 300 K (PFA force) ------
    {
        const auto fim = free_energy_per_area({1e-6, 300.0}, BoundaryModel::IdealMetal, kAu);
        const auto fd = free_energy_per_area({1e-6, 300.0}, BoundaryModel::Drude, kAu);
        const auto eim = zero_temperature_energy(1e-6, BoundaryModel::IdealMetal, kAu);
        const auto ed = zero_temperature_energy(1e-6, BoundaryModel::Drude, kAu);
        const double total = (1.0 - fd.value / fim.value) * 100.0;
        const double t0_part = (1.0 - ed.value / eim.value) * 100.0;
        const double thermal_pp = total - t0_part;
        const bool ok = std::fabs(total - 25.0) <= 4.0 && std::fabs(thermal_pp - 19.0) <= 4.0;
        report("A5", ok,
               fmt("total deviation %.2f%% (25 +- 4), thermal part %.2f pp (19 +- 4), "
                   "T=0 part %.2f%%", total, thermal_pp, t0_part));
    }

    // ---- A6: pure-Drude pressure ladder -----------------------------------
    {
        const double z_nm[] = {260, 300, 400, 500, 600};
        const double target_mPa[] = {240.5, 112.5, 36.0, 15.0, 7.5};
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 5; ++i) {
            const auto p = pressure({z_nm[i] * 1e-9, 300.0}, BoundaryModel::Drude, kAu);
            const double got = std::fabs(p.value) * 1e3;
            const double rel = std::fabs(got - target_mPa[i]) / target_mPa[i];
            const bool point_ok = rel <= 0.10;
            ok = ok && point_ok;
            detail += fmt("%s%.0fnm: %.1f vs %.1f (%+.1f%%)", i ? "; " : "", z_nm[i], got,
                          target_mPa[i], 100.0 * (got / target_mPa[i] - 1.0));
        }
        report("A6", ok, detail + " [tolerance 10% per point]");
    }

    // ---- A7: 160 nm benchmark pressure ------------------------------------
    {
        const auto p = pressure({160e-9, 300.0}, BoundaryModel::Drude, kAu);
        const double mPa = std::fabs(p.value) * 1e3;
        report("A7", mPa >= 1070.0 && mPa <= 1180.0,
               fmt("|P|(160 nm, 300 K, drude au-19a) = %.1f mPa (envelope [1070, 1180])", mPa));
    }

    // ---- A8: Nernst verdict suite ------------------------------------------
    {
        const auto grid = default_nernst_grid();
        const auto v_plasma = nernst_scan(500e-9, BoundaryModel::Plasma, kAu, grid);
        const auto v_imp = nernst_scan(500e-9, BoundaryModel::ImpedanceIR, kAu, grid);
        MaterialSpec dirty = kAu;
        dirty.nu_residual_ev = 0.004;
        const auto v_dirty = nernst_scan(500e-9, BoundaryModel::Drude, dirty, grid);
        const auto v_perfect = nernst_scan(500e-9, BoundaryModel::Drude, kAu, grid);
        const double eq2 = perfect_drude_entropy_T0(500e-9, kAu);
        const double extrap_rel = std::fabs(v_perfect.extrapolated_limit - eq2) / std::fabs(eq2);
        const bool ok = v_plasma.satisfied && v_imp.satisfied && v_dirty.satisfied &&
                        !v_perfect.satisfied && extrap_rel <= 0.05;
        report("A8", ok,
               fmt("plasma %s, impedance %s, drude(nu0=0.004 eV) %s, perfect drude %s with "
                   "extrapolated limit %.5e vs quadrature %.5e (rel dev %.2e, tolerance 5%%)",
                   v_plasma.satisfied ? "satisfied" : "VIOLATED",
                   v_imp.satisfied ? "satisfied" : "VIOLATED",
                   v_dirty.satisfied ? "satisfied" : "VIOLATED",
                   v_perfect.satisfied ? "SATISFIED" : "violated", v_perfect.extrapolated_limit,
                   eq2, extrap_rel));
    }

    // ---- A9: separation-error propagation ladder ---------------------------
    {
        const double z_nm[] = {260, 300, 400, 500, 600};
        const double ladder_mPa[] = {3.7, 1.5, 0.36, 0.12, 0.05};
        bool ok = true;
        std::string detail;
        for (int i = 0; i < 5; ++i) {
            const auto p = pressure({z_nm[i] * 1e-9, 300.0}, BoundaryModel::Drude, kAu);
            const double dP =
                std::fabs(propagate_separation_error(p.value, z_nm[i] * 1e-9, 1e-9)) * 1e3;
            const double rel = std::fabs(dP - ladder_mPa[i]) / ladder_mPa[i];
            ok = ok && rel <= 0.10;
            detail += fmt("%s%.0fnm: %.3f vs %.2f", i ? "; " : "", z_nm[i], dP, ladder_mPa[i]);
        }
        const double exact = propagate_separation_error(-240.5e-3, 260e-9, 1e-9) * 1e3;
        const bool exact_ok = std::fabs(exact - 3.7) < 1e-9;
        ok = ok && exact_ok;
        report("A9", ok,
               detail + fmt(" [10%% envelope]; |dP|(|P|=240.5 mPa) = %.10f mPa (exact 3.7)", exact));
    }

    // ---- A10: synthetic discrimination property ----------------------------
    {
        // 0.25 nm grid over [160, 700] nm (benchmark-scale point count);
        // ladder-calibrated noise; verdicts per the benchmark methodology.
        // Theory curves are evaluated once and served to the harness through
        // cached evaluators.
        std::vector<double> grid_nm, grid, grid_shifted;
        for (int i = 0; i <= 2160; ++i) {
            grid_nm.push_back(160.0 + 0.25 * i);
            grid.push_back(grid_nm.back() * 1e-9);
        }
        for (double z : grid) grid_shifted.push_back(z - 1e-9);

        auto cache_curve = [&](BoundaryModel model, const std::vector<double>& zs) {
            std::vector<std::pair<double, double>> out(zs.size());
            for (std::size_t i = 0; i < zs.size(); ++i) {
                const auto p = pressure({zs[i], 300.0}, model, kAu);
                out[i] = {p.value, p.numeric_error};
            }
            return out;
        };
        const auto drude_curve = cache_curve(BoundaryModel::Drude, grid);
        const auto imp_curve = cache_curve(BoundaryModel::ImpedanceIR, grid);
        const auto drude_shift_curve = cache_curve(BoundaryModel::Drude, grid_shifted);

        auto cached_fn = [](const std::vector<double>& zs,
                            const std::vector<std::pair<double, double>>& vals) {
            return [&zs, &vals](double z) {
                const auto it = std::lower_bound(zs.begin(), zs.end(), z);
                REQUIRE((it != zs.end() && *it == z));
                return vals[static_cast<std::size_t>(it - zs.begin())];
            };
        };
        const TheoryFn drude_fn = cached_fn(grid, drude_curve);
        const TheoryFn imp_fn = cached_fn(grid, imp_curve);
        const TheoryFn drude_shift_fn = cached_fn(grid_shifted, drude_shift_curve);

        const NoiseSpec noise = NoiseSpec::ladder();
        int drude_excluded = 0, imp_not_excluded = 0, fig3_excluded = 0;
        const int trials = 100;
        for (int seed = 1; seed <= trials; ++seed) {
            const Dataset ds = synthesize_dataset(imp_fn, DatasetKind::Pressure, grid, noise,
                                                  static_cast<std::uint64_t>(seed));
            {
                const auto band =
                    confidence_band(theory_minus_experiment(ds, drude_fn), 0.95, 10e-9);
                if (exclusion_verdict(band, 300e-9, 500e-9).excluded) ++drude_excluded;
            }
            {
                const auto band =
                    confidence_band(theory_minus_experiment(ds, imp_fn), 0.95, 10e-9);
                if (!exclusion_verdict(band, 300e-9, 500e-9).excluded) ++imp_not_excluded;
            }
            {
                const Dataset shifted = apply_separation_shift(ds, -1e-9);
                const auto band =
                    confidence_band(theory_minus_experiment(shifted, drude_shift_fn), 0.95, 10e-9);
                if (exclusion_verdict(band, 240e-9, 700e-9).excluded) ++fig3_excluded;
            }
        }
        const bool ok = drude_excluded >= 90 && imp_not_excluded >= 90 && fig3_excluded >= 90;
        report("A10", ok,
               fmt("100 trials: drude excluded over [300,500] nm in %d, impedance not excluded "
                   "in %d, -1 nm shift still excludes drude over [240,700] nm in %d (all need "
                   ">= 90)", drude_excluded, imp_not_excluded, fig3_excluded));
    }

    // ---- A11: closed form vs reflection-module route ------------------------
    {
        bool ok = true;
        double worst = 0.0;
        for (double z : {0.25e-6, 0.5e-6, 1e-6, 2e-6, 5e-6}) {
            auto integrand = [&](double y) {
                const double r =
                    zero_frequency_pair(BoundaryModel::Plasma, kAu, y / (2.0 * z)).r_te;
                return y * std::log1p(-r * r * std::exp(-y));
            };
            const double via_reflection =
                kSiConstants.k_B / (16.0 * kPi * z * z) * integrate_decaying(integrand).value;
            const double direct = perfect_drude_entropy_T0(z, kAu);
            const double rel = std::fabs(direct - via_reflection) / std::fabs(direct);
            worst = std::max(worst, rel);
            ok = ok && rel <= 1e-8;
        }
        report("A11", ok,
               fmt("entropy integral vs zero_frequency_pair route at 5 separations: worst rel "
                   "dev %.2e (tolerance 1e-8)", worst));
    }

    // ---- A12: performance ----------------------------------------------------
    {
        const auto t0 = std::chrono::steady_clock::now();
        double checksum = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double z = (160.0 + (700.0 - 160.0) * i / 99.0) * 1e-9;
            checksum += pressure({z, 300.0}, BoundaryModel::Drude, kAu).value;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report("A12", secs < 10.0,
               fmt("100-point Drude pressure curve over [160, 700] nm in %.2f s (< 10 s); "
                   "checksum %.6e", secs, checksum));
    }
}
