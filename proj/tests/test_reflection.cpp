#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/matsubara.hpp"
#include "casimir/reflection.hpp"

using namespace casimir;

namespace {

const MaterialSpec kAu = gold_19a();
const double kXi1 = matsubara_spacing(300.0);  // rad/s at 300 K

}  // namespace

TEST_CASE("zero-frequency prescriptions") {
    const double k = 1e6;

    SECTION("Drude kills the TE zero mode") {
        const auto r = zero_frequency_pair(BoundaryModel::Drude, kAu, k);
        CHECK(r.r_tm == 1.0);
        CHECK(r.r_te == 0.0);
    }
    SECTION("MIM: ideal TM, zero TE") {
        const auto r = zero_frequency_pair(BoundaryModel::MIM, kAu, k);
        CHECK(r.r_tm == 1.0);
        CHECK(r.r_te == 0.0);
    }
    SECTION("ideal metal keeps both") {
        const auto r = zero_frequency_pair(BoundaryModel::IdealMetal, kAu, k);
        CHECK(r.r_tm == 1.0);
        CHECK(r.r_te == -1.0);
    }
    SECTION("plasma TE value and its ideal-metal limit") {
        const double wp = kAu.omega_p_ev * kSiConstants.ev_to_radps;
        const double ck = kSiConstants.c * k;
        const auto r = zero_frequency_pair(BoundaryModel::Plasma, kAu, k);
        CHECK(r.r_tm == 1.0);
        CHECK(r.r_te ==
              Catch::Approx((ck - std::hypot(ck, wp)) / (ck + std::hypot(ck, wp))).epsilon(1e-14));
        MaterialSpec heavy = kAu;
        heavy.omega_p_ev = 9e9;
        CHECK(zero_frequency_pair(BoundaryModel::Plasma, heavy, k).r_te ==
              Catch::Approx(-1.0).epsilon(1e-6));
    }
    SECTION("impedance TE value") {
        const double wp = kAu.omega_p_ev * kSiConstants.ev_to_radps;
        const double ck = kSiConstants.c * k;
        const auto r = zero_frequency_pair(BoundaryModel::ImpedanceIR, kAu, k);
        CHECK(r.r_tm == 1.0);
        CHECK(r.r_te == Catch::Approx((ck - wp) / (ck + wp)).epsilon(1e-14));
    }
    SECTION("k = 0 rejected") {
        CHECK_THROWS_AS(zero_frequency_pair(BoundaryModel::Drude, kAu, 0.0), validation_error);
    }
}

TEST_CASE("reflection pairs at finite frequency") {
    SECTION("xi <= 0 routed away") {
        CHECK_THROWS_AS(reflection_pair(BoundaryModel::Drude, kAu, 0.0, 1e6, 300.0),
                        validation_error);
        CHECK_THROWS_AS(reflection_pair(BoundaryModel::Drude, kAu, -1.0, 1e6, 300.0),
                        validation_error);
    }
    SECTION("ideal metal and MIM are perfect mirrors at xi > 0") {
        for (double xi : {1e12, 1e14, 1e16}) {
            const auto a = reflection_pair(BoundaryModel::IdealMetal, kAu, xi, 1e6, 300.0);
            const auto b = reflection_pair(BoundaryModel::MIM, kAu, xi, 1e6, 300.0);
            CHECK(a.r_tm == 1.0);
            CHECK(a.r_te == -1.0);
            CHECK(b.r_tm == a.r_tm);
            CHECK(b.r_te == a.r_te);
        }
    }
    SECTION("impedance perfect-conductor limit (Z -> 0)") {
        MaterialSpec heavy = kAu;
        heavy.omega_p_ev = 9e9;
        const auto r =
            reflection_pair(BoundaryModel::ImpedanceIR, heavy, kXi1, 1e6, 300.0);
        CHECK(r.r_tm == Catch::Approx(1.0).epsilon(1e-6));
        CHECK(r.r_te == Catch::Approx(-1.0).epsilon(1e-6));
    }
    SECTION("Drude transparency at xi = 1e3 omega_p") {
        const double xi = 1e3 * kAu.omega_p_ev * kSiConstants.ev_to_radps;
        const auto r = reflection_pair(BoundaryModel::Drude, kAu, xi, 1e6, 300.0);
        CHECK(std::fabs(r.r_tm) < 1e-6);
        CHECK(std::fabs(r.r_te) < 1e-6);
    }
    SECTION("plasma equals Drude when nu = 0") {
        MaterialSpec perfect = kAu;
        perfect.nu_ref_ev = 0.0;  // no phonon term, no residual
        for (double xi = 1e12; xi < 1e17; xi *= 13.0) {
            for (double k = 1e4; k < 1e9; k *= 90.0) {
                const auto d = reflection_pair(BoundaryModel::Drude, perfect, xi, k, 300.0);
                const auto p = reflection_pair(BoundaryModel::Plasma, perfect, xi, k, 300.0);
                CHECK(d.r_tm == Catch::Approx(p.r_tm).epsilon(1e-14));
                CHECK(d.r_te == Catch::Approx(p.r_te).epsilon(1e-14));
            }
        }
    }
    SECTION("|r| <= 1 everywhere sampled") {
        for (auto model : {BoundaryModel::Drude, BoundaryModel::Plasma, BoundaryModel::ImpedanceIR}) {
            for (double xi = 1e11; xi < 1e18; xi *= 40.0) {
                for (double k = 1e3; k < 1e9; k *= 300.0) {
                    const auto r = reflection_pair(model, kAu, xi, k, 300.0);
                    CHECK(std::fabs(r.r_tm) <= 1.0);
                    CHECK(std::fabs(r.r_te) <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("zero-frequency consistency of the xi -> 0 limit") {
    const double xi_small = 1e-6 * kXi1;

    SECTION("TM limit is uncontested: all models within 1e-4") {
        for (auto model : {BoundaryModel::Drude, BoundaryModel::Plasma, BoundaryModel::ImpedanceIR,
                           BoundaryModel::IdealMetal, BoundaryModel::MIM}) {
            for (double k = 1e4; k <= 1e8; k *= 100.0) {
                const auto lim = reflection_pair(model, kAu, xi_small, k, 300.0);
                const auto zero = zero_frequency_pair(model, kAu, k);
                CHECK(std::fabs(lim.r_tm - zero.r_tm) < 1e-4);
            }
        }
    }
    SECTION("TE dichotomy: Drude limit vanishes, plasma limit does not") {
        // The Drude TE amplitude converges to zero pointwise in k but not
        // uniformly: the relevant scale is xi << nu c^2 k^2 / wp^2, so the
        // probe frequency must shrink with k.
        const double wp = kAu.omega_p_ev * kSiConstants.ev_to_radps;
        const double nu = relaxation(kAu, 300.0) * kSiConstants.ev_to_radps;
        for (double k = 1e4; k <= 1e8; k *= 10.0) {
            const double xi_k = std::min(xi_small, 1e-4 * nu * kSiConstants.c * kSiConstants.c *
                                                       k * k / (wp * wp));
            const auto drude = reflection_pair(BoundaryModel::Drude, kAu, xi_k, k, 300.0);
            CHECK(std::fabs(drude.r_te) < 1e-2);
            const auto plasma = reflection_pair(BoundaryModel::Plasma, kAu, xi_k, k, 300.0);
            const auto plasma0 = zero_frequency_pair(BoundaryModel::Plasma, kAu, k);
            CHECK(std::fabs(plasma.r_te - plasma0.r_te) < 1e-4);
            CHECK(std::fabs(plasma0.r_te) > 1e-2);
        }
    }
    SECTION("impedance TE limit lands on its prescription") {
        for (double k = 1e4; k <= 1e8; k *= 100.0) {
            const auto lim = reflection_pair(BoundaryModel::ImpedanceIR, kAu, xi_small, k, 300.0);
            const auto zero = zero_frequency_pair(BoundaryModel::ImpedanceIR, kAu, k);
            CHECK(std::fabs(lim.r_te - zero.r_te) < 1e-4);
        }
    }
}

TEST_CASE("monotonicity in xi at fixed k") {
    const double k = 1e6;

    SECTION("plasma: both polarizations decrease over the whole axis") {
        double prev_tm = 2.0, prev_te = 2.0;
        for (double xi = 1e12; xi < 1e17; xi *= 2.2) {
            const auto r = reflection_pair(BoundaryModel::Plasma, kAu, xi, k, 300.0);
            CHECK(std::fabs(r.r_tm) < prev_tm);
            CHECK(std::fabs(r.r_te) < prev_te);
            prev_tm = std::fabs(r.r_tm);
            prev_te = std::fabs(r.r_te);
        }
    }
    SECTION("Drude: monotone above the relaxation frequency") {
        const double nu = relaxation(kAu, 300.0) * kSiConstants.ev_to_radps;
        double prev_tm = 2.0, prev_te = 2.0;
        for (double xi = 5.0 * nu; xi < 1e18; xi *= 2.2) {
            const auto r = reflection_pair(BoundaryModel::Drude, kAu, xi, k, 300.0);
            CHECK(std::fabs(r.r_tm) < prev_tm);
            CHECK(std::fabs(r.r_te) < prev_te);
            prev_tm = std::fabs(r.r_tm);
            prev_te = std::fabs(r.r_te);
        }
    }
    SECTION("Drude TE rises below nu (the zero-mode suppression at work)") {
        const double nu = relaxation(kAu, 300.0) * kSiConstants.ev_to_radps;
        const double low = std::fabs(reflection_pair(BoundaryModel::Drude, kAu, 1e-3 * nu, k, 300.0).r_te);
        const double mid = std::fabs(reflection_pair(BoundaryModel::Drude, kAu, 0.5 * nu, k, 300.0).r_te);
        CHECK(low < mid);
    }
}

TEST_CASE("MIM and ideal metal differ only at xi = 0, only in TE") {
    for (double xi = 1e11; xi < 1e17; xi *= 17.0) {
        for (double k = 1e4; k < 1e9; k *= 500.0) {
            const auto a = reflection_pair(BoundaryModel::IdealMetal, kAu, xi, k, 300.0);
            const auto b = reflection_pair(BoundaryModel::MIM, kAu, xi, k, 300.0);
            CHECK(a.r_tm == b.r_tm);
            CHECK(a.r_te == b.r_te);
        }
    }
    const auto a0 = zero_frequency_pair(BoundaryModel::IdealMetal, kAu, 1e6);
    const auto b0 = zero_frequency_pair(BoundaryModel::MIM, kAu, 1e6);
    CHECK(a0.r_tm == b0.r_tm);
    CHECK(a0.r_te != b0.r_te);
}
