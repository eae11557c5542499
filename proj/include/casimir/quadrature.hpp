#pragma once

/// Adaptive Gauss-Kronrod (G7/K15) quadrature with an embedded-rule error
/// estimate, plus a driver for integrands on [0, inf) that decay (at least)
/// exponentially. The semi-infinite driver locates a cutoff by sampling the
/// integrand and charges the discarded tail to the error estimate.
///
/// Contract: the returned error satisfies err <= rel_tol*|value| or
/// err <= abs_floor, otherwise a convergence_error is thrown. Evaluation is
/// deterministic for identical inputs (worst-panel-first subdivision with a
/// fixed tie-break).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_floor = 1e-300;
    int max_subdivisions = 60;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1e-3)) {
            throw validation_error("QuadratureSpec: rel_tol must lie in (0, 1e-3)");
        }
        if (max_subdivisions < 8) {
            throw validation_error("QuadratureSpec: max_subdivisions must be >= 8");
        }
        if (!(abs_floor >= 0.0)) {
            throw validation_error("QuadratureSpec: abs_floor must be nonnegative");
        }
    }
};

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
IntegralEstimate gauss_kronrod_15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(mid);
    double kronrod = kKronrodWeights[7] * f0;
    double gauss = kGaussWeights[3] * f0;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double fs = f(mid - dx) + f(mid + dx);
        kronrod += kKronrodWeights[i] * fs;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fs;
    }
    kronrod *= half;
    gauss *= half;

    // QUADPACK-style sharpening of the raw |K15 - G7| difference.
    const double diff = std::fabs(kronrod - gauss);
    double err = diff;
    if (diff > 0.0) {
        const double scaled = 200.0 * diff;
        err = scaled * std::sqrt(std::min(1.0, scaled / std::max(std::fabs(kronrod), 1e-300)));
        err = std::min(err, diff * 50.0);
        err = std::max(err, diff);
    }
    return {kronrod, err};
}

struct Panel {
    double a, b;
    IntegralEstimate est;
};

}  // namespace detail

/// Adaptive integration of f over the finite interval [a, b].
template <class F>
IntegralEstimate integrate_interval(const F& f, double a, double b,
                                    const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(b > a)) {
        if (b == a) return {0.0, 0.0};
        throw validation_error("integrate_interval: requires b >= a");
    }

    std::vector<detail::Panel> panels;
    panels.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
    panels.push_back({a, b, detail::gauss_kronrod_15(f, a, b)});

    for (int split = 0;; ++split) {
        double total = 0.0, err = 0.0;
        for (const auto& p : panels) {
            total += p.est.value;
            err += p.est.error;
        }
        if (err <= std::max(spec.rel_tol * std::fabs(total), spec.abs_floor)) {
            return {total, err};
        }
        if (split >= spec.max_subdivisions) {
            throw convergence_error(
                "integrate_interval: error target not met after max_subdivisions", split);
        }

        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].est.error > panels[worst].est.error) worst = i;
        }
        const double pa = panels[worst].a, pb = panels[worst].b;
        const double pm = 0.5 * (pa + pb);
        panels[worst] = {pa, pm, detail::gauss_kronrod_15(f, pa, pm)};
        panels.push_back({pm, pb, detail::gauss_kronrod_15(f, pm, pb)});
    }
}

/// Integration of f over [0, inf) for integrands that decay at least
/// exponentially. The cutoff is found by scanning; what lies beyond it is
/// charged to the returned error.
template <class F>
IntegralEstimate integrate_decaying(const F& f, const QuadratureSpec& spec = {}) {
    spec.validate();

    double magnitude = 0.0;
    for (double s = 0.25; s <= 64.0; s *= 2.0) {
        magnitude = std::max(magnitude, std::fabs(f(s)));
    }
    if (magnitude == 0.0) {
        // Identically zero on the sampled scale; nothing to integrate.
        return {0.0, 0.0};
    }

    double cutoff = 45.0;
    const double tail_level = magnitude * 1e-24;
    while (std::fabs(f(cutoff)) > tail_level && cutoff < 2.0e4) {
        cutoff *= 1.5;
    }
    const double tail_err = std::fabs(f(cutoff)) * 10.0;

    IntegralEstimate est = integrate_interval(f, 0.0, cutoff, spec);
    est.error += tail_err;
    return est;
}

}  // namespace casimir
