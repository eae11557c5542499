#pragma once

/// CSV and JSON emission for datasets, difference series, confidence bands
/// and verdicts. CSV columns carry their units (nm, mPa, pN); JSON carries SI
/// values. Formatting is fixed so identical inputs serialize byte-identically.

#include <cstdio>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "casimir/compare.hpp"
#include "casimir/thermo.hpp"

namespace casimir {

namespace detail {

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

inline void write_dataset_csv(std::ostream& os, const Dataset& ds) {
    const bool pressure = ds.kind == DatasetKind::Pressure;
    const double scale = pressure ? 1e3 : 1e12;
    os << "# " << ds.label << "\n";
    os << (pressure ? "z_nm,value_mPa,sigma_mPa" : "z_nm,value_pN,sigma_pN") << "\n";
    for (const auto& r : ds.records) {
        os << detail::num(r.z * 1e9) << ',' << detail::num(r.value * scale) << ','
           << detail::num(r.sigma * scale) << "\n";
    }
}

inline void write_diff_csv(std::ostream& os, const DiffSeries& series) {
    const bool pressure = series.kind == DatasetKind::Pressure;
    const double scale = pressure ? 1e3 : 1e12;
    os << (pressure ? "z_nm,diff_mPa,sigma_mPa" : "z_nm,diff_pN,sigma_pN") << "\n";
    for (const auto& r : series.records) {
        os << detail::num(r.z * 1e9) << ',' << detail::num(r.diff * scale) << ','
           << detail::num(r.sigma * scale) << "\n";
    }
}

inline void write_band_csv(std::ostream& os, const ConfidenceBand& band, DatasetKind kind) {
    const bool pressure = kind == DatasetKind::Pressure;
    const double scale = pressure ? 1e3 : 1e12;
    os << (pressure ? "z_nm,mean_mPa,lo_mPa,hi_mPa" : "z_nm,mean_pN,lo_pN,hi_pN") << "\n";
    for (const auto& b : band.bins) {
        os << detail::num(b.z_center * 1e9) << ',' << detail::num(b.mean * scale) << ','
           << detail::num(b.lo * scale) << ',' << detail::num(b.hi * scale) << "\n";
    }
}

inline nlohmann::json to_json(const ExclusionVerdict& v, BoundaryModel model) {
    nlohmann::json bins = nlohmann::json::array();
    for (const auto& b : v.bins) {
        bins.push_back({{"z_nm", b.z_center * 1e9},
                        {"mean", b.mean},
                        {"lo", b.lo},
                        {"hi", b.hi},
                        {"n", b.n},
                        {"excludes_zero", b.excludes_zero}});
    }
    return {{"model", to_string(model)},
            {"range_nm", {v.z_lo * 1e9, v.z_hi * 1e9}},
            {"level", v.level},
            {"excluded", v.excluded},
            {"bins", bins}};
}

inline nlohmann::json to_json(const NernstVerdict& v) {
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& [T, S] : v.trajectory) {
        traj.push_back({{"T_K", T}, {"S_J_per_K_m2", S}});
    }
    return {{"model", to_string(v.model)},
            {"z_nm", v.z * 1e9},
            {"satisfied", v.satisfied},
            {"limit_estimate_J_per_K_m2", v.limit_estimate},
            {"extrapolated_limit_J_per_K_m2", v.extrapolated_limit},
            {"analytic_limit_used", v.analytic_limit_used},
            {"threshold_J_per_K_m2", v.threshold},
            {"trajectory", traj}};
}

}  // namespace casimir
