#pragma once

/// Theory-vs-experiment harness: difference series, binned Student-t
/// confidence bands, exclusion verdicts, separation-error propagation, the
/// uniform-shift what-if, and synthetic-dataset generation.
///
/// Datasets are held in SI units (m, Pa or N); the CSV surfaces speak the
/// human units of the comparison plots (nm, mPa or pN).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <future>
#include <istream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"

namespace casimir {

enum class DatasetKind { Pressure, Force };

struct DataRecord {
    double z = 0.0;      // m
    double value = 0.0;  // Pa (Pressure) or N (Force)
    double sigma = 0.0;  // same units, > 0
};

struct Dataset {
    DatasetKind kind = DatasetKind::Pressure;
    std::vector<DataRecord> records;  // ascending in z
    std::string label;

    void validate() const {
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (!(records[i].z > 0.0)) {
                throw validation_error("Dataset: nonpositive z at record " + std::to_string(i + 1));
            }
            if (!(records[i].sigma > 0.0)) {
                throw validation_error("Dataset: nonpositive sigma at record " +
                                       std::to_string(i + 1));
            }
            if (i > 0 && !(records[i].z > records[i - 1].z)) {
                throw validation_error("Dataset: z not strictly ascending at record " +
                                       std::to_string(i + 1));
            }
        }
    }
};

struct DiffRecord {
    double z = 0.0;     // m
    double diff = 0.0;  // theory minus experiment
    double sigma = 0.0; // sqrt(sigma_exp^2 + sigma_num^2)
};

struct DiffSeries {
    DatasetKind kind = DatasetKind::Pressure;
    std::vector<DiffRecord> records;
};

struct BandBin {
    double z_center = 0.0;
    double half_width_z = 0.0;
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
};

struct ConfidenceBand {
    std::vector<BandBin> bins;
    double level = 0.95;
};

/// Loads `z_nm,value_mPa,sigma_mPa` (Pressure) or `z_nm,value_pN,sigma_pN`
/// (Force) CSV. '#' lines are comments. Records are sorted by z; duplicate
/// separations, nonpositive sigmas and malformed rows are reported with their
/// row number.
inline Dataset load_dataset(std::istream& in, DatasetKind kind) {
    Dataset ds;
    ds.kind = kind;
    const std::string expected_header =
        kind == DatasetKind::Pressure ? "z_nm,value_mPa,sigma_mPa" : "z_nm,value_pN,sigma_pN";
    const double value_to_si = kind == DatasetKind::Pressure ? 1e-3 : 1e-12;

    std::string line;
    long row = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            std::string squashed;
            for (char ch : line) {
                if (!std::isspace(static_cast<unsigned char>(ch))) squashed += ch;
            }
            if (squashed != expected_header) {
                throw validation_error("dataset: expected header '" + expected_header +
                                       "' at row " + std::to_string(row));
            }
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        double z_nm = 0, value = 0, sigma = 0;
        char c1 = 0, c2 = 0;
        if (!(ls >> z_nm >> c1 >> value >> c2 >> sigma) || c1 != ',' || c2 != ',') {
            throw validation_error("dataset: malformed row " + std::to_string(row));
        }
        if (!(z_nm > 0.0)) {
            throw validation_error("dataset: nonpositive z at row " + std::to_string(row));
        }
        if (!(sigma > 0.0)) {
            throw validation_error("dataset: nonpositive sigma at row " + std::to_string(row));
        }
        ds.records.push_back({z_nm * 1e-9, value * value_to_si, sigma * value_to_si});
    }
    if (!header_seen) {
        throw validation_error("dataset: insufficient rows (no header found)");
    }
    std::sort(ds.records.begin(), ds.records.end(),
              [](const DataRecord& a, const DataRecord& b) { return a.z < b.z; });
    for (std::size_t i = 1; i < ds.records.size(); ++i) {
        if (ds.records[i].z == ds.records[i - 1].z) {
            throw validation_error("dataset: duplicate z = " +
                                   std::to_string(ds.records[i].z * 1e9) + " nm");
        }
    }
    ds.validate();
    return ds;
}

/// Theory evaluator: z -> (value, numeric_error) in the dataset's units.
using TheoryFn = std::function<std::pair<double, double>(double)>;

/// Builds the theory evaluator for a model/material/geometry triple.
inline TheoryFn make_theory_fn(DatasetKind kind, BoundaryModel model, MaterialSpec material,
                               GeometrySpec geometry, double T = 300.0, QuadratureSpec quad = {},
                               PhysicalConstants pc = kSiConstants) {
    if (kind == DatasetKind::Pressure && geometry.kind != GeometrySpec::Kind::PlatePlate) {
        throw validation_error("pressure datasets pair with plate-plate geometry");
    }
    if (kind == DatasetKind::Force && geometry.kind != GeometrySpec::Kind::SpherePlate) {
        throw validation_error("force datasets pair with sphere-plate geometry");
    }
    if (kind == DatasetKind::Pressure) {
        return [=](double z) {
            const PressureResult p = pressure({z, T}, model, material, quad, pc);
            return std::make_pair(p.value, p.numeric_error);
        };
    }
    return [=](double z) {
        const ForceResult f =
            pfa_sphere_force({z, T}, geometry.sphere_radius, model, material, quad, pc);
        return std::make_pair(f.value, f.numeric_error);
    };
}

namespace detail {

/// Evaluates fn over all record separations, in parallel chunks, results in
/// record order (deterministic regardless of worker count).
inline std::vector<std::pair<double, double>> evaluate_theory(const std::vector<DataRecord>& records,
                                                              const TheoryFn& fn) {
    std::vector<std::pair<double, double>> out(records.size());
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(std::max<std::size_t>(records.size(), 1)));
    if (workers <= 1 || records.size() < 8) {
        for (std::size_t i = 0; i < records.size(); ++i) out[i] = fn(records[i].z);
        return out;
    }
    std::vector<std::future<void>> futures;
    const std::size_t chunk = (records.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(records.size(), lo + chunk);
        if (lo >= hi) break;
        futures.push_back(std::async(std::launch::async, [&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = fn(records[i].z);
        }));
    }
    for (auto& f : futures) f.get();
    return out;
}

}  // namespace detail

/// Difference series theory(z_i) - experiment_i with combined uncertainty
/// sqrt(sigma_exp^2 + sigma_num^2); theory is always evaluated at the
/// dataset's current separations.
inline DiffSeries theory_minus_experiment(const Dataset& ds, const TheoryFn& theory) {
    ds.validate();
    const auto theory_vals = detail::evaluate_theory(ds.records, theory);
    DiffSeries series;
    series.kind = ds.kind;
    series.records.reserve(ds.records.size());
    for (std::size_t i = 0; i < ds.records.size(); ++i) {
        const auto& r = ds.records[i];
        const auto& [tv, terr] = theory_vals[i];
        series.records.push_back({r.z, tv - r.value, std::hypot(r.sigma, terr)});
    }
    return series;
}

inline DiffSeries theory_minus_experiment(const Dataset& ds, BoundaryModel model,
                                          const MaterialSpec& material,
                                          const GeometrySpec& geometry, double T = 300.0,
                                          const QuadratureSpec& quad = {},
                                          const PhysicalConstants& pc = kSiConstants) {
    return theory_minus_experiment(ds,
                                   make_theory_fn(ds.kind, model, material, geometry, T, quad, pc));
}

/// Binned Student-t confidence band. Bins of the given width start at the
/// smallest separation; bins with fewer than 3 points are merged rightward
/// (a sparse trailing bin joins its predecessor). Within a bin,
///   mean +- t_{(1+level)/2, n-1} s / sqrt(n).
inline ConfidenceBand confidence_band(const DiffSeries& series, double level, double bin_width) {
    if (!(std::fabs(level - 0.95) < 1e-12 || std::fabs(level - 0.99) < 1e-12)) {
        throw validation_error("confidence_band: level must be 0.95 or 0.99");
    }
    if (!(bin_width > 0.0)) throw validation_error("confidence_band: bin width must be positive");
    if (series.records.size() < 10) {
        throw validation_error("confidence_band: need at least 10 records for statistics");
    }

    std::vector<DiffRecord> recs = series.records;
    std::sort(recs.begin(), recs.end(), [](const DiffRecord& a, const DiffRecord& b) {
        return a.z != b.z ? a.z < b.z : a.diff < b.diff;
    });

    const double z0 = recs.front().z;
    struct RawBin {
        long index;
        std::vector<double> diffs;
    };
    std::vector<RawBin> raw;
    for (const auto& r : recs) {
        const long idx = static_cast<long>(std::floor((r.z - z0) / bin_width));
        if (raw.empty() || raw.back().index != idx) raw.push_back({idx, {}});
        raw.back().diffs.push_back(r.diff);
    }

    // Merge sparse bins into the next one; a sparse final bin joins the
    // previous emitted bin.
    struct MergedBin {
        long first_index, last_index;
        std::vector<double> diffs;
    };
    std::vector<MergedBin> merged;
    std::vector<double> carry;
    long carry_first = -1;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (carry.empty()) carry_first = raw[i].index;
        carry.insert(carry.end(), raw[i].diffs.begin(), raw[i].diffs.end());
        if (carry.size() >= 3) {
            merged.push_back({carry_first, raw[i].index, std::move(carry)});
            carry.clear();
        }
    }
    if (!carry.empty()) {
        if (merged.empty()) {
            throw validation_error("confidence_band: series too sparse overall");
        }
        merged.back().last_index = raw.back().index;
        merged.back().diffs.insert(merged.back().diffs.end(), carry.begin(), carry.end());
    }

    ConfidenceBand band;
    band.level = level;
    for (const auto& m : merged) {
        const int n = static_cast<int>(m.diffs.size());
        double mean = 0.0;
        for (double d : m.diffs) mean += d;
        mean /= n;
        double ss = 0.0;
        for (double d : m.diffs) ss += (d - mean) * (d - mean);
        const double s = std::sqrt(ss / (n - 1));
        const boost::math::students_t_distribution<double> dist(n - 1);
        const double t = boost::math::quantile(dist, 0.5 * (1.0 + level));
        const double half = t * s / std::sqrt(static_cast<double>(n));
        const double lo_edge = z0 + static_cast<double>(m.first_index) * bin_width;
        const double hi_edge = z0 + static_cast<double>(m.last_index + 1) * bin_width;
        band.bins.push_back({0.5 * (lo_edge + hi_edge), 0.5 * (hi_edge - lo_edge), mean,
                             mean - half, mean + half, n});
    }
    return band;
}

struct BinVerdict {
    double z_center = 0.0;
    double mean = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
    bool excludes_zero = false;
};

struct ExclusionVerdict {
    bool excluded = false;
    double z_lo = 0.0, z_hi = 0.0;
    double level = 0.95;
    std::vector<BinVerdict> bins;
};

/// A theory is excluded over [z_lo, z_hi] iff zero lies outside the band in
/// every bin whose center falls inside the range.
inline ExclusionVerdict exclusion_verdict(const ConfidenceBand& band, double z_lo, double z_hi) {
    if (!(z_hi > z_lo)) throw validation_error("exclusion_verdict: need z_hi > z_lo");
    ExclusionVerdict v;
    v.z_lo = z_lo;
    v.z_hi = z_hi;
    v.level = band.level;
    v.excluded = true;
    for (const auto& b : band.bins) {
        if (b.z_center < z_lo || b.z_center > z_hi) continue;
        const bool excl = b.lo > 0.0 || b.hi < 0.0;
        v.bins.push_back({b.z_center, b.mean, b.lo, b.hi, b.n, excl});
        v.excluded = v.excluded && excl;
    }
    if (v.bins.size() < 2) {
        throw validation_error("exclusion_verdict: range overlaps fewer than 2 bins");
    }
    return v;
}

/// Error in a theoretical pressure induced by a separation error dz:
/// Delta P = -P * 4 dz / z (exactly linear in both dz and P).
inline double propagate_separation_error(double P, double z, double dz) {
    if (!(z > 0.0)) throw validation_error("propagate_separation_error: z must be positive");
    return -P * 4.0 * dz / z;
}

/// Shifts every record's separation by dz (values untouched; label annotated).
/// A zero shift is the identity.
inline Dataset apply_separation_shift(const Dataset& ds, double dz) {
    Dataset out = ds;
    if (dz == 0.0) return out;
    for (auto& r : out.records) {
        r.z += dz;
        if (!(r.z > 0.0)) {
            throw validation_error("apply_separation_shift: shift produces nonpositive z");
        }
    }
    char note[64];
    std::snprintf(note, sizeof(note), " [z shifted by %+.3f nm]", dz * 1e9);
    out.label += note;
    return out;
}

/// Noise profile for synthetic datasets. "ladder" is a pressure profile
/// interpolating (log-linearly in sigma over z) the mean-deviation scale of
/// the benchmark comparison: 5.5, 5.0, 2.0, 0.8, 0.4 mPa at 260, 300, 400,
/// 500, 600 nm, extended with the end-segment slopes.
struct NoiseSpec {
    enum class Kind { None, Constant, Ladder };
    Kind kind = Kind::None;
    double value = 0.0;  // Constant: sigma in SI units; Ladder: dimensionless scale

    static NoiseSpec none() { return {Kind::None, 0.0}; }
    static NoiseSpec constant(double sigma_si) { return {Kind::Constant, sigma_si}; }
    static NoiseSpec ladder(double scale = 1.0) { return {Kind::Ladder, scale}; }

    double sigma(double z, DatasetKind dataset_kind) const {
        switch (kind) {
            case Kind::None:
                return 0.0;
            case Kind::Constant:
                return value;
            case Kind::Ladder: {
                if (dataset_kind != DatasetKind::Pressure) {
                    throw validation_error("NoiseSpec: ladder profile is pressure-specific");
                }
                static constexpr double zs[5] = {260e-9, 300e-9, 400e-9, 500e-9, 600e-9};
                static constexpr double sig[5] = {5.5e-3, 5.0e-3, 2.0e-3, 0.8e-3, 0.4e-3};
                std::size_t seg = 0;
                if (z >= zs[4]) {
                    seg = 3;
                } else {
                    while (seg + 2 < 5 && z > zs[seg + 1]) ++seg;
                }
                const double w = (z - zs[seg]) / (zs[seg + 1] - zs[seg]);
                const double ls0 = std::log(sig[seg]), ls1 = std::log(sig[seg + 1]);
                return value * std::exp(ls0 + w * (ls1 - ls0));
            }
        }
        throw validation_error("NoiseSpec: unknown kind");
    }
};

/// Deterministic synthetic dataset: values = theory(z) + N(0, sigma(z)) with
/// Box-Muller normals drawn from a seeded mt19937_64 (same seed, same bytes).
inline Dataset synthesize_dataset(const TheoryFn& theory, DatasetKind kind,
                                  const std::vector<double>& z_grid, const NoiseSpec& noise,
                                  std::uint64_t seed, const std::string& label = "synthetic") {
    if (z_grid.empty()) throw validation_error("synthesize_dataset: empty separation grid");
    for (std::size_t i = 1; i < z_grid.size(); ++i) {
        if (!(z_grid[i] > z_grid[i - 1])) {
            throw validation_error("synthesize_dataset: grid must be strictly ascending");
        }
    }
    std::vector<DataRecord> records(z_grid.size());
    for (std::size_t i = 0; i < z_grid.size(); ++i) records[i].z = z_grid[i];
    const auto theory_vals = detail::evaluate_theory(records, theory);

    std::mt19937_64 rng(seed);
    auto normal = [&rng]() {
        // Box-Muller with explicit uniforms; u1 in (0,1], u2 in [0,1).
        const double u1 =
            (static_cast<double>(rng()) + 1.0) / (static_cast<double>(std::mt19937_64::max()) + 2.0);
        const double u2 =
            static_cast<double>(rng()) / (static_cast<double>(std::mt19937_64::max()) + 1.0);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };

    Dataset ds;
    ds.kind = kind;
    ds.label = label;
    ds.records.reserve(z_grid.size());
    for (std::size_t i = 0; i < z_grid.size(); ++i) {
        const double s = noise.sigma(z_grid[i], kind);
        const double draw = normal();  // one draw per record, noise-free included
        const double v = theory_vals[i].first + (s > 0.0 ? s * draw : 0.0);
        ds.records.push_back({z_grid[i], v, std::max(s, 1e-300)});
    }
    return ds;
}

inline Dataset synthesize_dataset(BoundaryModel model, const MaterialSpec& material,
                                  const GeometrySpec& geometry, const std::vector<double>& z_grid,
                                  const NoiseSpec& noise, std::uint64_t seed, double T = 300.0,
                                  const QuadratureSpec& quad = {},
                                  const PhysicalConstants& pc = kSiConstants) {
    const DatasetKind kind = geometry.kind == GeometrySpec::Kind::PlatePlate
                                 ? DatasetKind::Pressure
                                 : DatasetKind::Force;
    char label[128];
    std::snprintf(label, sizeof(label), "synthetic %s (seed %llu)", to_string(model),
                  static_cast<unsigned long long>(seed));
    return synthesize_dataset(make_theory_fn(kind, model, material, geometry, T, quad, pc), kind,
                              z_grid, noise, seed, label);
}

}  // namespace casimir
