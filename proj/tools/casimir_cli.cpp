// Command-line front end for the Casimir engine: pressure / energy / force /
// entropy curves, Nernst scans, theory-vs-experiment comparisons, the
// uniform-shift what-if, and synthetic dataset generation.
//
// Exit codes: 0 success, 1 numeric non-convergence, 2 validation/usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "casimir/casimir.hpp"
#include "casimir/serialize.hpp"

using nlohmann::json;

namespace {

struct CommonOptions {
    std::string model = "drude";
    std::string material = "au-19a";
    double T = 300.0;
    double rel_tol = 1e-9;
    int max_subdiv = 60;
    bool legacy_conversion = false;
    std::string format = "csv";
};

casimir::PhysicalConstants constants_for(const CommonOptions& opt) {
    casimir::PhysicalConstants pc;
    if (opt.legacy_conversion) pc.ev_to_radps = casimir::kLegacyEvToRadps;
    return pc;
}

casimir::QuadratureSpec quad_for(const CommonOptions& opt) {
    casimir::QuadratureSpec q;
    q.rel_tol = opt.rel_tol;
    q.max_subdivisions = opt.max_subdiv;
    q.validate();
    return q;
}

casimir::MaterialSpec resolve_material(const std::string& name) {
    if (name == "au-19a") return casimir::gold_19a();
    if (name == "au-7") return casimir::gold_7();
    if (name == "cu-example") return casimir::copper_example();

    std::ifstream in(name);
    if (!in) {
        throw casimir::validation_error("material '" + name +
                                        "' is not a built-in alias and not a readable file");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw casimir::validation_error("material config '" + name + "': " + e.what());
    }
    casimir::MaterialSpec m;
    m.name = j.value("name", name);
    if (!j.contains("omega_p_ev") || !j.contains("nu_ref_ev")) {
        throw casimir::validation_error("material config needs omega_p_ev and nu_ref_ev");
    }
    m.omega_p_ev = j["omega_p_ev"].get<double>();
    m.nu_ref_ev = j["nu_ref_ev"].get<double>();
    m.T_ref = j.value("T_ref", 300.0);
    m.nu_residual_ev = j.value("nu_residual_ev", 0.0);
    m.theta_debye = j.value("theta_debye", 165.0);
    m.extend_table_with_drude = j.value("extend_table_with_drude", true);
    if (j.contains("table_csv")) {
        std::ifstream tin(j["table_csv"].get<std::string>());
        if (!tin) {
            throw casimir::validation_error("material config: cannot open table_csv");
        }
        m.table = casimir::load_permittivity_table(tin);
    }
    m.validate();
    return m;
}

std::vector<double> separation_grid_nm(double z_nm, double z_from, double z_to, int z_steps) {
    std::vector<double> zs;
    if (z_nm != 0.0) {
        if (z_nm < 0.0) throw casimir::validation_error("--z must be positive (nm)");
        zs.push_back(z_nm);
        return zs;
    }
    if (!(z_from > 0.0) || !(z_to > z_from) || z_steps < 2) {
        throw casimir::validation_error(
            "specify --z, or a range with --z-from < --z-to and --z-steps >= 2");
    }
    for (int i = 0; i < z_steps; ++i) {
        zs.push_back(z_from + (z_to - z_from) * static_cast<double>(i) / (z_steps - 1));
    }
    return zs;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

casimir::NoiseSpec parse_noise(const std::string& text, casimir::DatasetKind kind) {
    if (text == "none") return casimir::NoiseSpec::none();
    if (text.rfind("const:", 0) == 0) {
        const double v = std::stod(text.substr(6));
        if (!(v >= 0.0)) throw casimir::validation_error("noise: const value must be >= 0");
        // CLI value is in output units (mPa / pN).
        return casimir::NoiseSpec::constant(v * (kind == casimir::DatasetKind::Pressure ? 1e-3 : 1e-12));
    }
    if (text == "ladder") return casimir::NoiseSpec::ladder();
    if (text.rfind("ladder:", 0) == 0) {
        const double s = std::stod(text.substr(7));
        if (!(s > 0.0)) throw casimir::validation_error("noise: ladder scale must be > 0");
        return casimir::NoiseSpec::ladder(s);
    }
    throw casimir::validation_error("noise: expected none | const:<value> | ladder[:scale]");
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-temperature Casimir computations (Lifshitz formalism) and a "
                 "theory-vs-experiment comparison harness"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    CommonOptions opt;
    app.add_option("--rel-tol", opt.rel_tol, "quadrature relative tolerance")
        ->capture_default_str();
    app.add_option("--max-subdiv", opt.max_subdiv, "quadrature subdivision budget")
        ->capture_default_str();
    app.add_flag("--legacy-conversion", opt.legacy_conversion,
                 "use the historic (erroneous) eV->rad/s coefficient 1.537e15 for "
                 "reproduction studies");

    // ---- scalar-quantity commands -------------------------------------
    double z_nm = 0.0, z_from = 0.0, z_to = 0.0, R_um = 0.0;
    int z_steps = 0;

    auto add_common = [&](CLI::App* cmd, bool with_T = true) {
        cmd->add_option("--model", opt.model, "drude|plasma|impedance|ideal|mim|tabulated")
            ->capture_default_str();
        cmd->add_option("--material", opt.material, "material alias (au-19a, au-7, cu-example) "
                                                    "or JSON config path")
            ->capture_default_str();
        if (with_T) cmd->add_option("--T", opt.T, "temperature, K")->capture_default_str();
        cmd->add_option("--format", opt.format, "csv|json")->capture_default_str();
    };
    auto add_z = [&](CLI::App* cmd) {
        cmd->add_option("--z", z_nm, "separation, nm");
        cmd->add_option("--z-from", z_from, "range start, nm");
        cmd->add_option("--z-to", z_to, "range end, nm");
        cmd->add_option("--z-steps", z_steps, "number of range points");
    };

    CLI::App* cmd_pressure = app.add_subcommand("pressure", "plate-plate Casimir pressure");
    add_common(cmd_pressure);
    add_z(cmd_pressure);

    CLI::App* cmd_energy = app.add_subcommand("energy", "free energy per unit area "
                                                        "(--T 0 gives the zero-temperature energy)");
    add_common(cmd_energy);
    add_z(cmd_energy);
    bool dissipative_t0 = false;
    cmd_energy->add_flag("--dissipative-t0", dissipative_t0,
                         "allow T=0 Drude evaluation with residual relaxation");

    CLI::App* cmd_force = app.add_subcommand("force", "sphere-plate force (proximity-force "
                                                      "approximation)");
    add_common(cmd_force);
    add_z(cmd_force);
    cmd_force->add_option("--R", R_um, "sphere radius, um")->required();

    CLI::App* cmd_entropy = app.add_subcommand("entropy", "entropy per unit area, S = -dF/dT");
    add_common(cmd_entropy);
    add_z(cmd_entropy);

    CLI::App* cmd_nernst = app.add_subcommand("nernst", "Nernst heat theorem scan (JSON verdict)");
    add_common(cmd_nernst, /*with_T=*/false);
    cmd_nernst->add_option("--z", z_nm, "separation, nm")->required();
    std::string grid_text = "20,15,10,5,3,2";
    cmd_nernst->add_option("--grid", grid_text, "descending temperature grid, K")
        ->capture_default_str();

    // ---- comparison harness -------------------------------------------
    std::string data_path, kind_text = "pressure", diff_out, band_out;
    double level = 0.95, bin_width_nm = 10.0, zlo_nm = 0.0, zhi_nm = 0.0, dz_nm = 0.0;

    auto add_compare_opts = [&](CLI::App* cmd) {
        add_common(cmd);
        cmd->add_option("--data", data_path, "experimental CSV path")->required();
        cmd->add_option("--kind", kind_text, "pressure|force")->capture_default_str();
        cmd->add_option("--R", R_um, "sphere radius, um (force datasets)");
        cmd->add_option("--level", level, "confidence level: 0.95 or 0.99")->capture_default_str();
        cmd->add_option("--bin-width", bin_width_nm, "band bin width, nm")->capture_default_str();
        cmd->add_option("--z-lo", zlo_nm, "verdict range start, nm (default: data range)");
        cmd->add_option("--z-hi", zhi_nm, "verdict range end, nm (default: data range)");
        cmd->add_option("--diff-out", diff_out, "write difference series CSV here");
        cmd->add_option("--band-out", band_out, "write confidence band CSV here");
    };

    CLI::App* cmd_compare = app.add_subcommand("compare", "theory minus experiment, confidence "
                                                          "band, exclusion verdict (JSON)");
    add_compare_opts(cmd_compare);

    CLI::App* cmd_shift = app.add_subcommand("shift-scan", "compare after shifting all dataset "
                                                           "separations by --dz");
    add_compare_opts(cmd_shift);
    cmd_shift->add_option("--dz", dz_nm, "uniform separation shift, nm")->required();

    // ---- synthetic data -------------------------------------------------
    std::string noise_text = "none";
    std::uint64_t seed = 1;
    int n_points = 0;
    CLI::App* cmd_synth = app.add_subcommand("synth", "synthesize a dataset from a theory curve");
    add_common(cmd_synth);
    cmd_synth->add_option("--kind", kind_text, "pressure|force")->capture_default_str();
    cmd_synth->add_option("--R", R_um, "sphere radius, um (force datasets)");
    cmd_synth->add_option("--z-from", z_from, "grid start, nm")->required();
    cmd_synth->add_option("--z-to", z_to, "grid end, nm")->required();
    cmd_synth->add_option("--n", n_points, "number of grid points")->required();
    cmd_synth->add_option("--noise", noise_text, "none | const:<mPa-or-pN> | ladder[:scale]")
        ->capture_default_str();
    cmd_synth->add_option("--seed", seed, "RNG seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const casimir::PhysicalConstants pc = constants_for(opt);
        const casimir::QuadratureSpec quad = quad_for(opt);
        const casimir::MaterialSpec material = resolve_material(opt.material);
        const casimir::BoundaryModel model = casimir::parse_boundary_model(opt.model);
        const bool as_json = opt.format == "json";
        if (!as_json && opt.format != "csv") {
            throw casimir::validation_error("--format must be csv or json");
        }

        if (*cmd_pressure) {
            json rows = json::array();
            if (!as_json) std::printf("z_nm,T_K,model,P_mPa,err_mPa,l_max\n");
            for (double zn : separation_grid_nm(z_nm, z_from, z_to, z_steps)) {
                const auto p = casimir::pressure({zn * 1e-9, opt.T}, model, material, quad, pc);
                if (as_json) {
                    rows.push_back({{"z_m", zn * 1e-9},
                                    {"T_K", opt.T},
                                    {"model", opt.model},
                                    {"pressure_Pa", p.value},
                                    {"numeric_error_Pa", p.numeric_error},
                                    {"l_max", p.l_max_used}});
                } else {
                    std::printf("%s,%s,%s,%s,%s,%ld\n", fmt(zn).c_str(), fmt(opt.T).c_str(),
                                opt.model.c_str(), fmt(p.value * 1e3).c_str(),
                                fmt(p.numeric_error * 1e3).c_str(), p.l_max_used);
                }
            }
            if (as_json) std::cout << rows.dump(2) << "\n";
            return 0;
        }

        if (*cmd_energy) {
            json rows = json::array();
            if (!as_json) std::printf("z_nm,T_K,model,F_J_per_m2,err_J_per_m2,l_max\n");
            for (double zn : separation_grid_nm(z_nm, z_from, z_to, z_steps)) {
                casimir::EnergyResult f;
                if (opt.T == 0.0) {
                    f = casimir::zero_temperature_energy(zn * 1e-9, model, material, quad, pc,
                                                         dissipative_t0);
                } else {
                    f = casimir::free_energy_per_area({zn * 1e-9, opt.T}, model, material, quad, pc);
                }
                if (as_json) {
                    rows.push_back({{"z_m", zn * 1e-9},
                                    {"T_K", opt.T},
                                    {"model", opt.model},
                                    {"free_energy_J_per_m2", f.value},
                                    {"numeric_error_J_per_m2", f.numeric_error},
                                    {"l_max", f.l_max_used}});
                } else {
                    std::printf("%s,%s,%s,%s,%s,%ld\n", fmt(zn).c_str(), fmt(opt.T).c_str(),
                                opt.model.c_str(), fmt(f.value).c_str(),
                                fmt(f.numeric_error).c_str(), f.l_max_used);
                }
            }
            if (as_json) std::cout << rows.dump(2) << "\n";
            return 0;
        }

        if (*cmd_force) {
            json rows = json::array();
            if (!as_json) std::printf("z_nm,T_K,R_um,model,F_pN,err_pN,l_max\n");
            for (double zn : separation_grid_nm(z_nm, z_from, z_to, z_steps)) {
                const auto f = casimir::pfa_sphere_force({zn * 1e-9, opt.T}, R_um * 1e-6, model,
                                                         material, quad, pc);
                if (as_json) {
                    rows.push_back({{"z_m", zn * 1e-9},
                                    {"T_K", opt.T},
                                    {"R_m", R_um * 1e-6},
                                    {"model", opt.model},
                                    {"force_N", f.value},
                                    {"numeric_error_N", f.numeric_error},
                                    {"l_max", f.l_max_used}});
                } else {
                    std::printf("%s,%s,%s,%s,%s,%s,%ld\n", fmt(zn).c_str(), fmt(opt.T).c_str(),
                                fmt(R_um).c_str(), opt.model.c_str(), fmt(f.value * 1e12).c_str(),
                                fmt(f.numeric_error * 1e12).c_str(), f.l_max_used);
                }
            }
            if (as_json) std::cout << rows.dump(2) << "\n";
            return 0;
        }

        if (*cmd_entropy) {
            json rows = json::array();
            if (!as_json) std::printf("z_nm,T_K,model,S_J_per_K_m2,err_J_per_K_m2\n");
            for (double zn : separation_grid_nm(z_nm, z_from, z_to, z_steps)) {
                const auto s = casimir::entropy(zn * 1e-9, opt.T, model, material, quad, pc);
                if (as_json) {
                    rows.push_back({{"z_m", zn * 1e-9},
                                    {"T_K", opt.T},
                                    {"model", opt.model},
                                    {"entropy_J_per_K_m2", s.value},
                                    {"numeric_error", s.numeric_error}});
                } else {
                    std::printf("%s,%s,%s,%s,%s\n", fmt(zn).c_str(), fmt(opt.T).c_str(),
                                opt.model.c_str(), fmt(s.value).c_str(),
                                fmt(s.numeric_error).c_str());
                }
            }
            if (as_json) std::cout << rows.dump(2) << "\n";
            return 0;
        }

        if (*cmd_nernst) {
            const auto verdict = casimir::nernst_scan(z_nm * 1e-9, model, material,
                                                      parse_grid(grid_text), quad, pc);
            std::cout << casimir::to_json(verdict).dump(2) << "\n";
            return 0;
        }

        if (*cmd_compare || *cmd_shift) {
            const auto kind = kind_text == "force" ? casimir::DatasetKind::Force
                                                   : casimir::DatasetKind::Pressure;
            std::ifstream in(data_path);
            if (!in) throw casimir::validation_error("cannot open dataset '" + data_path + "'");
            casimir::Dataset ds = casimir::load_dataset(in, kind);
            if (*cmd_shift) ds = casimir::apply_separation_shift(ds, dz_nm * 1e-9);

            casimir::GeometrySpec geo;
            if (kind == casimir::DatasetKind::Force) {
                geo = {casimir::GeometrySpec::Kind::SpherePlate, R_um * 1e-6};
            }
            const auto series =
                casimir::theory_minus_experiment(ds, model, material, geo, opt.T, quad, pc);
            const auto band = casimir::confidence_band(series, level, bin_width_nm * 1e-9);
            const double zlo = zlo_nm > 0.0 ? zlo_nm * 1e-9 : ds.records.front().z;
            const double zhi = zhi_nm > 0.0 ? zhi_nm * 1e-9 : ds.records.back().z;
            const auto verdict = casimir::exclusion_verdict(band, zlo, zhi);

            if (!diff_out.empty()) {
                std::ofstream os(diff_out);
                if (!os) throw casimir::validation_error("cannot write '" + diff_out + "'");
                casimir::write_diff_csv(os, series);
            }
            if (!band_out.empty()) {
                std::ofstream os(band_out);
                if (!os) throw casimir::validation_error("cannot write '" + band_out + "'");
                casimir::write_band_csv(os, band, kind);
            }
            std::cout << casimir::to_json(verdict, model).dump(2) << "\n";
            return 0;
        }

        if (*cmd_synth) {
            const auto kind = kind_text == "force" ? casimir::DatasetKind::Force
                                                   : casimir::DatasetKind::Pressure;
            casimir::GeometrySpec geo;
            if (kind == casimir::DatasetKind::Force) {
                geo = {casimir::GeometrySpec::Kind::SpherePlate, R_um * 1e-6};
            }
            if (n_points < 1) throw casimir::validation_error("synth: --n must be >= 1");
            std::vector<double> grid;
            for (int i = 0; i < n_points; ++i) {
                grid.push_back((z_from + (z_to - z_from) * (n_points == 1 ? 0.0
                                                                          : static_cast<double>(i) /
                                                                                (n_points - 1))) *
                               1e-9);
            }
            const auto ds = casimir::synthesize_dataset(model, material, geo, grid,
                                                        parse_noise(noise_text, kind), seed, opt.T,
                                                        quad, pc);
            std::ostringstream os;
            casimir::write_dataset_csv(os, ds);
            std::cout << os.str();
            return 0;
        }

        throw casimir::validation_error("no command selected");
    } catch (const casimir::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const casimir::convergence_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
