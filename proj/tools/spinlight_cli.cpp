// Command-line front end for the spin-precession models.
//
//   run     propagate one configuration, write spin_timeseries.csv
//   sweep   propagate over a field or ellipticity grid, fit frequencies,
//           write sweep.csv with law-check summary lines
//   region  tabulate the perturbative field window over a wavelength range,
//           write region.csv
//   report  print the closed-form summary for a configuration
//
// Exit codes: 0 success, 2 configuration error, 3 numerical abort,
// 4 resonance guard.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <clocale>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "spinlight/spinlight.hpp"

using json = nlohmann::ordered_json;
using namespace spinlight;

namespace {

std::string constants_fingerprint(const PhysicalConstants& pc) {
    const std::string s = fmt_g17(pc.c) + "," + fmt_g17(pc.hbar) + "," +
                          fmt_g17(pc.m_e) + "," + fmt_g17(pc.q_e) + "," +
                          fmt_g17(pc.eps0) + "," + fmt_g17(pc.alpha_el);
    std::uint64_t h = 1469598103934665603ull;
    for (const char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json config_json(const RunConfig& rc) {
    json j;
    j["model"] = to_string(rc.model);
    j["lambda_nm"] = rc.lambda_nm;
    j["E_hat_Vpm"] = rc.E_hat_Vpm;
    j["eta_rad"] = rc.eta_rad;
    j["delta_T_cycles"] = rc.delta_T_cycles;
    j["T_cycles"] = rc.T_cycles;
    j["n_max"] = rc.n_max;
    j["scheme"] = to_string(rc.scheme);
    j["steps_per_cycle"] = rc.resolved_steps_per_cycle();
    j["sample_every_cycles"] = rc.sample_every_cycles;
    return j;
}

void write_manifest(const std::string& dir, const std::string& name,
                    const std::string& command, const json& config,
                    const std::vector<std::string>& outputs, double wall_ms,
                    const json& extra = json::object()) {
    json j;
    j["command"] = command;
    j["version"] = version_tag;
    j["constants_fingerprint"] = constants_fingerprint(constants());
    j["config"] = config;
    j["outputs"] = outputs;
    j["wall_ms"] = wall_ms;
    for (const auto& [k, v] : extra.items())
        j[k] = v;
    std::ofstream out(dir + "/" + name);
    if (!out)
        throw ConfigError("cannot write manifest in '" + dir + "'");
    out << j.dump(2) << "\n";
}

void write_timeseries_csv(const std::string& path, const TimeSeries& s) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    const bool density = !s.lambda_rho_quarter.empty();
    out << "t_cycles,s_z_over_hbar,norm";
    if (density)
        out << ",lambda_rho_quarter";
    out << "\n";
    for (std::size_t i = 0; i < s.t_cycles.size(); ++i) {
        out << fmt_g17(s.t_cycles[i]) << ',' << fmt_g17(s.s_z[i]) << ','
            << fmt_g17(s.norm[i]);
        if (density)
            out << ',' << fmt_g17(s.lambda_rho_quarter[i]);
        out << "\n";
    }
}

TimeSeries run_config(const RunConfig& rc) {
    rc.validate();
    return propagate(rc.model, rc.laser(), rc.n_max, rc.settings());
}

// predicted precession frequency used only to size sweep windows
double predicted_omega(const RunConfig& rc) {
    const LaserConfig l = rc.laser();
    const double base =
        (rc.model == Model::pauli_nonrel || rc.model == Model::pauli_rel)
            ? omega_pauli(l)
            : omega_dirac(l);
    const double s = std::max(std::abs(std::sin(rc.eta_rad)), 0.05);
    return base * s;
}

// extend the horizon so the fit window covers at least 0.55 predicted
// precession periods, and thin the sampling for very long runs
RunConfig size_for_fit(const RunConfig& rc) {
    RunConfig out = rc;
    const double pred = predicted_omega(rc);
    if (pred > 0.0) {
        const double period_cycles = rc.laser().omega() / pred;
        const double needed = std::ceil(0.55 * period_cycles + 2.0 * rc.delta_T_cycles);
        if (needed > out.T_cycles)
            out.T_cycles = needed;
    }
    const int thin = int(std::ceil(out.T_cycles / 600.0));
    if (thin > out.sample_every_cycles)
        out.sample_every_cycles = thin;
    return out;
}

std::string csv_safe(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n')
            c = ';';
    return s;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig rc = parse_run_config_file(config_path);
    const TimeSeries s = run_config(rc);
    write_timeseries_csv(out_dir + "/spin_timeseries.csv", s);
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    write_manifest(out_dir, "run_manifest.json", "run", config_json(rc),
                   {"spin_timeseries.csv"}, wall);
    std::cout << "wrote " << out_dir << "/spin_timeseries.csv (" << s.t_cycles.size()
              << " samples, final |norm-1| = " << fmt_g17(std::abs(s.final_norm() - 1.0))
              << ")\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& E_grid,
              const std::vector<double>& eta_grid, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig base = parse_run_config_file(config_path);
    if (E_grid.empty() == eta_grid.empty())
        throw ConfigError("sweep needs exactly one of --E-grid or --eta-grid");
    const bool over_E = !E_grid.empty();
    const std::vector<double>& grid = over_E ? E_grid : eta_grid;

    struct Row {
        double E_hat, eta;
        FrequencyFit fit;
        std::string error;
    };
    std::vector<Row> rows;
    json resolved = json::array();
    int n_ok = 0;
    for (const double g : grid) {
        RunConfig rc = base;
        if (over_E)
            rc.E_hat_Vpm = g;
        else
            rc.eta_rad = g;
        rc = size_for_fit(rc);
        Row row{rc.E_hat_Vpm, rc.eta_rad, {}, ""};
        try {
            rc.validate();
            const TimeSeries s = run_config(rc);
            row.fit = extract_precession_frequency(s);
            if (!row.fit.usable)
                row.error = "unusable fit (" + row.fit.method + ")";
            else
                ++n_ok;
        } catch (const std::runtime_error& e) {
            row.error = e.what();
        }
        resolved.push_back(config_json(rc));
        rows.push_back(row);
    }

    const std::string path = out_dir + "/sweep.csv";
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    out << "E_hat,eta,model,omega_fit,residual,error\n";
    for (const Row& r : rows) {
        out << fmt_g17(r.E_hat) << ',' << fmt_g17(r.eta) << ',' << to_string(base.model)
            << ',';
        if (r.error.empty())
            out << fmt_g17(r.fit.omega_fit) << ',' << fmt_g17(r.fit.residual_rms);
        else
            out << ',';
        out << ',' << csv_safe(r.error) << "\n";
    }
    if (over_E) {
        std::vector<std::pair<double, double>> pts;
        for (const Row& r : rows)
            if (r.error.empty())
                pts.emplace_back(r.E_hat, r.fit.omega_fit);
        try {
            const ScalingFit f = scaling_exponent(pts);
            out << "# scaling_exponent = " << fmt_g17(f.slope) << "\n";
            out << "# scaling_max_log_residual = " << fmt_g17(f.max_abs_residual) << "\n";
        } catch (const ConfigError& e) {
            out << "# scaling_exponent_error = " << csv_safe(e.what()) << "\n";
        }
    } else {
        std::vector<std::pair<double, double>> pts;
        for (const Row& r : rows)
            if (r.error.empty())
                pts.emplace_back(r.eta, r.fit.omega_fit);
        try {
            const EllipticityFit f = ellipticity_law(pts);
            out << "# sin_eta_max_rel_deviation = " << fmt_g17(f.max_rel_deviation)
                << "\n";
        } catch (const ConfigError& e) {
            out << "# sin_eta_law_error = " << csv_safe(e.what()) << "\n";
        }
    }
    out.close();

    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    json extra;
    extra["grid_parameter"] = over_E ? "E_hat_Vpm" : "eta_rad";
    extra["grid"] = grid;
    extra["resolved_points"] = resolved;
    write_manifest(out_dir, "sweep_manifest.json", "sweep", config_json(base),
                   {"sweep.csv"}, wall, extra);
    std::cout << "wrote " << path << " (" << rows.size() << " points, " << n_ok
              << " usable)\n";
    // per-point failures live in the error column; the command as a whole
    // fails only when not a single point produced a usable frequency
    return n_ok > 0 ? 0 : 3;
}

int cmd_region(double lambda_min_nm, double lambda_max_nm, int points, double cycles,
               const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(lambda_min_nm > 0.0) || !(lambda_max_nm >= lambda_min_nm))
        throw ConfigError("need 0 < --lambda-min-nm <= --lambda-max-nm");
    if (points < 2)
        throw ConfigError("--points must be >= 2");
    if (!(cycles > 0.0))
        throw ConfigError("--cycles must be positive");
    const std::string path = out_dir + "/region.csv";
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    out << "lambda,E_min,E_max,nonempty\n";
    for (int i = 0; i < points; ++i) {
        const double lam_nm =
            lambda_min_nm + (lambda_max_nm - lambda_min_nm) * double(i) / double(points - 1);
        const double lam = lam_nm * 1e-9;
        const PerturbativeBounds b = perturbative_bounds(lam, cycles);
        out << fmt_g17(lam) << ',' << fmt_g17(b.E_min) << ',' << fmt_g17(b.E_max) << ','
            << (b.nonempty ? 1 : 0) << "\n";
    }
    out.close();
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    json extra;
    extra["lambda_min_nm"] = lambda_min_nm;
    extra["lambda_max_nm"] = lambda_max_nm;
    extra["points"] = points;
    extra["cycles"] = cycles;
    write_manifest(out_dir, "region_manifest.json", "region", json::object(),
                   {"region.csv"}, wall, extra);
    std::cout << "wrote " << path << " (" << points << " points)\n";
    return 0;
}

int cmd_report(const std::string& config_path, const std::string& format) {
    const RunConfig rc = parse_run_config_file(config_path);
    const LaserConfig l = rc.laser();
    const PerturbativeSummary s = perturbative_summary(l, rc.T_cycles);
    const double period = l.period();
    const double flip_period_cycles = (s.Omega > 0.0) ? pi / (s.Omega * period) : 0.0;

    const U4Secular u4 = u4_dirac_secular(l);
    const double sx_part = 0.5 * (u4.M(0, 1) + u4.M(1, 0)).real();
    const double id_part = 0.5 * (u4.M(0, 0) + u4.M(1, 1)).real();
    const double sx_closed = 0.5 * s.Omega * std::sin(l.eta);
    const double u4_sx_ratio = (sx_closed != 0.0) ? sx_part / sx_closed : 0.0;
    const double u4_id_ratio = (s.Omega_phi != 0.0) ? id_part / s.Omega_phi : 0.0;
    const Eigen::Matrix2cd u2 = u2_dirac(1.0 / l.omega(), l);
    const double u2_offdiag = std::max(std::abs(u2(0, 1)), std::abs(u2(1, 0)));

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("lambda_nm", fmt_g17(rc.lambda_nm));
    kv.emplace_back("E_hat_Vpm", fmt_g17(rc.E_hat_Vpm));
    kv.emplace_back("eta_rad", fmt_g17(rc.eta_rad));
    kv.emplace_back("kappa", fmt_g17(s.kappa));
    kv.emplace_back("xi", fmt_g17(s.xi));
    kv.emplace_back("secondary_condition", fmt_g17(s.secondary_condition));
    kv.emplace_back("Omega_rad_s", fmt_g17(s.Omega));
    kv.emplace_back("Omega_phi_rad_s", fmt_g17(s.Omega_phi));
    kv.emplace_back("Omega_P_rad_s", fmt_g17(s.Omega_P));
    kv.emplace_back("flip_period_cycles", fmt_g17(flip_period_cycles));
    kv.emplace_back("E_min_Vpm", fmt_g17(s.E_min));
    kv.emplace_back("E_max_Vpm", fmt_g17(s.E_max));
    kv.emplace_back("window_nonempty", s.nonempty ? "1" : "0");
    kv.emplace_back("perturbative", s.perturbative ? "1" : "0");
    kv.emplace_back("u2_offdiag_max", fmt_g17(u2_offdiag));
    kv.emplace_back("u4_sigma_x_over_closed_form", fmt_g17(u4_sx_ratio));
    kv.emplace_back("u4_identity_over_closed_form", fmt_g17(u4_id_ratio));

    if (format == "csv") {
        for (std::size_t i = 0; i < kv.size(); ++i)
            std::cout << kv[i].first << (i + 1 < kv.size() ? "," : "\n");
        for (std::size_t i = 0; i < kv.size(); ++i)
            std::cout << kv[i].second << (i + 1 < kv.size() ? "," : "\n");
    } else {
        for (const auto& [k, v] : kv)
            std::cout << k << " = " << v << "\n";
        if (!s.perturbative)
            std::cout << "warning: field outside the perturbative band (xi > 1)\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{
        "Electron spin precession in a standing elliptically polarized wave.\n"
        "Models: momentum-space Dirac, relativistic and nonrelativistic Pauli.\n"
        "Exit codes: 0 ok, 2 config error, 3 numerical abort, 4 resonance guard."};
    app.set_version_flag("--version", version_tag);
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", format = "table";
    std::vector<double> E_grid, eta_grid;
    double lam_min = 0.0, lam_max = 0.0, cycles = 0.0;
    int points = 50;

    auto* run = app.add_subcommand(
        "run", "Propagate one configuration and write spin_timeseries.csv\n"
               "(columns: t_cycles, s_z_over_hbar, norm, and for the Pauli models\n"
               "lambda_rho_quarter = lambda*rho(lambda/4); all dimensionless).");
    run->add_option("--config", config_path, "run configuration file")->required();
    run->add_option("--out-dir", out_dir, "output directory (default .)");

    auto* sweep = app.add_subcommand(
        "sweep", "Frequency fits over a field or ellipticity grid; writes sweep.csv\n"
                 "(columns: E_hat [V/m], eta [rad], model, omega_fit [rad/s],\n"
                 "residual [hbar], error) plus law-check summary comment lines.\n"
                 "Horizons are auto-extended to cover 0.55 predicted precession\n"
                 "periods per point.");
    sweep->add_option("--config", config_path, "base configuration file")->required();
    sweep->add_option("--E-grid", E_grid, "comma-separated peak fields, V/m")
        ->delimiter(',');
    sweep->add_option("--eta-grid", eta_grid, "comma-separated ellipticities, rad")
        ->delimiter(',');
    sweep->add_option("--out-dir", out_dir, "output directory (default .)");

    auto* region = app.add_subcommand(
        "region", "Perturbative field window over a wavelength range; writes\n"
                  "region.csv (columns: lambda [m], E_min [V/m], E_max [V/m],\n"
                  "nonempty {0,1}).");
    region->add_option("--lambda-min-nm", lam_min, "smallest wavelength, nm")->required();
    region->add_option("--lambda-max-nm", lam_max, "largest wavelength, nm")->required();
    region->add_option("--points", points, "grid size (default 50)");
    region->add_option("--cycles", cycles, "cycle budget for a full flip")->required();
    region->add_option("--out-dir", out_dir, "output directory (default .)");

    auto* report = app.add_subcommand(
        "report", "Closed-form summary for a configuration: scaled parameters,\n"
                  "precession frequencies, field window, and the measured gaps of\n"
                  "the fourth-order sum against the closed forms.");
    report->add_option("--config", config_path, "configuration file")->required();
    report->add_option("--format", format, "table (default) or csv")
        ->check(CLI::IsMember({"table", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int r = app.exit(e);
        return r == 0 ? 0 : 2;
    }

    try {
        if (run->parsed())
            return cmd_run(config_path, out_dir);
        if (sweep->parsed())
            return cmd_sweep(config_path, E_grid, eta_grid, out_dir);
        if (region->parsed())
            return cmd_region(lam_min, lam_max, points, cycles, out_dir);
        if (report->parsed())
            return cmd_report(config_path, format);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ResonanceError& e) {
        std::cerr << "resonance guard: " << e.what() << "\n";
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
