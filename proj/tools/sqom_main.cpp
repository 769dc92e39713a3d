// Command-line driver: single-point evaluation, parameter sweeps,
// Wigner-projection export, and the numerical self-check suite.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sqom/errors.hpp"
#include "sqom/pipeline.hpp"
#include "sqom/selfcheck.hpp"
#include "sqom/wigner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitSelfCheck = 3;

sqom::SweepConfig load_config(const std::string& path, const std::string& format,
                              const std::string& output, int threads) {
    sqom::SweepConfig cfg = sqom::parse_config_file(path);
    if (!format.empty()) {
        if (format == "csv") cfg.format = sqom::OutputFormat::csv;
        else if (format == "json") cfg.format = sqom::OutputFormat::json;
        else throw sqom::ConfigError("format must be csv or json");
    }
    if (!output.empty()) cfg.output_path = output;
    if (threads > 0) cfg.threads = threads;
    return cfg;
}

void emit(const sqom::SweepConfig& cfg, const std::vector<sqom::SweepRow>& rows) {
    std::ostringstream body;
    if (cfg.format == sqom::OutputFormat::csv) {
        sqom::write_csv(body, cfg, rows);
    } else {
        sqom::write_json(body, cfg, rows);
    }
    if (cfg.output_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) throw sqom::ConfigError("cannot open output file '" + cfg.output_path + "'");
        out << body.str();
    }
}

std::optional<sqom::Quadrature> quadrature_from(const std::string& s) {
    using Q = sqom::Quadrature;
    for (Q q : {Q::X, Q::Y, Q::Q1, Q::P1, Q::Q2, Q::P2}) {
        if (s == sqom::quadrature_name(q)) return q;
    }
    return std::nullopt;
}

int run_eval(const std::string& config_path, const std::string& format,
             const std::string& output, int threads, bool verbose,
             const std::string& cm_path) {
    const sqom::SweepConfig cfg = load_config(config_path, format, output, threads);
    if (!cfg.axes.empty()) {
        throw sqom::ConfigError("eval expects a config without axes; use sweep");
    }
    const sqom::SweepRow row = sqom::eval_point(cfg, {});
    if (verbose) {
        std::cerr << "stable: " << (row.stable ? "yes" : "no")
                  << "  abscissa: " << sqom::format_number(row.abscissa) << "\n"
                  << "meanfield residual: " << sqom::format_number(row.meanfield_residual)
                  << "  iterations: " << row.meanfield_iterations
                  << "  |beta_p|/kappa: " << sqom::format_number(row.beta_p_over_kappa) << "\n"
                  << "steady-solve residual: " << sqom::format_number(row.solve_residual) << "\n";
        if (row.low_quality_factor) {
            std::cerr << "note: mechanical quality factor below 10; the Markovian"
                         " bath treatment is marginal here\n";
        }
    }
    emit(cfg, {row});
    if (!cm_path.empty()) {
        if (!row.cm) throw sqom::Error("no covariance matrix at this point");
        std::ofstream out(cm_path, std::ios::binary);
        if (!out) throw sqom::ConfigError("cannot open '" + cm_path + "'");
        sqom::write_cm_csv(out, *row.cm);
    }
    if (!row.error.empty()) return kExitNumerical;
    return kExitOk;
}

int run_sweep_cmd(const std::string& config_path, const std::string& format,
                  const std::string& output, int threads) {
    const sqom::SweepConfig cfg = load_config(config_path, format, output, threads);
    const std::vector<sqom::SweepRow> rows = sqom::run_sweep(cfg);
    emit(cfg, rows);
    return kExitOk;
}

int run_wigner(const std::string& config_path, std::vector<std::string> pairs,
               double half_width, int n, const std::string& out_dir) {
    const sqom::SweepConfig cfg = load_config(config_path, "", "", 0);
    if (!cfg.axes.empty()) {
        throw sqom::ConfigError("wigner expects a config without axes");
    }
    if (pairs.empty()) pairs = {"Q1P1", "Q2P2", "P1P2"};

    const sqom::PhysicalParams p = cfg.at();
    const sqom::SqueezedFrame frame = sqom::effective_frame(p);
    sqom::LinearizedModel model;
    if (cfg.mode == sqom::CouplingMode::reproduction) {
        model = sqom::build_linearized(p, frame, cfg.coupling_scale);
    } else {
        model = sqom::build_linearized(p, frame, sqom::solve_mean_field(p, frame));
    }
    const sqom::MomentSystem sys = sqom::build_drift(model);
    const sqom::CovarianceMatrix cm = sqom::assemble_cm(sqom::steady_moments(sys));

    nlohmann::json summary = nlohmann::json::array();
    for (const std::string& pair : pairs) {
        if (pair.size() < 2) throw sqom::ConfigError("bad quadrature pair '" + pair + "'");
        // names are one or two characters: X, Y, Q1, P1, Q2, P2
        size_t split = (pair[0] == 'X' || pair[0] == 'Y') ? 1 : 2;
        const auto qi = quadrature_from(pair.substr(0, split));
        const auto qj = quadrature_from(pair.substr(split));
        if (!qi || !qj) throw sqom::ConfigError("bad quadrature pair '" + pair + "'");

        const sqom::Gaussian2D g = sqom::project(cm, *qi, *qj);
        const sqom::WignerGrid grid = sqom::sample_grid(g, half_width, n);

        const std::string path = out_dir + "/wigner_" + pair + ".csv";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw sqom::ConfigError("cannot open '" + path + "'");
        out << "p_x,p_y,w\n";
        const double step = 2.0 * half_width / (n - 1);
        for (int jy = 0; jy < n; ++jy) {
            for (int jx = 0; jx < n; ++jx) {
                out << sqom::format_number(-half_width + step * jx) << ','
                    << sqom::format_number(-half_width + step * jy) << ','
                    << sqom::format_number(grid.w[static_cast<size_t>(jy) * n + jx]) << '\n';
            }
        }
        summary.push_back({{"pair", pair},
                           {"a", g.ellipse.a},
                           {"b", g.ellipse.b},
                           {"angle_rad", g.ellipse.angle},
                           {"squeezed", g.ellipse.squeezed},
                           {"peak", g.peak},
                           {"file", path}});
    }
    std::cout << summary.dump(2) << std::endl;
    return kExitOk;
}

int run_check(const std::string& fault, bool verbose) {
    sqom::FaultInjection fi = sqom::FaultInjection::none;
    if (fault == "drift") fi = sqom::FaultInjection::drift_perturb;
    else if (fault == "cm") fi = sqom::FaultInjection::cm_scale;
    else if (!fault.empty()) throw sqom::ConfigError("unknown fault '" + fault + "'");

    const auto results = sqom::run_self_check(fi);
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::printf("%-18s %s  (%.0f ms)%s%s\n", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.ms,
                    verbose || !r.pass ? "  " : "",
                    verbose || !r.pass ? r.detail.c_str() : "");
    }
    return all_pass ? kExitOk : kExitSelfCheck;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steady-state Gaussian correlations of a squeezed two-mirror cavity"};
    app.require_subcommand(1);

    std::string config_path, format, output, fault, cm_path;
    int threads = 0;
    bool verbose = false;
    double half_width = 4.0;
    int grid_n = 201;
    std::string out_dir = ".";
    std::vector<std::string> pairs;

    CLI::App* eval = app.add_subcommand("eval", "evaluate a single parameter point");
    eval->add_option("--config", config_path, "config file")->required();
    eval->add_option("--format", format, "csv or json");
    eval->add_option("--output", output, "output path (default stdout)");
    eval->add_option("--threads", threads, "worker threads");
    eval->add_option("--cm", cm_path, "also write the 6x6 covariance matrix CSV here");
    eval->add_flag("--verbose", verbose, "print stage diagnostics");

    CLI::App* sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
    sweep->add_option("--config", config_path, "config file")->required();
    sweep->add_option("--format", format, "csv or json");
    sweep->add_option("--output", output, "output path (default stdout)");
    sweep->add_option("--threads", threads, "worker threads");

    CLI::App* wigner = app.add_subcommand("wigner", "export Wigner projections");
    wigner->add_option("--config", config_path, "config file")->required();
    wigner->add_option("--pairs", pairs, "quadrature pairs, e.g. Q1P1 P1P2");
    wigner->add_option("--half-width", half_width, "grid half width");
    wigner->add_option("--n", grid_n, "grid points per side");
    wigner->add_option("--output-dir", out_dir, "directory for grid CSVs");

    CLI::App* check = app.add_subcommand("check", "run the numerical self-check suites");
    check->add_option("--inject-fault", fault, "drift | cm (sensitivity demo)");
    check->add_flag("--verbose", verbose, "print suite details");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return run_eval(config_path, format, output, threads, verbose, cm_path);
        if (sweep->parsed()) return run_sweep_cmd(config_path, format, output, threads);
        if (wigner->parsed()) return run_wigner(config_path, pairs, half_width, grid_n, out_dir);
        if (check->parsed()) return run_check(fault, verbose);
    } catch (const sqom::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const sqom::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}
