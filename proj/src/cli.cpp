#include "resolab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "resolab/farfield.hpp"
#include "resolab/herglotz.hpp"
#include "resolab/identities.hpp"
#include "resolab/io.hpp"
#include "resolab/plot.hpp"
#include "resolab/regions.hpp"

namespace resolab {

namespace fs = std::filesystem;

ConfigError::ConfigError(const std::string& field, const std::string& what)
    : std::invalid_argument(field + ": " + what), field_(field) {}

namespace {

constexpr double pi = std::numbers::pi;

const std::vector<std::string> identity_names{"coarea1", "coarea2", "hs-norm", "determinant", "ah-limit",
                                              "cross-check"};

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void require_dim(const RunConfig& c, bool allow_unset) {
    if (c.dim_n == 0 && allow_unset) {
        return;
    }
    if (c.dim_n != 2 && c.dim_n != 3) {
        throw ConfigError("--n", "must be 2 or 3");
    }
}

void require_kappas(const RunConfig& c, bool single) {
    if (c.kappas.empty()) {
        throw ConfigError("--kappa", "required");
    }
    if (single && c.kappas.size() != 1) {
        throw ConfigError("--kappa", "exactly one value expected");
    }
    for (double k : c.kappas) {
        if (!positive_finite(k)) {
            throw ConfigError("--kappa", "must be positive and finite");
        }
    }
}

void require_out(const std::string& value, const char* field) {
    if (value.empty()) {
        throw ConfigError(field, "required");
    }
}

void check_grid(RunConfig& c) {
    if (c.grid_m == 0) {
        c.grid_m = c.dim_n == 2 ? 60 : 12;
    }
    if (c.grid_m < 1) {
        throw ConfigError("--grid", "must be at least 1");
    }
    const double rows = std::pow(static_cast<double>(c.grid_m), c.dim_n);
    if (rows > static_cast<double>(default_gram_row_cap)) {
        throw ConfigError("--grid", "m^n = " + std::to_string(static_cast<long long>(rows)) +
                                        " rows exceeds the Gram memory cap of " +
                                        std::to_string(default_gram_row_cap));
    }
    const auto n = static_cast<std::size_t>(rows);
    if (c.eig_mode == "auto") {
        c.eig_mode = n <= full_eigen_row_cap ? "full" : "topk";
    }
    if (c.eig_mode == "full") {
        if (n > full_eigen_row_cap) {
            throw ConfigError("--eig", "full mode limited to N <= 5000 rows; use topk");
        }
    } else if (c.eig_mode == "topk") {
        if (c.top_k < 1 || c.top_k > n) {
            throw ConfigError("--k", "must lie in [1, N] with N = " + std::to_string(n));
        }
    } else {
        throw ConfigError("--eig", "must be auto, full or topk");
    }
}

EigenMode eigen_mode(const RunConfig& c) {
    if (c.eig_mode == "full") {
        return FullEigen{};
    }
    return TopK{c.top_k};
}

Truncation truncation(const RunConfig& c) {
    Truncation t;
    t.sigma_floor = c.sigma_floor;
    t.max_count = c.max_count;
    return t;
}

void check_truncation(const RunConfig& c) {
    if (!(c.sigma_floor >= 0.0) || !std::isfinite(c.sigma_floor)) {
        throw ConfigError("--floor", "must be non-negative and finite");
    }
    if (c.max_count && *c.max_count == 0) {
        throw ConfigError("--max-count", "must be positive");
    }
}

bool is_herglotz_operator(const std::string& op) { return op == "A" || op == "Q"; }

}  // namespace

void finalize_config(RunConfig& c) {
    if (c.threads < 0) {
        throw ConfigError("--threads", "must be non-negative");
    }
    switch (c.command) {
        case Command::herglotz:
            require_dim(c, false);
            require_kappas(c, true);
            if (c.operator_name.empty()) {
                c.operator_name = "A";
            }
            if (!is_herglotz_operator(c.operator_name)) {
                throw ConfigError("--operator", "must be A or Q");
            }
            check_truncation(c);
            require_out(c.out, "--out");
            break;
        case Command::farfield:
            require_dim(c, false);
            require_kappas(c, true);
            check_grid(c);
            require_out(c.out, "--out");
            break;
        case Command::sweep:
            require_dim(c, false);
            require_kappas(c, false);
            if (c.operator_name.empty()) {
                c.operator_name = c.normalized ? "Ftilde" : "F";
            }
            if (c.operator_name == "F" && c.normalized) {
                c.operator_name = "Ftilde";
            }
            if (is_herglotz_operator(c.operator_name)) {
                check_truncation(c);
            } else if (c.operator_name == "F" || c.operator_name == "Ftilde") {
                check_grid(c);
            } else {
                throw ConfigError("--operator", "must be A, Q, F or Ftilde");
            }
            require_out(c.out_dir, "--out-dir");
            break;
        case Command::verify: {
            if (std::find(identity_names.begin(), identity_names.end(), c.identity) == identity_names.end()) {
                throw ConfigError("identity", "must be one of coarea1, coarea2, hs-norm, determinant, ah-limit, cross-check");
            }
            require_dim(c, true);
            if (c.resolution < 4) {
                throw ConfigError("--resolution", "must be at least 4");
            }
            for (const auto& p : c.profiles) {
                try {
                    profile_by_name(p);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError("--h", e.what());
                }
            }
            if (c.identity == "determinant") {
                if (!c.seed) {
                    throw ConfigError("--seed", "required for randomized trials");
                }
                if (c.trials < 1) {
                    throw ConfigError("--trials", "must be positive");
                }
            }
            if (c.identity == "hs-norm" && c.kappas.empty()) {
                c.kappas = {1.0, 2.0};
            }
            if (c.identity == "ah-limit" && c.kappas.empty()) {
                c.kappas = {10.0, 40.0, 160.0};
            }
            if (c.identity == "cross-check") {
                if (c.dim_n == 2) {
                    throw ConfigError("--n", "cross-check is defined for n = 3 only");
                }
                if (c.kappas.empty()) {
                    c.kappas = {1.0, 5.0, 10.0};
                }
            }
            if (!c.kappas.empty()) {
                require_kappas(c, false);
            }
            if (c.identity == "ah-limit") {
                for (std::size_t i = 1; i < c.kappas.size(); ++i) {
                    if (!(c.kappas[i] > c.kappas[i - 1])) {
                        throw ConfigError("--kappa", "must be increasing for ah-limit");
                    }
                }
            }
            break;
        }
        case Command::fit:
            if (c.fit_mode != "loglog" && c.fit_mode != "stable" && c.fit_mode != "tail" &&
                c.fit_mode != "sigma1-kappa") {
                throw ConfigError("--mode", "must be loglog, stable, tail or sigma1-kappa");
            }
            if (c.inputs.empty() && c.input_dir.empty()) {
                throw ConfigError("inputs", "at least one input CSV or --dir required");
            }
            if (c.fit_mode != "sigma1-kappa" && c.inputs.size() != 1) {
                throw ConfigError("inputs", "mode " + c.fit_mode + " takes exactly one CSV");
            }
            if (c.transform != "log" && c.transform != "pow") {
                throw ConfigError("--transform", "must be log or pow");
            }
            if (c.transform == "pow" && !positive_finite(c.power)) {
                throw ConfigError("--power", "must be positive");
            }
            if ((c.window_from != 0 || c.window_to != 0) && !(c.window_from >= 1 && c.window_to > c.window_from)) {
                throw ConfigError("--from/--to", "need 1 <= from < to");
            }
            break;
        case Command::plot:
            if (c.inputs.empty() && c.input_dir.empty()) {
                throw ConfigError("inputs", "at least one input CSV or --dir required");
            }
            require_out(c.out, "--out");
            if (c.ref_slope && !std::isfinite(*c.ref_slope)) {
                throw ConfigError("--ref-slope", "must be finite");
            }
            break;
    }
}

namespace {

std::vector<fs::path> collect_inputs(const RunConfig& c) {
    std::vector<fs::path> paths(c.inputs.begin(), c.inputs.end());
    if (!c.input_dir.empty()) {
        std::vector<fs::path> found;
        std::error_code ec;
        for (const auto& entry : fs::directory_iterator(c.input_dir, ec)) {
            if (entry.is_regular_file() && entry.path().extension() == ".csv") {
                found.push_back(entry.path());
            }
        }
        if (ec) {
            throw IoError("cannot list directory '" + c.input_dir + "': " + ec.message());
        }
        std::sort(found.begin(), found.end());
        paths.insert(paths.end(), found.begin(), found.end());
    }
    return paths;
}

std::vector<XYPoint> sigma1_by_kappa(const std::vector<fs::path>& paths) {
    std::vector<XYPoint> pts;
    for (const auto& p : paths) {
        if (!fs::exists(sidecar_path(p))) {
            throw IoError("'" + p.string() + "' has no sidecar '" + sidecar_path(p).string() + "' carrying kappa");
        }
        const SpectrumRecord rec = load_spectrum(p);
        if (rec.entries.empty()) {
            throw ParseError(p.string(), 2, "spectrum is empty");
        }
        pts.push_back({rec.kappa, rec.entries.front().sigma});
    }
    std::sort(pts.begin(), pts.end(), [](const XYPoint& a, const XYPoint& b) { return a.x < b.x; });
    return pts;
}

SpectrumRecord compute_spectrum(const RunConfig& c, double kappa, const std::string& op) {
    if (op == "A") {
        return herglotz_singular_values(c.dim_n, kappa, truncation(c));
    }
    if (op == "Q") {
        return q_operator_spectrum(c.dim_n, kappa, truncation(c));
    }
    return farfield_singular_values(c.dim_n, kappa, GridSpec(c.dim_n, c.grid_m), op == "Ftilde", eigen_mode(c));
}

// Returns true when every value converged.
bool save_and_report(const SpectrumRecord& rec, const fs::path& path, std::ostream& out, std::ostream& err) {
    save_spectrum(rec, path);
    out << "wrote " << path.string() << " (" << rec.size() << " values)\n";
    const auto it = rec.method_meta.find("converged");
    if (it != rec.method_meta.end() && it->second != "true") {
        err << "error: eigensolver did not converge for " << path.string() << "; partial values written\n";
        return false;
    }
    return true;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::string op = c.command == Command::herglotz ? c.operator_name : (c.normalized ? "Ftilde" : "F");
    const SpectrumRecord rec = compute_spectrum(c, c.kappas.front(), op);
    return save_and_report(rec, c.out, out, err) ? exit_code::ok : exit_code::compute;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::error_code ec;
    fs::create_directories(c.out_dir, ec);
    if (ec) {
        throw IoError("cannot create directory '" + c.out_dir + "': " + ec.message());
    }
    bool all_converged = true;
    for (double kappa : c.kappas) {
        const SpectrumRecord rec = compute_spectrum(c, kappa, c.operator_name);
        char name[96];
        std::snprintf(name, sizeof name, "%s_n%d_k%g.csv", std::string(to_string(rec.tag)).c_str(), c.dim_n, kappa);
        all_converged = save_and_report(rec, fs::path(c.out_dir) / name, out, err) && all_converged;
    }
    return all_converged ? exit_code::ok : exit_code::compute;
}

// Per-identity acceptance rule for cmd_verify.
bool report_passes(const IdentityReport& r) {
    switch (r.name) {
        case IdentityName::coarea1:
        case IdentityName::coarea2:
        case IdentityName::hs_norm: return r.rel_diff <= 1e-6;
        case IdentityName::determinant: return r.rel_diff <= 1e-10;
        case IdentityName::cross_check: return r.rel_diff <= 1e-8 || std::max(r.lhs, r.rhs) < 1e-12;
        case IdentityName::ah_limit: {
            const double n = std::stod(r.parameters.at("n"));
            const double mu = std::stod(r.parameters.at("ell")) + 0.5 * (n - 2.0);
            return std::stod(r.parameters.at("gap_times_kappa")) <= (1.0 + mu * mu) / pi;
        }
    }
    return false;
}

std::vector<IdentityReport> run_identity(const RunConfig& c) {
    std::vector<IdentityReport> reports;
    std::vector<int> dims;
    if (c.dim_n != 0) {
        dims = {c.dim_n};
    } else {
        dims = {2, 3};
    }
    std::vector<NamedProfile> profiles;
    if (c.profiles.empty()) {
        profiles = smooth_profile_corpus();
    } else {
        for (const auto& p : c.profiles) {
            profiles.push_back({p, profile_by_name(p)});
        }
    }

    if (c.identity == "coarea1" || c.identity == "coarea2") {
        const int which = c.identity == "coarea1" ? 1 : 2;
        for (int n : dims) {
            for (const auto& p : profiles) {
                IdentityReport r = check_coarea(n, which, p.h, c.resolution);
                r.parameters["h"] = p.name;
                reports.push_back(std::move(r));
            }
        }
    } else if (c.identity == "hs-norm") {
        const RadialProfile gauss = [](double r) { return std::exp(-0.5 * r * r); };
        for (int n : dims) {
            for (double kappa : c.kappas) {
                IdentityReport r = check_hs_norm(n, kappa, gauss, c.resolution);
                r.parameters["h_hat"] = "exp(-r^2/2)";
                reports.push_back(std::move(r));
            }
        }
    } else if (c.identity == "determinant") {
        std::mt19937_64 rng(*c.seed);
        std::uniform_int_distribution<int> size_dist(1, 10);
        std::uniform_real_distribution<double> entry(-1.0, 1.0);
        for (std::size_t t = 0; t < c.trials; ++t) {
            const auto m = static_cast<std::size_t>(size_dist(rng));
            std::vector<double> u(m);
            std::vector<double> v(m);
            for (auto& x : u) {
                x = entry(rng);
            }
            for (auto& x : v) {
                x = entry(rng);
            }
            IdentityReport r = check_determinant(u, v);
            r.parameters["trial"] = std::to_string(t);
            r.parameters["seed"] = std::to_string(*c.seed);
            reports.push_back(std::move(r));
        }
    } else if (c.identity == "ah-limit") {
        for (int n : dims) {
            auto batch = check_ah_limit(n, c.ell, c.kappas);
            reports.insert(reports.end(), batch.begin(), batch.end());
        }
    } else if (c.identity == "cross-check") {
        for (double kappa : c.kappas) {
            auto batch = check_cross_formula(kappa, c.ell_max);
            reports.insert(reports.end(), batch.begin(), batch.end());
        }
    }
    return reports;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto reports = run_identity(c);
    std::ostringstream lines;
    std::size_t failed = 0;
    for (const auto& r : reports) {
        const bool pass = report_passes(r);
        failed += pass ? 0 : 1;
        lines << report_json(r, pass).dump() << '\n';
    }
    if (c.out.empty()) {
        out << lines.str();
    } else {
        write_text_file(c.out, lines.str());
    }
    err << c.identity << ": " << reports.size() << " reports, " << failed << " failed\n";
    return failed == 0 ? exit_code::ok : exit_code::verification;
}

int cmd_fit(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const auto paths = collect_inputs(c);
    if (paths.empty()) {
        throw ConfigError("inputs", "no CSV files found");
    }
    FitResult fit;
    if (c.fit_mode == "sigma1-kappa") {
        const auto pts = sigma1_by_kappa(paths);
        fit = fit_loglog(pts, {TransformKind::log_kappa, 1.0});
    } else if (c.fit_mode == "loglog") {
        const auto pts = read_xy_csv(paths.front());
        const XTransform t = c.transform == "pow" ? XTransform{TransformKind::j_pow, c.power}
                                                  : XTransform{TransformKind::log_j, 1.0};
        if (c.window_from == 0) {
            fit = fit_loglog(pts, t);
        } else {
            fit = fit_loglog(pts, t, {c.window_from, c.window_to});
        }
    } else {
        const SpectrumRecord rec = load_spectrum(paths.front());
        const RegionSummary summary = summarize_regions(rec);
        const auto& chosen = c.fit_mode == "stable" ? summary.stable_fit : summary.tail_fit;
        if (!chosen) {
            err << "error: " << c.fit_mode << " window collapsed (knee at " << summary.knee.index << ")\n";
            return exit_code::compute;
        }
        fit = *chosen;
    }
    const std::string text = fit_json(fit).dump(2) + "\n";
    if (c.out.empty()) {
        out << text;
    } else {
        write_text_file(c.out, text);
    }
    return exit_code::ok;
}

int cmd_plot(const RunConfig& c, std::ostream& out, std::ostream&) {
    const auto paths = collect_inputs(c);
    if (paths.empty()) {
        throw ConfigError("inputs", "no CSV files found");
    }
    std::vector<PlotSeries> series;
    PlotOptions options;
    options.logx = c.logx;
    options.logy = c.logy;
    options.title = c.title;
    if (c.sigma1_kappa) {
        series.push_back({"sigma_1", sigma1_by_kappa(paths)});
        options.xlabel = "kappa";
        options.ylabel = "sigma_1";
    } else {
        for (const auto& p : paths) {
            series.push_back({p.stem().string(), read_xy_csv(p)});
        }
    }
    if (c.ref_slope) {
        options.reference = ReferenceLine{*c.ref_slope, std::nullopt};
    }
    write_text_file(c.out, render_svg(series, options));
    out << "wrote " << c.out << '\n';
    return exit_code::ok;
}

int dispatch(RunConfig& c, std::ostream& out, std::ostream& err) {
    finalize_config(c);
    if (c.threads > 0) {
        omp_set_num_threads(c.threads);
    }
    switch (c.command) {
        case Command::herglotz:
        case Command::farfield: return cmd_spectrum(c, out, err);
        case Command::sweep: return cmd_sweep(c, out, err);
        case Command::verify: return cmd_verify(c, out, err);
        case Command::fit: return cmd_fit(c, out, err);
        case Command::plot: return cmd_plot(c, out, err);
    }
    return exit_code::usage;
}

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--threads", c.threads, "OpenMP thread budget (0: runtime default)");
}

void add_spectrum_options(CLI::App* sub, RunConfig& c) {
    sub->add_option("--n", c.dim_n, "space dimension (2 or 3)");
    sub->add_option("--floor", c.sigma_floor, "stop generating below this singular value");
    sub->add_option("--max-count", c.max_count, "stop after this many values (whole degree blocks)");
    sub->add_option("--grid", c.grid_m, "cells per axis of the [0,1]^n grid");
    sub->add_flag("--normalized", c.normalized, "scale far-field values by kappa^{-(n-1)/2}");
    sub->add_option("--eig", c.eig_mode, "auto, full or topk");
    sub->add_option("--k", c.top_k, "number of eigenvalues in topk mode");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Singular-value spectra of Herglotz and far-field operators"};
    app.name("resolab");
    // -h is taken by the radial-profile option of verify.
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1, 1);

    auto* herglotz = app.add_subcommand("herglotz", "Herglotz operator spectrum to CSV");
    add_spectrum_options(herglotz, c);
    herglotz->add_option("--kappa", c.kappas, "wave number")->expected(1);
    herglotz->add_option("--operator", c.operator_name, "A (normalized) or Q");
    herglotz->add_option("--out", c.out, "output CSV path");
    add_common(herglotz, c);

    auto* farfield = app.add_subcommand("farfield", "far-field operator spectrum to CSV");
    add_spectrum_options(farfield, c);
    farfield->add_option("--kappa", c.kappas, "wave number")->expected(1);
    farfield->add_option("--out", c.out, "output CSV path");
    add_common(farfield, c);

    auto* sweep = app.add_subcommand("sweep", "one spectrum CSV per kappa");
    add_spectrum_options(sweep, c);
    sweep->add_option("--kappa,--kappas", c.kappas, "wave numbers")->delimiter(',');
    sweep->add_option("--operator", c.operator_name, "A, Q, F or Ftilde");
    sweep->add_option("--out-dir", c.out_dir, "output directory");
    add_common(sweep, c);

    auto* verify = app.add_subcommand("verify", "check an identity, JSON lines out");
    verify->add_option("identity", c.identity, "coarea1, coarea2, hs-norm, determinant, ah-limit, cross-check")
        ->required();
    verify->add_option("--n", c.dim_n, "dimension (default: 2 and 3)");
    verify->add_option("--h", c.profiles, "radial profile: const, gauss, quadratic, cos");
    verify->add_option("--kappa,--kappas", c.kappas, "wave numbers")->delimiter(',');
    verify->add_option("--resolution", c.resolution, "sphere quadrature resolution");
    verify->add_option("--trials", c.trials, "random determinant trials");
    verify->add_option("--seed", c.seed, "RNG seed (required for determinant)");
    verify->add_option("--ell", c.ell, "degree for ah-limit");
    verify->add_option("--ellmax", c.ell_max, "largest degree for cross-check");
    verify->add_option("--out", c.out, "JSON lines path (default stdout)");
    add_common(verify, c);

    auto* fit = app.add_subcommand("fit", "least-squares fit, JSON out");
    fit->add_option("inputs", c.inputs, "input CSV files");
    fit->add_option("--dir", c.input_dir, "directory of spectrum CSVs (sigma1-kappa)");
    fit->add_option("--mode", c.fit_mode, "loglog, stable, tail or sigma1-kappa");
    fit->add_option("--transform", c.transform, "log or pow (loglog mode)");
    fit->add_option("--power", c.power, "exponent for --transform pow");
    fit->add_option("--from", c.window_from, "first row of the window (1-based)");
    fit->add_option("--to", c.window_to, "last row of the window (inclusive)");
    fit->add_option("--out", c.out, "JSON path (default stdout)");
    add_common(fit, c);

    auto* plot = app.add_subcommand("plot", "SVG line plot of CSV series");
    plot->add_option("inputs", c.inputs, "input CSV files");
    plot->add_option("--dir", c.input_dir, "directory of CSVs");
    plot->add_flag("--logx", c.logx, "logarithmic x axis");
    plot->add_flag("--logy", c.logy, "logarithmic y axis");
    plot->add_flag("--sigma1-kappa", c.sigma1_kappa, "plot the leading value against kappa");
    plot->add_option("--ref-slope", c.ref_slope, "dashed reference line with this slope");
    plot->add_option("--title", c.title, "plot title");
    plot->add_option("--out", c.out, "output SVG path");
    add_common(plot, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }
    if (herglotz->parsed()) c.command = Command::herglotz;
    if (farfield->parsed()) c.command = Command::farfield;
    if (sweep->parsed()) c.command = Command::sweep;
    if (verify->parsed()) c.command = Command::verify;
    if (fit->parsed()) c.command = Command::fit;
    if (plot->parsed()) c.command = Command::plot;

    try {
        return dispatch(c, out, err);
    } catch (const ConfigError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const ComputeError& e) {
        err << "compute error: " << e.what() << '\n';
        return exit_code::compute;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return exit_code::compute;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_code::compute;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_code::usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::compute;
    }
}

}  // namespace resolab
