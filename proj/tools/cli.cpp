#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oplab/io.hpp"
#include "oplab/oplab.hpp"

namespace oplab::cli {
namespace {

using io::json;

// Human-readable numbers; tables and JSON keep full precision.
std::string short_num(double x) {
    if (!std::isfinite(x)) {
        return io::format_double(x);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string short_complex(complex z) {
    if (z.imag() == 0.0) {
        return short_num(z.real());
    }
    return short_num(z.real()) + (z.imag() < 0 ? "-" : "+") + short_num(std::abs(z.imag())) + "i";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw invalid_argument("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// "0.5", "[0.3, 0.4]" or "0.3,0.4".
complex parse_complex_arg(const std::string& text, const char* what) {
    auto j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        j = json::parse("[" + text + "]", nullptr, false);
    }
    if (j.is_discarded()) {
        throw invalid_argument(std::string(what) + ": cannot parse \"" + text + "\" as a complex number");
    }
    return io::complex_from_json(j, what);
}

// Inline JSON, or @path to read it from a file.
json json_arg(const std::string& text, const char* what) {
    if (!text.empty() && text.front() == '@') {
        return io::parse_json(read_file(text.substr(1)), what);
    }
    return io::parse_json(text, what);
}

unsigned worker_threads() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("OPLAB_THREADS");
    if (env == nullptr || *env == '\0') {
        return hw;
    }
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) {
        throw invalid_argument("OPLAB_THREADS must be a positive integer");
    }
    return static_cast<unsigned>(n);
}

// Structured output: --output FILE receives it and the summary still goes to
// stdout; without --output an explicit --format replaces the summary.
struct OutputOptions {
    std::string format;
    std::string path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--format", opts.format, "structured output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output,-o", opts.path, "write structured output to this file");
}

void emit(const OutputOptions& opts, std::ostream& out, const std::string& summary,
          const std::function<void(std::ostream&, const std::string&)>& write_data) {
    const std::string format = opts.format.empty() ? "json" : opts.format;
    if (!opts.path.empty()) {
        std::ofstream file(opts.path, std::ios::binary);
        if (!file) {
            throw invalid_argument("cannot write " + opts.path);
        }
        write_data(file, format);
        if (!file) {
            throw invalid_argument("write failed for " + opts.path);
        }
        out << summary;
    } else if (!opts.format.empty()) {
        write_data(out, format);
    } else {
        out << summary;
    }
}

void write_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

// ---------------------------------------------------------------------------

struct SymbolOptions {
    std::string map;
    std::string coeffs;
};

void add_symbol_options(CLI::App* cmd, SymbolOptions& opts, const std::string& prefix) {
    const std::string map_flag = prefix.empty() ? "--map" : "--" + prefix;
    const std::string coeff_flag = prefix.empty() ? "--coeffs" : "--" + prefix + "-coeffs";
    auto* map = cmd->add_option(map_flag, opts.map, "linear fractional map as JSON (or @file)");
    auto* coeffs = cmd->add_option(coeff_flag, opts.coeffs, "JSON file with Taylor coefficients");
    map->excludes(coeffs);
}

std::optional<SymbolMap> load_symbol(const SymbolOptions& opts, const char* name) {
    if (!opts.map.empty()) {
        return SymbolMap(io::map_from_json(json_arg(opts.map, name)));
    }
    if (!opts.coeffs.empty()) {
        auto input = io::coefficients_from_json(io::parse_json(read_file(opts.coeffs), name));
        return SymbolMap::from_coefficients(std::move(input.coeffs), input.radius);
    }
    return std::nullopt;
}

SymbolMap require_symbol(const SymbolOptions& opts, const char* name, const char* flag) {
    auto symbol = load_symbol(opts, name);
    if (!symbol) {
        throw invalid_argument(std::string("missing ") + flag);
    }
    return *symbol;
}

json symbol_to_json(const SymbolMap& s) {
    if (const auto* lft = s.lft()) {
        return io::map_to_json(*lft);
    }
    json coeffs = json::array();
    for (complex c : *s.coefficients()) {
        coeffs.push_back(io::complex_to_json(c));
    }
    return {{"coeffs", coeffs}};
}

struct GridOptions {
    std::string zeta = "1";
    std::string path = "radial";
    int kmin = 1;
    int kmax = 20;
    std::vector<double> radii;
};

void add_grid_options(CLI::App* cmd, GridOptions& opts) {
    cmd->add_option("--zeta", opts.zeta, "boundary point")->capture_default_str();
    cmd->add_option("--path", opts.path, "approach path kind")
        ->check(CLI::IsMember({"radial", "gamma"}))
        ->capture_default_str();
    cmd->add_option("--kmin", opts.kmin, "first k of the grid r = 1 - 2^-k")->capture_default_str();
    cmd->add_option("--kmax", opts.kmax, "last k of the grid r = 1 - 2^-k")->capture_default_str();
    cmd->add_option("--radii", opts.radii, "explicit radii instead of the geometric grid")->delimiter(',');
}

std::vector<double> grid_radii(const GridOptions& opts) {
    return opts.radii.empty() ? geometric_radii(opts.kmin, opts.kmax) : opts.radii;
}

PathKind path_kind(const GridOptions& opts) { return opts.path == "radial" ? PathKind::radial : PathKind::gamma_m; }

TruncationOrder checked_order(std::size_t n) {
    if (n < 2) {
        throw invalid_argument("truncation N must be at least 2");
    }
    return TruncationOrder(n);
}

// ---------------------------------------------------------------------------
// kernel

struct KernelArgs {
    std::string w;
    double alpha = 0.0;
    int order = 1;
    std::size_t n = 128;
    std::size_t show = 8;
    OutputOptions output;
};

void run_kernel(const KernelArgs& args, std::ostream& out) {
    const WeightIndex alpha(args.alpha);
    const KernelSpec spec(parse_complex_arg(args.w, "w"), alpha,
                          args.order == 0 ? KernelOrder::point : KernelOrder::derivative);
    const auto order = checked_order(args.n);
    const auto coeffs = kernel_coeffs(spec, order);

    double norm_value = 0.0;
    double series_norm = 0.0;
    std::optional<double> closed;
    if (spec.order == KernelOrder::derivative) {
        norm_value = deriv_kernel_norm(spec.w, alpha);
        series_norm = deriv_kernel_norm(spec.w, alpha, Evaluation::series);
        if (auto c = deriv_kernel_pairing_closed_form(spec.w, spec.w, alpha)) {
            closed = std::sqrt(c->real());
        }
    } else {
        norm_value = point_kernel_norm(spec.w, alpha);
        series_norm = point_kernel_norm(spec.w, alpha, Evaluation::series);
        if (args.alpha == 0.0 || args.alpha == 1.0) {
            closed = norm_value;
        }
    }
    const double truncated = norm(coeffs, alpha);

    std::ostringstream summary;
    summary << "kernel: order " << args.order << ", alpha " << short_num(args.alpha) << ", w " << short_complex(spec.w)
            << '\n';
    summary << "norm: " << short_num(norm_value) << '\n';
    summary << "series norm: " << short_num(series_norm) << '\n';
    if (closed) {
        const double rel = std::abs(series_norm - *closed) / *closed;
        summary << "closed form: " << short_num(*closed) << " (relative difference " << short_num(rel) << ", "
                << (rel < 1e-10 ? "match" : "MISMATCH") << ")\n";
    } else {
        summary << "closed form: none for this alpha\n";
    }
    summary << "truncated norm (N=" << args.n << "): " << short_num(truncated) << '\n';
    const std::size_t shown = std::min(args.show, coeffs.size());
    summary << "coefficients (first " << shown << " of " << coeffs.size() << "):\n";
    for (std::size_t n = 0; n < shown; ++n) {
        summary << "  b_" << n << " = " << short_complex(coeffs[n]) << '\n';
    }

    emit(args.output, out, summary.str(), [&](std::ostream& os, const std::string& format) {
        if (format == "csv") {
            const std::vector<std::string> header{"n", "re", "im"};
            io::write_csv_row(os, header);
            for (std::size_t n = 0; n < coeffs.size(); ++n) {
                const std::vector<std::string> row{std::to_string(n), io::format_double(coeffs[n].real()),
                                                   io::format_double(coeffs[n].imag())};
                io::write_csv_row(os, row);
            }
            return;
        }
        json coeff_json = json::array();
        for (complex c : coeffs) {
            coeff_json.push_back(io::complex_to_json(c));
        }
        write_json(os, {{"w", io::complex_to_json(spec.w)},
                        {"alpha", args.alpha},
                        {"order", args.order},
                        {"N", args.n},
                        {"norm", io::number_to_json(norm_value)},
                        {"series_norm", io::number_to_json(series_norm)},
                        {"closed_form_norm", closed ? io::number_to_json(*closed) : json(nullptr)},
                        {"truncated_norm", io::number_to_json(truncated)},
                        {"coefficients", coeff_json}});
    });
}

// ---------------------------------------------------------------------------
// compact

struct CompactArgs {
    std::string map;
    std::string psi;
    double gamma = 0.0;
    OutputOptions output;
};

void run_compact(const CompactArgs& args, std::ostream& out) {
    const WeightIndex gamma(args.gamma);
    const auto phi = io::map_from_json(json_arg(args.map, "map"));
    require_self_map(phi, "phi");
    std::optional<LinearFractionalMap> psi;
    if (!args.psi.empty()) {
        psi = io::map_from_json(json_arg(args.psi, "psi"));
        require_self_map(*psi, "psi");
    }

    struct Entry {
        std::string name;
        LinearFractionalMap map;
        double sup;
        bool compact;
    };
    std::vector<Entry> entries{{"phi", phi, sup_norm(phi), is_compact_composition(phi, gamma)}};
    if (psi) {
        entries.push_back({"psi", *psi, sup_norm(*psi), is_compact_composition(*psi, gamma)});
    }
    std::optional<DifferenceVerdict> verdict;
    if (psi) {
        verdict = compact_difference_verdict(phi, *psi, gamma);
    }

    std::ostringstream summary;
    for (const auto& e : entries) {
        summary << (psi ? e.name + " " : std::string()) << "compact: " << (e.compact ? "true" : "false")
                << " (sup norm " << short_num(e.sup) << ")\n";
    }
    if (verdict) {
        summary << "difference compact: " << (verdict->compact ? "true" : "false") << " ("
                << describe(verdict->reason) << ")\n";
    }

    emit(args.output, out, summary.str(), [&](std::ostream& os, const std::string& format) {
        if (format == "csv") {
            const std::vector<std::string> header{"symbol", "sup_norm", "compact"};
            io::write_csv_row(os, header);
            for (const auto& e : entries) {
                const std::vector<std::string> row{e.name, io::format_double(e.sup), e.compact ? "true" : "false"};
                io::write_csv_row(os, row);
            }
            if (verdict) {
                const std::vector<std::string> row{"difference", "", verdict->compact ? "true" : "false"};
                io::write_csv_row(os, row);
            }
            return;
        }
        json j = {{"gamma", args.gamma}};
        for (const auto& e : entries) {
            j[e.name] = {{"map", io::map_to_json(e.map)},
                         {"sup_norm", io::number_to_json(e.sup)},
                         {"compact", e.compact}};
        }
        if (verdict) {
            j["difference"] = {{"compact", verdict->compact}, {"reason", std::string(describe(verdict->reason))}};
        }
        write_json(os, j);
    });
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
    SymbolOptions phi;
    SymbolOptions psi;
    double alpha = 0.0;
    GridOptions grid;
    std::vector<double> m_values{2.0, 10.0, 100.0};
    OutputOptions output;
};

void run_scan(const ScanArgs& args, std::ostream& out) {
    const auto phi = require_symbol(args.phi, "map", "--map or --coeffs");
    const auto psi = require_symbol(args.psi, "psi", "--psi or --psi-coeffs");
    const WeightIndex alpha(args.alpha);
    if (args.alpha != 0.0 && args.alpha != -1.0) {
        throw invalid_argument("scan supports alpha = 0 and alpha = -1");
    }
    const complex zeta = parse_complex_arg(args.grid.zeta, "zeta");
    const auto radii = grid_radii(args.grid);
    const auto kind = path_kind(args.grid);

    std::vector<ApproachPath> paths;
    if (kind == PathKind::radial) {
        paths.push_back(make_path(zeta, kind, 1.0, radii));
    } else {
        if (args.m_values.empty()) {
            throw invalid_argument("gamma path needs at least one M");
        }
        for (double m : args.m_values) {
            paths.push_back(make_path(zeta, kind, m, radii));
        }
    }
    const auto scan = essential_lower_bound_scan(phi, psi, alpha, paths, worker_threads());

    std::ostringstream summary;
    summary << "rows: " << scan.rows.size() << " over " << paths.size() << " path(s)\n";
    summary << "kernel obstruction >= " << short_num(scan.best) << " (at w = " << short_complex(scan.witness)
            << ")\n";
    std::size_t offset = 0;
    bool all_small = true;
    bool all_decreasing = true;
    double worst_last = 0.0;
    for (const auto& path : paths) {
        const std::size_t count = path.points.size();
        bool decreasing = true;
        for (std::size_t i = offset + 1; i < offset + count; ++i) {
            decreasing = decreasing && scan.rows[i].q < scan.rows[i - 1].q;
        }
        const double last = scan.rows[offset + count - 1].q;
        worst_last = std::max(worst_last, last);
        all_small = all_small && last < 1e-2;
        all_decreasing = all_decreasing && decreasing;
        summary << "path " << (path.kind == PathKind::radial ? std::string("radial") : "gamma M=" + short_num(path.M))
                << ": " << count << " points";
        if (!path.skipped_radii.empty()) {
            summary << " (" << path.skipped_radii.size() << " radii skipped)";
        }
        summary << ", last Q " << short_num(last) << (decreasing ? ", decreasing" : ", not monotone") << '\n';
        offset += count;
    }
    if (all_small && all_decreasing) {
        summary << "Q -> 0 (last value < 1e-2: " << short_num(worst_last) << ")\n";
    } else {
        summary << "Q does not settle below 1e-2 along the scan (largest last value " << short_num(worst_last)
                << ")\n";
    }

    emit(args.output, out, summary.str(), [&](std::ostream& os, const std::string& format) {
        if (format == "csv") {
            io::write_scan_csv(os, scan.rows, std::span<const double>(scan.bound));
        } else {
            write_json(os, io::scan_to_json(scan.rows, std::span<const double>(scan.bound)));
        }
    });
}

// ---------------------------------------------------------------------------
// matrix

struct MatrixArgs {
    SymbolOptions phi;
    SymbolOptions psi;
    double alpha = 1.0;
    std::optional<double> beta;
    std::optional<double> t;
    std::size_t n = 128;
    double tol = 1e-10;
    std::size_t profile = 16;
    std::string dump;
    std::string dump_format = "csv";
    OutputOptions output;
};

void run_matrix(const MatrixArgs& args, std::ostream& out) {
    const auto phi = require_symbol(args.phi, "map", "--map or --coeffs");
    const auto psi = load_symbol(args.psi, "psi");
    const auto order = checked_order(args.n);
    if (!(args.tol > 0.0)) {
        throw invalid_argument("tolerance must be positive");
    }
    if (args.beta.has_value() != args.t.has_value()) {
        throw invalid_argument("--beta and --t must be given together");
    }
    const WeightIndex alpha(args.alpha);
    auto make = [&](WeightIndex a) { return psi ? assemble_difference(phi, *psi, a, order) : assemble(phi, a, order); };

    const auto op = make(alpha);
    const auto sigma = singular_values(op);
    const double norm_alpha = operator_norm(op, args.tol);
    const std::size_t k = std::min(args.profile, order.value());

    std::optional<InterpolationCheck> interp;
    if (args.beta) {
        const WeightIndex beta(*args.beta);
        interp = psi ? interpolation_inequality_check(phi, *psi, alpha, beta, *args.t, order)
                     : interpolation_inequality_check(phi, alpha, beta, *args.t, order);
    }

    if (!args.dump.empty()) {
        std::ofstream file(args.dump, std::ios::binary);
        if (!file) {
            throw invalid_argument("cannot write " + args.dump);
        }
        if (args.dump_format == "bin") {
            io::write_matrix_binary(file, op.entries());
        } else {
            io::write_matrix_csv(file, op.entries());
        }
    }

    const std::string what = psi ? "difference norm" : "norm";
    std::ostringstream summary;
    summary << what << " (alpha=" << short_num(args.alpha) << ", N=" << args.n << "): " << short_num(norm_alpha)
            << '\n';
    if (interp) {
        summary << what << " (beta=" << short_num(*args.beta) << "): " << short_num(interp->norm_beta) << '\n';
        summary << what << " (gamma=" << short_num(interp->gamma.alpha()) << ", t=" << short_num(*args.t)
                << "): " << short_num(interp->lhs) << '\n';
        summary << "interpolation bound: " << short_num(interp->rhs) << '\n';
        summary << "margin: " << short_num(interp->margin) << '\n';
    }
    if (k > 0) {
        summary << "singular values (top " << k << "):";
        for (std::size_t i = 0; i < k; ++i) {
            summary << ' ' << short_num(sigma[i]);
        }
        summary << '\n';
    }

    emit(args.output, out, summary.str(), [&](std::ostream& os, const std::string& format) {
        if (format == "csv") {
            const std::vector<std::string> header{"k", "sigma"};
            io::write_csv_row(os, header);
            for (std::size_t i = 0; i < k; ++i) {
                const std::vector<std::string> row{std::to_string(i + 1), io::format_double(sigma[i])};
                io::write_csv_row(os, row);
            }
            return;
        }
        json j = {{"symbol", symbol_to_json(phi)},
                  {"alpha", args.alpha},
                  {"N", args.n},
                  {"norm", io::number_to_json(norm_alpha)}};
        if (psi) {
            j["psi"] = symbol_to_json(*psi);
        }
        json profile = json::array();
        for (std::size_t i = 0; i < k; ++i) {
            profile.push_back(io::number_to_json(sigma[i]));
        }
        j["singular_values"] = profile;
        if (interp) {
            j["interpolation"] = {{"beta", *args.beta},
                                  {"t", *args.t},
                                  {"gamma", interp->gamma.alpha()},
                                  {"norm_alpha", io::number_to_json(interp->norm_alpha)},
                                  {"norm_beta", io::number_to_json(interp->norm_beta)},
                                  {"norm_gamma", io::number_to_json(interp->lhs)},
                                  {"bound", io::number_to_json(interp->rhs)},
                                  {"margin", io::number_to_json(interp->margin)}};
        }
        write_json(os, j);
    });
}

// ---------------------------------------------------------------------------
// jc

struct JcArgs {
    SymbolOptions phi;
    GridOptions grid;
    double m = 2.0;
    OutputOptions output;
};

void run_jc(const JcArgs& args, std::ostream& out) {
    const auto phi = require_symbol(args.phi, "map", "--map or --coeffs");
    const complex zeta = parse_complex_arg(args.grid.zeta, "zeta");
    const auto path = make_path(zeta, path_kind(args.grid), args.m, grid_radii(args.grid));
    const auto est = angular_derivative_estimate(phi, path.zeta, path);

    std::ostringstream summary;
    if (est.no_contact) {
        summary << "no contact: |phi| stays away from 1 along the path (d = inf)\n";
    }
    summary << "d_est: " << short_num(est.d_est) << " (extrapolated)\n";
    summary << "d_last: " << short_num(est.d_last) << " (trend " << short_num(est.trend) << ", growth exponent "
            << short_num(est.growth_exponent) << ")\n";
    summary << "eta_est: " << short_complex(est.eta_est) << '\n';
    if (est.exact) {
        summary << "exact: phi(zeta) = " << short_complex(est.exact->value) << ", |phi'(zeta)| = "
                << short_num(std::abs(est.exact->first)) << '\n';
    }

    emit(args.output, out, summary.str(), [&](std::ostream& os, const std::string& format) {
        if (format == "csv") {
            const std::vector<std::string> header{"r", "w_re", "w_im", "jc_quotient"};
            io::write_csv_row(os, header);
            for (std::size_t i = 0; i < path.points.size(); ++i) {
                const complex w = path.points[i];
                const std::vector<std::string> row{io::format_double(path.radii[i]), io::format_double(w.real()),
                                                   io::format_double(w.imag()),
                                                   io::format_double(jc_quotient(phi, w))};
                io::write_csv_row(os, row);
            }
            return;
        }
        json j = {{"zeta", io::complex_to_json(path.zeta)},
                  {"d_est", io::number_to_json(est.d_est)},
                  {"d_last", io::number_to_json(est.d_last)},
                  {"trend", io::number_to_json(est.trend)},
                  {"growth_exponent", io::number_to_json(est.growth_exponent)},
                  {"eta_est", io::complex_to_json(est.eta_est)},
                  {"no_contact", est.no_contact}};
        if (est.exact) {
            j["exact"] = {{"value", io::complex_to_json(est.exact->value)},
                          {"first", io::complex_to_json(est.exact->first)},
                          {"second", io::complex_to_json(est.exact->second)}};
        }
        write_json(os, j);
    });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Composition operators on weighted Dirichlet spaces"};
    app.name("oplab");
    app.require_subcommand(1);

    KernelArgs kernel_args;
    auto* kernel = app.add_subcommand("kernel", "reproducing kernel coefficients and norms");
    kernel->add_option("--w", kernel_args.w, "evaluation point, e.g. 0.5 or 0.3,0.4")->required();
    kernel->add_option("--alpha", kernel_args.alpha, "space index")->capture_default_str();
    kernel->add_option("--order", kernel_args.order, "0 point evaluation, 1 derivative evaluation")
        ->check(CLI::IsMember({0, 1}))
        ->capture_default_str();
    kernel->add_option("--N", kernel_args.n, "truncation order")->capture_default_str();
    kernel->add_option("--show", kernel_args.show, "coefficients to display")->capture_default_str();
    add_output_options(kernel, kernel_args.output);

    CompactArgs compact_args;
    auto* compact = app.add_subcommand("compact", "compactness verdicts for linear fractional symbols");
    compact->add_option("--map", compact_args.map, "phi as JSON (or @file)")->required();
    compact->add_option("--psi", compact_args.psi, "psi as JSON (or @file)");
    compact->add_option("--gamma", compact_args.gamma, "space index")->capture_default_str();
    add_output_options(compact, compact_args.output);

    ScanArgs scan_args;
    auto* scan = app.add_subcommand("scan", "boundary scan and kernel lower bound for C_phi - C_psi");
    add_symbol_options(scan, scan_args.phi, "");
    add_symbol_options(scan, scan_args.psi, "psi");
    scan->add_option("--alpha", scan_args.alpha, "space index, 0 or -1")->capture_default_str();
    add_grid_options(scan, scan_args.grid);
    scan->add_option("--M", scan_args.m_values, "gamma_M parameters")->delimiter(',')->capture_default_str();
    add_output_options(scan, scan_args.output);

    MatrixArgs matrix_args;
    auto* matrix = app.add_subcommand("matrix", "truncated operator norms and singular values");
    add_symbol_options(matrix, matrix_args.phi, "");
    add_symbol_options(matrix, matrix_args.psi, "psi");
    matrix->add_option("--alpha", matrix_args.alpha, "space index")->capture_default_str();
    matrix->add_option("--beta", matrix_args.beta, "second space index for the interpolation check");
    matrix->add_option("--t", matrix_args.t, "interpolation parameter in (0, 1)");
    matrix->add_option("--N", matrix_args.n, "truncation order")->capture_default_str();
    matrix->add_option("--tol", matrix_args.tol, "relative tolerance for the operator norm")->capture_default_str();
    matrix->add_option("--profile", matrix_args.profile, "number of singular values to report")
        ->capture_default_str();
    matrix->add_option("--dump", matrix_args.dump, "write the matrix to this file");
    matrix->add_option("--dump-format", matrix_args.dump_format, "matrix dump format")
        ->check(CLI::IsMember({"csv", "bin"}))
        ->capture_default_str();
    add_output_options(matrix, matrix_args.output);

    JcArgs jc_args;
    auto* jc = app.add_subcommand("jc", "angular derivative estimate along an approach path");
    add_symbol_options(jc, jc_args.phi, "");
    add_grid_options(jc, jc_args.grid);
    jc->add_option("--M", jc_args.m, "gamma_M parameter")->capture_default_str();
    add_output_options(jc, jc_args.output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }

    try {
        if (kernel->parsed()) {
            run_kernel(kernel_args, out);
        } else if (compact->parsed()) {
            run_compact(compact_args, out);
        } else if (scan->parsed()) {
            run_scan(scan_args, out);
        } else if (matrix->parsed()) {
            run_matrix(matrix_args, out);
        } else if (jc->parsed()) {
            run_jc(jc_args, out);
        }
    } catch (const no_convergence& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kSuccess;
}

}  // namespace oplab::cli
