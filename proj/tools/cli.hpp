#pragma once

// Command-line front end. run() is kept separate from main() so the tests can
// drive it in-process.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gkcs/gkcs.hpp"

namespace gkcs::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kConfigError = 2, kBudgetFailure = 3 };

enum class Format { json, csv, svg };

struct Grid {
    double start = 0.0;
    double stop = 5.0;
    double step = 0.1;

    std::vector<double> points() const {
        std::vector<double> xs;
        const auto count = static_cast<long>(std::floor((stop - start) / step * (1.0 + 1e-12))) + 1;
        for (long i = 0; i < count; ++i) xs.push_back(start + static_cast<double>(i) * step);
        return xs;
    }
};

inline Grid parse_grid(const std::string& text) {
    Grid g;
    char c1 = 0;
    char c2 = 0;
    std::istringstream in(text);
    if (!(in >> g.start >> c1 >> g.stop >> c2 >> g.step) || c1 != ':' || c2 != ':' || !in.eof())
        throw DomainError("--x expects start:stop:step, got '" + text + "'");
    if (!std::isfinite(g.start) || !std::isfinite(g.stop) || !(g.step > 0.0) || g.stop < g.start || g.start < 0.0)
        throw DomainError("--x needs 0 <= start <= stop and step > 0");
    if ((g.stop - g.start) / g.step > 1e6) throw DomainError("--x grid has more than 1e6 points");
    return g;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline std::string num(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_num(double v) { return std::isfinite(v) ? num(v) : "null"; }

inline std::string json_str(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

/// Quotes a CSV text field when it contains a delimiter, quote or newline.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// Column-oriented numeric table shared by the csv, json and svg writers.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& out, const Table& t) {
    for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << t.columns[j];
    out << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << num(r[j]);
        out << '\n';
    }
}

inline std::string json_rows(const Table& t, const std::string& indent) {
    std::string s = "[";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        s += i ? ",\n" : "\n";
        s += indent + "  {";
        for (std::size_t j = 0; j < t.columns.size(); ++j)
            s += (j ? ", " : "") + json_str(t.columns[j]) + ": " + json_num(t.rows[i][j]);
        s += "}";
    }
    return s + (t.rows.empty() ? "]" : "\n" + indent + "]");
}

inline std::string json_params(const ModelParams& p) {
    return "{\"nu\": " + json_num(p.nu()) + ", \"beta\": " + json_num(p.beta()) + ", \"s\": " + json_num(p.s()) +
           ", \"L\": " + json_num(p.L()) + "}";
}

/// Static line chart: column 0 on the horizontal axis, the listed columns as
/// polylines. The table itself is embedded as CSV in a metadata block.
inline void write_svg(std::ostream& out, const Table& t, const std::vector<std::size_t>& series,
                      const std::string& title, bool bars = false) {
    constexpr double W = 640.0;
    constexpr double H = 400.0;
    constexpr double margin = 50.0;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& r : t.rows) {
        xmin = std::min(xmin, r[0]);
        xmax = std::max(xmax, r[0]);
        for (auto j : series)
            if (std::isfinite(r[j])) {
                ymin = std::min(ymin, r[j]);
                ymax = std::max(ymax, r[j]);
            }
    }
    // Bars get half a slot of room on each side and grow from y = 0.
    double slot = 1.0;
    if (bars) {
        ymin = std::min(ymin, 0.0);
        ymax = std::max(ymax, 0.0);
        if (t.rows.size() > 1 && xmax > xmin) slot = (xmax - xmin) / static_cast<double>(t.rows.size() - 1);
        xmin -= slot / 2;
        xmax += slot / 2;
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (W - 2 * margin); };
    auto py = [&](double y) { return H - margin - (y - ymin) / (ymax - ymin) * (H - 2 * margin); };
    auto f = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    out << "<metadata><![CDATA[\n";
    write_csv(out, t);
    out << "]]></metadata>\n";
    out << "<text x=\"" << margin << "\" y=\"25\" font-size=\"14\">" << title << "</text>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << H - margin << "\" x2=\"" << W - margin << "\" y2=\"" << H - margin
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << H - margin
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << margin << "\" y=\"" << H - margin + 18 << "\" font-size=\"11\">" << num(xmin) << "</text>\n";
    out << "<text x=\"" << W - margin << "\" y=\"" << H - margin + 18 << "\" font-size=\"11\" text-anchor=\"end\">"
        << num(xmax) << "</text>\n";
    out << "<text x=\"" << margin - 4 << "\" y=\"" << H - margin << "\" font-size=\"11\" text-anchor=\"end\">"
        << num(ymin) << "</text>\n";
    out << "<text x=\"" << margin - 4 << "\" y=\"" << margin + 4 << "\" font-size=\"11\" text-anchor=\"end\">"
        << num(ymax) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto j = series[k];
        const char* color = colors[k % 5];
        if (bars) {
            const double bw = 0.8 * slot / (xmax - xmin) * (W - 2 * margin);
            for (const auto& r : t.rows) {
                if (!std::isfinite(r[j])) continue;
                const double top = std::min(py(r[j]), py(0.0));
                out << "<rect x=\"" << f(px(r[0]) - bw / 2) << "\" y=\"" << f(top) << "\" width=\"" << f(bw)
                    << "\" height=\"" << f(std::abs(py(r[j]) - py(0.0))) << "\" fill=\"" << color << "\"/>\n";
            }
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
            bool first = true;
            for (const auto& r : t.rows) {
                if (!std::isfinite(r[j])) continue;
                out << (first ? "" : " ") << f(px(r[0])) << "," << f(py(r[j]));
                first = false;
            }
            out << "\"/>\n";
        }
        out << "<text x=\"" << W - margin - 80 << "\" y=\"" << margin + 14 * k << "\" font-size=\"12\" fill=\"" << color
            << "\">" << t.columns[j] << "</text>\n";
    }
    out << "</svg>\n";
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string command;
    double nu = 0.0;
    double beta = 0.0;
    double s = 1.0;
    double L = 1.0;
    double gamma = 0.0;
    double z_re = 0.0;
    double z_im = 0.0;
    std::optional<unsigned> n_max;
    std::optional<double> tol;
    Format format = Format::json;
    std::string out_path;
    unsigned levels = 10;
    std::string grid = "0:5:0.1";
    std::string symbol = "z";
    unsigned alpha = 1;
    unsigned sigma = 0;

    ModelParams params() const { return ModelParams(nu, beta, s, L); }
    Complex z() const { return {z_re, z_im}; }
};

inline Table spectrum_table(const ModelParams& p, unsigned levels) {
    Table t{{"n", "E_n", "excitation", "rho"}, {}};
    for (unsigned n = 0; n < levels; ++n) {
        const auto sp = spectral_point(p, n);
        t.rows.push_back({double(n), sp.E_n, sp.excitation, sp.rho});
    }
    return t;
}

inline Table stats_table(const ModelParams& p, const Grid& g) {
    Table t{{"x", "mean_N", "Q", "F", "g2", "W"}, {}};
    for (double x : g.points()) {
        const double q = mandel_Q(p, x);
        // g2 is taken at its x -> 0 limit on the origin.
        const double a = 2.0 * p.nu() + 3.0;
        const double g2v = x == 0.0 ? a / (a + 1.0) : g2(p, x);
        t.rows.push_back({x, mean_N(p, x), q, q + 1.0, g2v, fubini_metric(p, x)});
    }
    return t;
}

inline Table geometry_table(const ModelParams& p, const Grid& g) {
    Table t{{"x", "W", "tangent_norm", "projection", "mean_N"}, {}};
    for (double x : g.points()) {
        const auto c = metric_components(p, x);
        t.rows.push_back({x, fubini_metric(p, x), c.tangent_norm, c.projection, mean_N(p, x)});
    }
    return t;
}

inline int emit_table(const RunConfig& cfg, std::ostream& out, const Table& t, const std::string& key,
                      const ModelParams& p, const std::vector<std::size_t>& series, const std::string& title,
                      bool bars = false, const std::string& extra_json = {}) {
    switch (cfg.format) {
        case Format::csv: write_csv(out, t); break;
        case Format::svg: write_svg(out, t, series, title, bars); break;
        case Format::json:
            out << "{\n  \"command\": " << json_str(cfg.command) << ",\n  \"params\": " << json_params(p) << ",\n"
                << extra_json << "  " << json_str(key) << ": " << json_rows(t, "  ") << "\n}\n";
            break;
    }
    return kOk;
}

inline int run_spectrum(const RunConfig& cfg, std::ostream& out) {
    const auto p = cfg.params();
    if (cfg.levels == 0) throw DomainError("--levels must be >= 1");
    return emit_table(cfg, out, spectrum_table(p, cfg.levels), "levels", p, {1}, "E_n", true);
}

// Coherent states, statistics and geometry live on the beta = 0 problem.
inline ModelParams coherent_params(const RunConfig& cfg) {
    const auto p = cfg.params();
    if (p.beta() != 0.0) throw DomainError(cfg.command + " requires --beta 0");
    return p;
}

inline int run_stats(const RunConfig& cfg, std::ostream& out) {
    const auto p = coherent_params(cfg);
    return emit_table(cfg, out, stats_table(p, parse_grid(cfg.grid)), "samples", p, {2, 4, 5}, "Q, g2, W vs x");
}

inline int run_geometry(const RunConfig& cfg, std::ostream& out) {
    const auto p = coherent_params(cfg);
    return emit_table(cfg, out, geometry_table(p, parse_grid(cfg.grid)), "samples", p, {1}, "W(x), metric per dzbar dz");
}

inline int run_cs(const RunConfig& cfg, std::ostream& out) {
    const auto p = coherent_params(cfg);
    const double tail = cfg.tol.value_or(kDefaultTailTolerance);
    const auto st = make_state(p, cfg.z(), cfg.gamma, tail, cfg.n_max.value_or(kDefaultTruncationCap));
    const double x = std::norm(cfg.z());

    Table t{{"n", "re", "im", "pdf"}, {}};
    for (std::size_t n = 0; n < st.coeffs.size(); ++n)
        t.rows.push_back({double(n), st.coeffs[n].real(), st.coeffs[n].imag(), std::norm(st.coeffs[n])});
    if (cfg.format != Format::json) {
        std::vector<std::size_t> series{3};
        return emit_table(cfg, out, t, "coefficients", p, series, "P(x, n)", true);
    }

    const auto v = quadrature_variances(st);
    const double q = mandel_Q(p, x);
    const double a = 2.0 * p.nu() + 3.0;
    std::ostringstream extra;
    extra << "  \"z\": [" << json_num(cfg.z_re) << ", " << json_num(cfg.z_im) << "],\n"
          << "  \"gamma\": " << json_num(cfg.gamma) << ",\n"
          << "  \"n_max\": " << st.n_max << ",\n"
          << "  \"tail_bound\": " << json_num(st.tail_bound) << ",\n"
          << "  \"norm_squared\": " << json_num(norm_squared(st)) << ",\n"
          << "  \"mean_H\": " << json_num(action_identity(st)) << ",\n"
          << "  \"mean_N\": " << json_num(mean_N(p, x)) << ",\n"
          << "  \"Q\": " << json_num(q) << ",\n"
          << "  \"F\": " << json_num(q + 1.0) << ",\n"
          << "  \"g2\": " << json_num(x == 0.0 ? a / (a + 1.0) : g2(p, x)) << ",\n"
          << "  \"statistics\": " << json_str(to_string(classify_poisson(q))) << ",\n"
          << "  \"W\": " << json_num(fubini_metric(p, x)) << ",\n"
          << "  \"sigma_X\": " << json_num(v.sigma_X) << ",\n"
          << "  \"sigma_P\": " << json_num(v.sigma_P) << ",\n"
          << "  \"delta_H\": " << json_num(v.delta_H) << ",\n"
          << "  \"squeezing\": " << json_str(to_string(v.label)) << ",\n";
    return emit_table(cfg, out, t, "coefficients", p, {}, "", false, extra.str());
}

inline OperatorMatrix build_operator(const RunConfig& cfg, const ModelParams& p) {
    const unsigned n_max = cfg.n_max.value_or(kDefaultMatrixNMax);
    if (n_max > kDefaultTruncationCap) throw DomainError("--nmax above the truncation cap");
    const double g = cfg.gamma;
    const quad::Options opt{cfg.tol.value_or(1e-11), quad::default_eval_budget()};
    const auto& sym = cfg.symbol;
    if (sym == "z") return op_z(p, g, n_max);
    if (sym == "zbar") return op_zbar(p, g, n_max);
    if (sym == "monomial") {
        if (cfg.alpha > 6 || cfg.sigma > 6) throw DomainError("--alpha and --sigma must be <= 6");
        return op_monomial(p, cfg.alpha, cfg.sigma, g, n_max);
    }
    if (sym == "identity") return op_radial(p, [](double) { return 1.0; }, n_max, opt, "1");
    if (sym == "modulus-squared") return op_radial(p, [](double x) { return x; }, n_max, opt, "|z|^2");
    if (sym == "cos-arg")
        return op_angular(p, [](int k) { return std::abs(k) == 1 ? Complex(0.5) : Complex(0.0); }, g, n_max, "cos(arg z)");
    if (sym == "a") return rescaled_boson(p, g, n_max).a;
    if (sym == "adag") return rescaled_boson(p, g, n_max).adag;
    throw DomainError("unknown --symbol '" + sym + "'");
}

inline int run_quantize(const RunConfig& cfg, std::ostream& out) {
    const auto p = coherent_params(cfg);
    const auto op = build_operator(cfg, p);
    const auto& A = op.entries;
    switch (cfg.format) {
        case Format::svg: throw DomainError("quantize supports --format json or csv");
        case Format::csv:
            out << "row,col,re,im\n";
            for (Eigen::Index i = 0; i < A.rows(); ++i)
                for (Eigen::Index j = 0; j < A.cols(); ++j)
                    out << i << "," << j << "," << num(A(i, j).real()) << "," << num(A(i, j).imag()) << '\n';
            return kOk;
        case Format::json:
            out << "{\n  \"command\": \"quantize\",\n  \"params\": " << json_params(p) << ",\n"
                << "  \"metadata\": {\"symbol\": " << json_str(to_string(op.symbol))
                << ", \"descriptor\": " << json_str(op.descriptor) << ", \"gamma\": " << json_num(op.gamma)
                << ", \"n_max\": " << op.n_max() << ", \"dim\": " << A.rows() << "},\n  \"entries\": [";
            for (Eigen::Index i = 0; i < A.rows(); ++i) {
                out << (i ? ",\n" : "\n") << "    [";
                for (Eigen::Index j = 0; j < A.cols(); ++j)
                    out << (j ? ", " : "") << "[" << json_num(A(i, j).real()) << ", " << json_num(A(i, j).imag()) << "]";
                out << "]";
            }
            out << "\n  ]\n}\n";
            return kOk;
    }
    return kOk;
}

inline int run_validate(const RunConfig& cfg, std::ostream& out) {
    const auto p = cfg.params();
    ValidationOptions o;
    o.gamma = cfg.gamma;
    if (cfg.z_re != 0.0 || cfg.z_im != 0.0) o.z = cfg.z();
    const auto rep = run_validation(p, o);
    const bool ok = rep.all_passed();
    auto status = [](const VerificationEntry& e) { return e.informational ? "info" : e.passed ? "pass" : "FAIL"; };
    if (cfg.format == Format::json) {
        out << "{\n  \"command\": \"validate\",\n  \"params\": " << json_params(p) << ",\n  \"all_passed\": "
            << (ok ? "true" : "false") << ",\n  \"entries\": [";
        const auto& es = rep.entries();
        for (std::size_t i = 0; i < es.size(); ++i)
            out << (i ? ",\n" : "\n") << "    {\"name\": " << json_str(es[i].name)
                << ", \"residual\": " << json_num(es[i].residual) << ", \"tolerance\": " << json_num(es[i].tolerance)
                << ", \"status\": " << json_str(status(es[i])) << ", \"note\": " << json_str(es[i].note) << "}";
        out << "\n  ]\n}\n";
    } else if (cfg.format == Format::csv) {
        out << "name,residual,tolerance,status\n";
        for (const auto& e : rep.entries())
            out << csv_field(e.name) << "," << num(e.residual) << "," << num(e.tolerance) << "," << status(e) << '\n';
    } else {
        throw DomainError("validate supports --format json or csv");
    }
    return ok ? kOk : kVerificationFailed;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
    if (cfg.command == "spectrum") return run_spectrum(cfg, out);
    if (cfg.command == "cs") return run_cs(cfg, out);
    if (cfg.command == "stats-scan") return run_stats(cfg, out);
    if (cfg.command == "geometry-scan") return run_geometry(cfg, out);
    if (cfg.command == "quantize") return run_quantize(cfg, out);
    if (cfg.command == "validate") return run_validate(cfg, out);
    throw DomainError("unknown command");
}

inline std::optional<std::string> check_budget_env() {
    const char* env = std::getenv("GKCS_EVAL_BUDGET");
    if (!env) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) return std::string("GKCS_EVAL_BUDGET must be a positive integer");
    return std::nullopt;
}

/// Parses args (without the program name), runs the command and returns the
/// process exit code. Results go to `out` unless --out names a file.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectrum, coherent states, statistics and quantization for the trigonometric Poschl-Teller potential"};
    app.name("gkcs");
    app.require_subcommand(1);
    RunConfig cfg;
    std::optional<std::string> format;

    const std::map<std::string, Format> formats{{"json", Format::json}, {"csv", Format::csv}, {"svg-plot-data", Format::svg}};
    auto common = [&](CLI::App* sub) {
        sub->add_option("--nu", cfg.nu, "nu >= 0")->capture_default_str();
        sub->add_option("--beta", cfg.beta, "beta >= 0")->capture_default_str();
        sub->add_option("--s", cfg.s, "energy scale s = 2M eps0 > 0")->capture_default_str();
        sub->add_option("--L", cfg.L, "box length > 0")->capture_default_str();
        sub->add_option("--format", format, "json | csv | svg-plot-data")
            ->check(CLI::IsMember({"json", "csv", "svg-plot-data"}));
        sub->add_option("--out", cfg.out_path, "write output to this file");
    };
    auto state = [&](CLI::App* sub) {
        sub->add_option("--gamma", cfg.gamma, "time-like label gamma")->capture_default_str();
        sub->add_option("--z-re", cfg.z_re, "Re z");
        sub->add_option("--z-im", cfg.z_im, "Im z");
    };

    auto* spectrum = app.add_subcommand("spectrum", "energy levels, excitations and rho_n");
    common(spectrum);
    spectrum->add_option("--levels", cfg.levels, "number of levels")->capture_default_str();

    auto* cs = app.add_subcommand("cs", "coherent state coefficients and observables");
    common(cs);
    state(cs);
    cs->add_option("--nmax", cfg.n_max, "truncation cap (default 400)");
    cs->add_option("--tol", cfg.tol, "tail tolerance in (0, 1e-6] (default 1e-12)");

    auto* stats = app.add_subcommand("stats-scan", "<N>, Q, F, g2, W over an x = |z|^2 grid");
    common(stats);
    stats->add_option("--x", cfg.grid, "start:stop:step")->capture_default_str();

    auto* geometry = app.add_subcommand("geometry-scan", "Fubini-Study metric W(x) and its two terms");
    common(geometry);
    geometry->add_option("--x", cfg.grid, "start:stop:step")->capture_default_str();

    auto* quantize = app.add_subcommand("quantize", "operator matrix of a symbol on the truncated Fock basis");
    common(quantize);
    quantize->add_option("--gamma", cfg.gamma, "time-like label gamma")->capture_default_str();
    quantize->add_option("--nmax", cfg.n_max, "largest Fock index (default 64)");
    quantize->add_option("--tol", cfg.tol, "quadrature tolerance for radial symbols (default 1e-11)");
    quantize->add_option("--symbol", cfg.symbol, "z | zbar | monomial | identity | modulus-squared | cos-arg | a | adag")
        ->capture_default_str();
    quantize->add_option("--alpha", cfg.alpha, "power of z for --symbol monomial")->capture_default_str();
    quantize->add_option("--sigma", cfg.sigma, "power of zbar for --symbol monomial")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "run the identity suite; exit 1 if any check fails");
    common(validate);
    state(validate);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kOk : kConfigError;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (format) cfg.format = formats.at(*format);
    else if (cfg.command == "validate") cfg.format = Format::csv;

    if (auto msg = check_budget_env()) {
        err << "error: " << *msg << '\n';
        return kConfigError;
    }

    try {
        if (cfg.out_path.empty()) return dispatch(cfg, out);
        std::ostringstream buffer;
        const int code = dispatch(cfg, buffer);
        std::ofstream file(cfg.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << cfg.out_path << '\n';
            return kConfigError;
        }
        file << buffer.str();
        return code;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const VerificationFailure& e) {
        err << "verification failure: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const BudgetExceededError& e) {
        err << "budget exceeded: " << e.what() << " (best " << num(e.best_estimate()) << ", err "
            << num(e.error_estimate()) << ")\n";
        return kBudgetFailure;
    } catch (const TruncationError& e) {
        err << "truncation failure: " << e.what() << '\n';
        return kBudgetFailure;
    } catch (const ConditioningError& e) {
        err << "conditioning failure: " << e.what() << '\n';
        return kBudgetFailure;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << '\n';
        return kBudgetFailure;
    }
}

}  // namespace gkcs::cli
