#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <variant>

#include "deformed/calculus.hpp"
#include "deformed/coherent.hpp"
#include "deformed/fock.hpp"
#include "deformed/series.hpp"
#include "deformed/verify.hpp"

namespace defosc {

namespace {

using json = nlohmann::ordered_json;
using namespace deformed;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

struct Output {
    std::string command;
    json scheme;
    json params = json::object();
    json results;
    json diagnostics = json::object();
    Table table;
    int exit_code = kOk;
};

// Bare `key=value` tokens become `--key value`. Scheme descriptors carry a
// family prefix before ':' and are left alone.
std::vector<std::string> normalize(const std::vector<std::string>& args) {
    static const std::regex key_value(R"(^([A-Za-z_][A-Za-z0-9_]*)=(.*)$)");
    std::vector<std::string> out;
    for (const auto& a : args) {
        std::smatch m;
        if (std::regex_match(a, m, key_value)) {
            out.push_back("--" + m[1].str());
            out.push_back(m[2].str());
        } else {
            out.push_back(a);
        }
    }
    return out;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_cell(const Cell& c) {
    if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
    if (const auto* s = std::get_if<std::string>(&c)) {
        if (s->find_first_of(",\"\n") == std::string::npos) return *s;
        std::string quoted = "\"";
        for (char ch : *s) {
            if (ch == '"') quoted += '"';
            quoted += ch;
        }
        return quoted + "\"";
    }
    const double v = std::get<double>(c);
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

// Display width of UTF-8 text.
std::size_t columns(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

std::string table_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
    return std::get<std::string>(c);
}

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
}

void write_table(const Table& t, std::ostream& os) {
    std::vector<std::vector<std::string>> text;
    std::vector<std::size_t> width(t.header.size());
    for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = columns(t.header[i]);
    for (const auto& row : t.rows) {
        auto& line = text.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(table_cell(row[i]));
            width[i] = std::max(width[i], columns(line.back()));
        }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << "  ";
            os << cells[i];
            if (i + 1 < cells.size()) os << std::string(width[i] - columns(cells[i]), ' ');
        }
        os << '\n';
    };
    emit(t.header);
    for (const auto& line : text) emit(line);
}

void write_output(const Output& o, const std::string& format, std::ostream& os) {
    if (format == "json") {
        json doc;
        doc["tool_version"] = kToolVersion;
        doc["command"] = o.command;
        doc["scheme"] = o.scheme;
        doc["params"] = o.params;
        doc["results"] = o.results;
        doc["diagnostics"] = o.diagnostics;
        os << doc.dump(2) << '\n';
    } else if (format == "csv") {
        write_csv(o.table, os);
    } else {
        write_table(o.table, os);
    }
}

DeformationScheme parse_scheme(const std::string& text) { return DeformationScheme::parse(text); }

// numbers

Output run_numbers(const DeformationScheme& s, long n_max) {
    if (n_max < 0) throw UsageError("n_max must be nonnegative");
    Output o;
    o.params["n_max"] = n_max;
    o.results = json::array();
    o.table.header = {"n", "phi", "phi_factorial", "f"};
    double factorial = 1.0;
    for (long n = 0; n <= n_max; ++n) {
        const double p = phi(s, n);
        if (n > 0) factorial *= p;
        const double f = n == 0 ? std::nan("") : nonlinearity_f(s, n);
        o.results.push_back({{"n", n}, {"phi", p}, {"phi_factorial", number(factorial)}, {"f", number(f)}});
        o.table.rows.push_back({n, p, factorial, f});
    }
    return o;
}

// exp

Output run_exp(const DeformationScheme& s, const std::vector<double>& xs) {
    if (xs.empty()) throw UsageError("exp needs at least one x value");
    Output o;
    o.params["x"] = xs;
    o.results = json::array();
    o.table.header = {"x", "value", "terms_used", "converged", "last_term_magnitude"};
    for (double x : xs) {
        const SeriesResult<double> r = phi_exp_series(s, x);
        const auto& d = r.diagnostics;
        o.results.push_back({{"input", x},
                             {"value", number(r.value)},
                             {"diagnostics",
                              {{"terms_used", d.terms_used},
                               {"converged", d.converged},
                               {"last_term_magnitude", d.last_term_magnitude}}}});
        o.table.rows.push_back({x, r.value, long(d.terms_used), long(d.converged), d.last_term_magnitude});
    }
    return o;
}

// spectrum

Output run_spectrum(const DeformationScheme& s, long n_max) {
    if (n_max < 1) throw UsageError("n_max must be at least 1");
    const SpectrumReport r = spectrum_report(s, n_max + 1);
    Output o;
    o.params["n_max"] = n_max;
    o.results = json::array();
    o.table.header = {"n", "E_n", "gap_n"};
    for (long n = 0; n <= n_max; ++n) {
        o.results.push_back({{"n", n}, {"E", r.levels[n]}, {"gap", r.gaps[n]}});
        o.table.rows.push_back({n, r.levels[n], r.gaps[n]});
    }
    o.diagnostics["band_top"] = number(r.band_top);
    o.diagnostics["band_width"] = number(r.band_width);
    return o;
}

// coherent

Output run_coherent(const DeformationScheme& s, double re, double im, std::optional<long> dim_opt,
                    std::optional<long> k_opt) {
    const std::complex<double> alpha(re, im);
    const Eigen::Index dim = dim_opt ? *dim_opt : default_coherent_dimension(s, alpha);
    if (dim < 4 || dim > kMaxFockDim) {
        throw UsageError("dim must lie in [4, " + std::to_string(kMaxFockDim) + "]");
    }
    const long k = k_opt ? *k_opt : long(dim);
    if (k < 1 || k > dim) throw UsageError("k must lie in [1, dim]");

    const CoherentState st = coherent_state(s, alpha, dim);
    const Eigen::VectorXcd v = st.vector();
    const NumberMoment m = expected_n(st);

    Output o;
    o.params["alpha_re"] = re;
    o.params["alpha_im"] = im;
    o.params["dim"] = long(dim);
    o.params["k"] = k;
    o.results = json::array();
    o.table.header = {"n", "re", "im", "probability"};
    for (long n = 0; n < k; ++n) {
        const double p = std::norm(v[n]);
        o.results.push_back({{"n", n}, {"re", v[n].real()}, {"im", v[n].imag()}, {"probability", p}});
        o.table.rows.push_back({n, v[n].real(), v[n].imag(), p});
    }
    o.diagnostics["norm_const"] = st.norm_const;
    o.diagnostics["eigen_residual"] = eigen_residual(st);
    o.diagnostics["truncation_residual"] = truncation_residual(st);
    o.diagnostics["expected_n"] = m.mean;
    o.diagnostics["tail_mass"] = m.tail_mass;
    return o;
}

// derive

struct TestFunction {
    std::string kind;  // monomial, tsallis-exp, series
    long degree = 0;
    double k = 0.0;
    RealSeries series;
};

TestFunction parse_function(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("function must be monomial:n, tsallis-exp:k or series:PATH");
    TestFunction f;
    f.kind = text.substr(0, colon);
    const std::string arg = text.substr(colon + 1);
    try {
        if (f.kind == "monomial") {
            std::size_t used = 0;
            f.degree = std::stol(arg, &used);
            if (used != arg.size() || f.degree < 0) throw UsageError("monomial degree must be a nonnegative integer");
            f.series = RealSeries::monomial(f.degree);
        } else if (f.kind == "tsallis-exp") {
            std::size_t used = 0;
            f.k = std::stod(arg, &used);
            if (used != arg.size() || !std::isfinite(f.k)) throw UsageError("tsallis-exp needs a finite k");
        } else if (f.kind == "series") {
            std::ifstream in(arg);
            if (!in) throw UsageError("cannot read series file " + arg);
            const json coeffs = json::parse(in);
            if (!coeffs.is_array() || coeffs.empty()) throw UsageError("series file must hold a JSON array of numbers");
            RealSeries::Coefficients c(static_cast<Eigen::Index>(coeffs.size()));
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (!coeffs[i].is_number()) throw UsageError("series file must hold a JSON array of numbers");
                c[static_cast<Eigen::Index>(i)] = coeffs[i].get<double>();
            }
            f.series = RealSeries(std::move(c));
        } else {
            throw UsageError("unknown function kind '" + f.kind + "'");
        }
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse function '" + text + "'");
    } catch (const json::exception& e) {
        throw UsageError(std::string("series file: ") + e.what());
    }
    return f;
}

std::vector<double> parse_grid(const std::string& text) {
    double lo = 0, hi = 0;
    long count = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &count, &tail) != 3 || count < 1) {
        throw UsageError("grid must be lo:hi:count");
    }
    std::vector<double> xs(count);
    for (long i = 0; i < count; ++i) xs[i] = count == 1 ? lo : lo + (hi - lo) * double(i) / double(count - 1);
    return xs;
}

// Order at which tsallis-exp is cut for the series path.
constexpr Eigen::Index kSeriesPathOrder = 400;

Output run_derive(const DeformationScheme& s, const std::string& function_text, std::vector<double> xs,
                  const std::string& grid_text) {
    if (!grid_text.empty()) {
        if (!xs.empty()) throw UsageError("give either x or grid, not both");
        xs = parse_grid(grid_text);
    }
    if (xs.empty()) throw UsageError("derive needs x or grid");
    const TestFunction fn = parse_function(function_text);
    const bool is_exp = fn.kind == "tsallis-exp";

    const bool tsallis = s.is<Tsallis>();
    const double q = tsallis ? s.as<Tsallis>().q : 1.0;

    // e_phi(kx) and its ordinary derivative.
    auto exp_value = [&](double x) {
        if (tsallis) return tsallis_exp_closed(q, fn.k * x);
        if (s.is<Boson>()) return std::exp(fn.k * x);
        return phi_exp_series(s, fn.k * x).value;
    };
    SampledFunction sampled;
    if (is_exp) {
        sampled.eval = exp_value;
        if (tsallis || s.is<Boson>()) {
            sampled.deriv = [&, qq = tsallis ? q : 1.0](double x) { return fn.k * std::pow(exp_value(x), qq); };
        }
    } else {
        RealSeries d = RealSeries::zero(std::max<Eigen::Index>(fn.series.order() - 1, 0));
        for (Eigen::Index n = 1; n <= fn.series.order(); ++n) d.coeffs()[n - 1] = double(n) * fn.series[n];
        sampled.eval = [p = fn.series](double x) { return p(x); };
        sampled.deriv = [d](double x) { return d(x); };
    }

    RealSeries taylor = fn.series;
    if (is_exp) {
        taylor = phi_exp_coefficients(s, kSeriesPathOrder);
        for (Eigen::Index n = 0; n <= kSeriesPathOrder; ++n) taylor.coeffs()[n] *= std::pow(fn.k, double(n));
    }
    const RealSeries derived = derivative_on_series(taylor, s);
    auto series_path = [&](double x) {
        if (is_exp && s.is_builtin()) {
            const double radius = radius_of_convergence(s);
            if (!(std::abs(fn.k * x) < radius)) {
                throw DivergenceError("series path needs |kx| inside the radius of convergence", radius);
            }
        }
        return derived(x);
    };

    std::string method;
    std::function<double(double)> apply;
    bool reduced = false;
    if (s.is<Boson>()) {
        method = "exact";
        apply = sampled.deriv;
    } else if (tsallis && q >= 1.0) {
        method = "quadrature";
        apply = [&](double x) {
            const QuadratureResult r = tsallis_derivative_quadrature(sampled, x, q);
            reduced = reduced || r.reduced_accuracy;
            return r.value;
        };
    } else if (s.is<QOsc>() || s.is<SymmetricQ>() || s.is<PQ>()) {
        method = "difference-quotient";
        apply = [&](double x) {
            if (x == 0.0) return series_path(x);
            if (s.is<QOsc>()) return jackson_derivative(sampled, x, s.as<QOsc>().q);
            if (s.is<SymmetricQ>()) return symmetric_derivative(sampled, x, s.as<SymmetricQ>().q);
            return pq_derivative(sampled, x, s.as<PQ>().p, s.as<PQ>().q);
        };
    } else {
        method = "series";
        apply = series_path;
    }

    auto reference = [&](double x) {
        if (is_exp) return fn.k * exp_value(x);
        return derived(x);
    };

    Output o;
    o.params["function"] = function_text;
    o.params["x"] = xs;
    o.results = json::array();
    o.table.header = {"x", "Df", "reference", "abs_err"};
    for (double x : xs) {
        const double df = apply(x);
        const double ref = reference(x);
        const double err = std::abs(df - ref);
        o.results.push_back({{"x", x}, {"Df", number(df)}, {"reference", number(ref)}, {"abs_err", number(err)}});
        o.table.rows.push_back({x, df, ref, err});
    }
    o.diagnostics["method"] = method;
    o.diagnostics["reduced_accuracy"] = reduced;
    return o;
}

// verify

Output run_verify(const std::string& suite, const std::string& scheme_text, const std::string& mutate) {
    if (suite != "all" && !is_suite_name(suite)) {
        throw UsageError("unknown suite '" + suite + "'; expected series, spectrum, coherent, calculus or all");
    }
    VerifyOptions options;
    Output o;
    o.params["suite"] = suite;
    if (!scheme_text.empty()) {
        options.scheme = parse_scheme(scheme_text);
        o.scheme = options.scheme->descriptor();
    }
    if (!mutate.empty()) {
        long index = 0;
        int bit = 0;
        char tail = 0;
        if (std::sscanf(mutate.c_str(), "%ld:%d%c", &index, &bit, &tail) != 2 || index < 1 ||
            index >= kVerifyTableLength || bit < 0 || bit > 63) {
            throw UsageError("mutate-phi must be n:bit with 1 <= n < " + std::to_string(kVerifyTableLength) +
                             " and 0 <= bit <= 63");
        }
        options.tsallis = tabulated_tsallis_factory(index, bit);
        o.params["mutate_phi"] = mutate;
    }

    const VerificationReport report = run_verification(suite, options);
    json cases = json::array();
    o.table.header = {"name", "scheme", "max_residual", "tolerance", "pass"};
    for (const auto& c : report.cases) {
        json entry = {{"name", c.name},
                      {"anchor", c.anchor},
                      {"scheme", c.scheme},
                      {"max_residual", number(c.max_residual)},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}};
        if (!c.error.empty()) entry["error"] = c.error;
        cases.push_back(std::move(entry));
        o.table.rows.push_back({c.name, c.scheme, c.max_residual, c.tolerance, std::string(c.pass ? "pass" : "FAIL")});
    }
    o.results = {{"suite", report.suite}, {"overall", report.overall}, {"cases", std::move(cases)}};
    long failed = 0;
    for (const auto& c : report.cases) failed += c.pass ? 0 : 1;
    o.diagnostics["cases"] = long(report.cases.size());
    o.diagnostics["failed"] = failed;
    o.exit_code = report.overall ? kOk : kVerificationFailed;
    return o;
}

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const UsageError*>(&e)) return "usage";
    if (dynamic_cast<const DivergenceError*>(&e)) return "divergence";
    if (dynamic_cast<const DomainError*>(&e)) return "domain";
    if (dynamic_cast<const RangeError*>(&e)) return "range";
    if (dynamic_cast<const AccuracyError*>(&e)) return "accuracy";
    if (dynamic_cast<const PreconditionError*>(&e)) return "invalid-argument";
    if (dynamic_cast<const UnsupportedError*>(&e)) return "unsupported";
    return "internal";
}

void report_error(std::ostream& err, const std::string& kind, const std::string& detail) {
    err << json{{"error", kind}, {"detail", detail}}.dump() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deformed oscillator numerics", "defosc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string format = "json";
    std::string out_path;
    std::string scheme_text;
    std::optional<long> n_max;
    std::vector<double> xs;
    double alpha_re = 0.0, alpha_im = 0.0;
    std::optional<long> dim, k;
    std::string function_text, grid_text, suite, mutate;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
        sub->add_option("--out", out_path, "Write the result to PATH");
    };
    auto with_scheme = [&](CLI::App* sub) {
        sub->add_option("scheme", scheme_text, "Scheme descriptor, e.g. tsallis:q=1.5")->required();
        common(sub);
    };

    CLI::App* numbers = app.add_subcommand("numbers", "phi(n), phi(n)! and f(n) for n = 0..n_max");
    with_scheme(numbers);
    numbers->add_option("--n_max", n_max, "Largest n (required)");

    CLI::App* exp = app.add_subcommand("exp", "phi-exponential by its series");
    with_scheme(exp);
    exp->add_option("--x", xs, "Comma-separated arguments")->delimiter(',')->required();

    CLI::App* spectrum = app.add_subcommand("spectrum", "Energy levels and gaps");
    with_scheme(spectrum);
    spectrum->add_option("--n_max", n_max, "Largest level index (required)");

    CLI::App* coherent = app.add_subcommand("coherent", "Truncated coherent state");
    with_scheme(coherent);
    coherent->add_option("--alpha_re", alpha_re, "Real part of alpha");
    coherent->add_option("--alpha_im", alpha_im, "Imaginary part of alpha");
    coherent->add_option("--dim", dim, "Fock dimension");
    coherent->add_option("--k", k, "Number of leading amplitudes to print");

    CLI::App* derive = app.add_subcommand("derive", "Deformed derivative of a test function");
    with_scheme(derive);
    derive->add_option("--function", function_text, "monomial:n | tsallis-exp:k | series:PATH")->required();
    derive->add_option("--x", xs, "Comma-separated points")->delimiter(',');
    derive->add_option("--grid", grid_text, "lo:hi:count");

    CLI::App* verify = app.add_subcommand("verify", "Run identity suites");
    verify->add_option("suite", suite, "series | spectrum | coherent | calculus | all")->required();
    verify->add_option("--scheme", scheme_text, "Restrict to one scheme");
    verify->add_option("--mutate-phi", mutate, "Flip bit BIT of phi_T(N) in a tabulated copy (N:BIT)");
    common(verify);

    std::vector<std::string> args = normalize(raw_args);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        report_error(err, "usage", e.what());
        return kUsageError;
    }

    try {
        Output o;
        if (verify->parsed()) {
            o = run_verify(suite, scheme_text, mutate);
            o.command = "verify";
        } else {
            const DeformationScheme s = parse_scheme(scheme_text);
            if ((numbers->parsed() || spectrum->parsed()) && !n_max) throw UsageError("--n_max is required");
            if (numbers->parsed()) {
                o = run_numbers(s, *n_max);
                o.command = "numbers";
            } else if (exp->parsed()) {
                o = run_exp(s, xs);
                o.command = "exp";
            } else if (spectrum->parsed()) {
                o = run_spectrum(s, *n_max);
                o.command = "spectrum";
            } else if (coherent->parsed()) {
                o = run_coherent(s, alpha_re, alpha_im, dim, k);
                o.command = "coherent";
            } else {
                o = run_derive(s, function_text, xs, grid_text);
                o.command = "derive";
            }
            o.scheme = s.descriptor();
        }

        if (out_path.empty()) {
            write_output(o, format, out);
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) throw UsageError("cannot open " + out_path + " for writing");
            write_output(o, format, file);
            if (!file) throw UsageError("failed writing " + out_path);
        }
        return o.exit_code;
    } catch (const std::exception& e) {
        report_error(err, error_kind(e), e.what());
        return kUsageError;
    }
}

}  // namespace defosc
