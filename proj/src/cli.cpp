#include "vpol/cli.hpp"

#include "vpol/kallen_sabry.hpp"
#include "vpol/reference_table.hpp"
#include "vpol/uehling.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace vpol::cli {

namespace {

enum class Quantity { Iks, Vks, Iueh, Vueh };

bool is_potential(Quantity q) { return q == Quantity::Vks || q == Quantity::Vueh; }

struct Options {
    std::optional<double> tol;
    std::optional<int> max_terms;
    double switch_x = 4.0;
    double alpha = PhysicalParams{}.alpha;
    double charge_z = 1.0;
    bool fm = false;
    std::string format = "csv";
    std::string output;
    bool skip_errors = false;
    int jobs = 1;
    std::string fixture;
    std::string method = "auto";
};

// Failure carried from a worker thread back to the dispatcher.
struct Failure {
    int code = kOk;
    std::string message;
};

struct Row {
    double abscissa = 0.0;
    Evaluation eval;
    Failure failure;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string shortest(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string full(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string brief(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& what)
{
    double v = 0.0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v))
        throw UsageError(what + ": not a number: '" + s + "'");
    return v;
}

int parse_int(const std::string& s, const std::string& what)
{
    int v = 0;
    const char* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw UsageError(what + ": not an integer: '" + s + "'");
    return v;
}

Quantity parse_quantity(const std::string& s)
{
    if (s == "iks")
        return Quantity::Iks;
    if (s == "vks")
        return Quantity::Vks;
    if (s == "iueh")
        return Quantity::Iueh;
    if (s == "vueh")
        return Quantity::Vueh;
    throw UsageError("unknown quantity '" + s + "' (expected iks, vks, iueh or vueh)");
}

ks::MethodPolicy policy_from(const Options& o)
{
    ks::MethodPolicy p;
    p.x_series_max = o.switch_x;
    p.x_smallx_max = std::min(p.x_smallx_max, o.switch_x);
    if (o.tol) {
        p.trunc.rel_tol = *o.tol;
        p.quad.rel_tol = *o.tol;
    }
    if (o.max_terms)
        p.trunc.max_terms = *o.max_terms;
    p.validate();
    return p;
}

PhysicalParams params_from(const Options& o)
{
    PhysicalParams p;
    p.alpha = o.alpha;
    p.Z = o.charge_z;
    p.validate();
    return p;
}

void check_method(Quantity q, const std::string& m)
{
    static const std::vector<std::string> ks_methods = {"auto", "series", "quadrature", "defining", "smallx",
                                                        "asymptotic"};
    static const std::vector<std::string> ueh_methods = {"auto", "closed", "quadrature", "smallx"};
    const auto& allowed = (q == Quantity::Iks || q == Quantity::Vks) ? ks_methods : ueh_methods;
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end())
        throw UsageError("method '" + m + "' is not available for this quantity");
}

Evaluation evaluate_ks(double x, const std::string& method, const ks::MethodPolicy& policy)
{
    if (method == "series")
        return ks::iks_series(x, policy.trunc);
    if (method == "quadrature")
        return quadrature::iks_fast(x, policy.quad, policy.inner);
    if (method == "defining")
        return quadrature::iks_defining(x, policy.quad);
    if (method == "smallx")
        return ks::iks_small(x);
    if (method == "asymptotic")
        return ks::iks_asym(x);
    return ks::iks(x, policy);
}

Evaluation evaluate_ueh(double x, const std::string& method, const ks::MethodPolicy& policy)
{
    if (method == "closed")
        return uehling::iueh_closed(x, policy.trunc);
    if (method == "quadrature")
        return quadrature::uehling_integral(x, policy.quad);
    if (method == "smallx")
        return uehling::iueh_small(x);
    return uehling::iueh(x, policy.trunc, policy.quad);
}

Evaluation evaluate(Quantity q, double point, const Options& o, const ks::MethodPolicy& policy,
                    const PhysicalParams& params)
{
    detail::require_positive(point, "point");
    const double pi = specfun::Constants::pi;
    const double r = o.fm ? point / PhysicalParams::lambda_e_fm : point;
    const double a = params.alpha;
    switch (q) {
    case Quantity::Iks: return evaluate_ks(point, o.method, policy);
    case Quantity::Iueh: return evaluate_ueh(point, o.method, policy);
    case Quantity::Vks: {
        if (o.method == "auto")
            return ks::v_ks(r, params, policy);
        Evaluation e = evaluate_ks(2 * r, o.method, policy);
        const double scale = a * a * (params.Z * a) / (pi * pi * r);
        return {e.value * scale, e.err_est * scale, e.terms_used, e.method};
    }
    case Quantity::Vueh: {
        if (o.method == "auto")
            return uehling::v_uehling(r, params, policy.trunc, policy.quad);
        Evaluation e = evaluate_ueh(2 * r, o.method, policy);
        const double scale = -2.0 / 3 * a * (params.Z * a) / (pi * r);
        return {e.value * scale, e.err_est * std::fabs(scale), e.terms_used, e.method};
    }
    }
    return {};
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn)
{
    const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                fn(i);
        });
    for (auto& t : pool)
        t.join();
}

template <class Fn>
Failure capture(Fn fn)
{
    try {
        fn();
    } catch (const DomainError& e) {
        return {kDomainOrParse, e.what()};
    } catch (const NonConvergent& e) {
        return {kNumeric, e.what()};
    } catch (const ToleranceNotMet& e) {
        return {kNumeric, e.what()};
    } catch (const NumericError& e) {
        return {kNumeric, e.what()};
    }
    return {};
}

std::vector<Row> evaluate_rows(Quantity q, const std::vector<double>& points, const Options& o)
{
    const ks::MethodPolicy policy = policy_from(o);
    const PhysicalParams params = params_from(o);
    std::vector<Row> rows(points.size());
    parallel_for(points.size(), o.jobs, [&](std::size_t i) {
        rows[i].abscissa = points[i];
        rows[i].failure = capture([&] { rows[i].eval = evaluate(q, points[i], o, policy, params); });
    });
    return rows;
}

std::string render(Quantity q, const std::vector<Row>& rows, const std::string& format)
{
    const char* key = is_potential(q) ? "r" : "x";
    std::ostringstream s;
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const Row& r : rows) {
            if (r.failure.code != kOk)
                continue;
            nlohmann::ordered_json obj;
            obj[key] = r.abscissa;
            obj["value"] = r.eval.value;
            obj["err_est"] = r.eval.err_est;
            obj["method"] = std::string(to_string(r.eval.method));
            arr.push_back(std::move(obj));
        }
        s << arr.dump(2) << '\n';
    } else {
        s << key << ",value,err_est,method\n";
        for (const Row& r : rows)
            if (r.failure.code == kOk)
                s << shortest(r.abscissa) << ',' << full(r.eval.value) << ',' << full(r.eval.err_est) << ','
                  << to_string(r.eval.method) << '\n';
    }
    return s.str();
}

void emit(const std::string& text, const Options& o, std::ostream& out)
{
    if (o.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary | std::ios::trunc);
    if (!f)
        throw UsageError("cannot open output file '" + o.output + "'");
    f << text;
    if (!f)
        throw UsageError("failed writing output file '" + o.output + "'");
}

// Prints diagnostics for failed rows. Returns the exit code of the first failure, or kOk.
int report_failures(const std::vector<Row>& rows, bool skip, std::ostream& err)
{
    int first = kOk;
    for (const Row& r : rows) {
        if (r.failure.code == kOk)
            continue;
        if (first == kOk)
            first = r.failure.code;
        err << "vpol: " << (skip ? "skipped" : "error") << " at " << shortest(r.abscissa) << ": " << r.failure.message
            << '\n';
        if (!skip)
            break;
    }
    return skip ? kOk : first;
}

int output_rows(Quantity q, const std::vector<Row>& rows, const Options& o, std::ostream& out, std::ostream& err)
{
    const int code = report_failures(rows, o.skip_errors, err);
    if (code != kOk)
        return code;
    emit(render(q, rows, o.format), o, out);
    return kOk;
}

double round_grid(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

std::vector<double> parse_list(const std::string& list)
{
    std::vector<double> pts;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        pts.push_back(parse_double(item, "--list"));
    if (pts.empty())
        throw UsageError("--list is empty");
    return pts;
}

std::vector<double> grid(double lo, double hi, int steps)
{
    if (!(lo > 0.0) || !(lo <= hi))
        throw UsageError("table: require 0 < x_min <= x_max");
    if (steps < 1)
        throw UsageError("table: steps must be >= 1");
    std::vector<double> pts;
    for (int i = 0; i < steps; ++i) {
        if (steps == 1) {
            pts.push_back(lo);
            break;
        }
        pts.push_back(i == steps - 1 ? hi : round_grid(lo + (hi - lo) * i / (steps - 1)));
    }
    return pts;
}

// Verification against the bundled value table.
int verify_paper_table(const Options& o, std::ostream& report)
{
    const ReferenceTable table = o.fixture.empty() ? ReferenceTable::embedded() : ReferenceTable::from_file(o.fixture);
    std::vector<double> xs;
    for (const auto& row : table.rows())
        xs.push_back(row.x);
    Options ks_opts = o;
    ks_opts.method = "auto";
    const auto rows = evaluate_rows(Quantity::Iks, xs, ks_opts);
    for (const Row& r : rows)
        if (r.failure.code != kOk)
            throw NumericError("at x=" + shortest(r.abscissa) + ": " + r.failure.message);

    const quadrature::QuadratureSpec quad = policy_from(o).quad;
    std::vector<std::string> failed;
    double worst = 0.0, worst_x = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ReferenceRow& ref = table.rows()[i];
        const double v = rows[i].eval.value;
        const int digits = required_significant_digits(ref.x);
        const double dev = relative_deviation(v, ref.iks);
        const bool pass = dev <= std::pow(10.0, -digits);
        if (dev > worst) {
            worst = dev;
            worst_x = ref.x;
        }
        report << (pass ? "PASS" : "FAIL") << " x=" << ref.x_text << " reference=" << full(ref.iks)
               << " computed=" << full(v) << " method=" << to_string(rows[i].eval.method)
               << " rel_dev=" << brief(dev) << " required_digits=" << digits << '\n';
        if (!pass) {
            failed.push_back(ref.x_text + " (line " + std::to_string(ref.line) + ")");
            const Evaluation fast = quadrature::iks_fast(ref.x, quad);
            const Evaluation def = quadrature::iks_defining(ref.x, quad);
            report << "  adjudication: single-integral=" << full(fast.value) << " double-integral=" << full(def.value)
                   << " computed-vs-oracle=" << brief(relative_deviation(v, def.value))
                   << " table-vs-oracle=" << brief(relative_deviation(ref.iks, def.value)) << '\n';
        }
    }
    report << "paper-table: " << rows.size() - failed.size() << "/" << rows.size() << " rows pass; worst rel_dev "
           << brief(worst) << " at x=" << shortest(worst_x) << '\n';
    if (failed.empty())
        return kOk;
    report << "failing rows:";
    for (const auto& f : failed)
        report << ' ' << f;
    report << '\n';
    return kVerifyFailed;
}

int verify_cross_method(const Options& o, std::ostream& report)
{
    const ks::MethodPolicy policy = policy_from(o);
    const std::vector<double> xs = {0.1, 0.5, 1.0, 2.0, 4.0};
    struct Triple {
        Evaluation series, fast, defining;
    };
    std::vector<Triple> res(xs.size());
    std::vector<Failure> fail(xs.size());
    parallel_for(xs.size(), o.jobs, [&](std::size_t i) {
        fail[i] = capture([&] {
            res[i] = {ks::iks_series(xs[i], policy.trunc), quadrature::iks_fast(xs[i], policy.quad, policy.inner),
                      quadrature::iks_defining(xs[i], policy.quad)};
        });
    });
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (fail[i].code != kOk)
            throw NumericError("at x=" + shortest(xs[i]) + ": " + fail[i].message);

    bool ok = true;
    auto line = [&](bool pass, const std::string& text) {
        ok = ok && pass;
        report << (pass ? "PASS " : "FAIL ") << text << '\n';
    };
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const Triple& t = res[i];
        const double d_sf = std::fabs(t.series.value - t.fast.value);
        const double bound = t.series.err_est + t.fast.err_est;
        const double d_fd = relative_deviation(t.defining.value, t.fast.value);
        worst = std::max(worst, d_sf / std::fabs(t.fast.value));
        line(d_sf <= bound, "series-vs-single-integral x=" + shortest(xs[i]) + " |diff|=" + brief(d_sf) +
                                " combined_err_est=" + brief(bound));
        line(d_fd <= 1e-8, "double-vs-single-integral x=" + shortest(xs[i]) + " rel_dev=" + brief(d_fd) +
                               " limit=1e-8");
    }
    report << "worst series-vs-quadrature rel_dev " << brief(worst) << '\n';

    // Error profile of the small-x expansion on 100 interior points of (0, hi).
    const double windows[3][2] = {{1.0, 0.0037}, {0.5, 0.0019}, {0.1, 0.000003}};
    for (const auto& w : windows) {
        double m = 0.0, m_printed = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double x = w[0] * i / 101;
            const double exact = ks::iks_series(x, policy.trunc).value;
            m = std::max(m, relative_deviation(ks::iks_small(x).value, exact));
            m_printed = std::max(
                m_printed, relative_deviation(ks::iks_small(x, ks::SmallXCoefficients::AsPrinted).value, exact));
        }
        line(m <= w[1], "small-x (0," + shortest(w[0]) + ") max rel_dev=" + brief(m) + " limit=" + brief(w[1]) +
                            " (published coefficients: " + brief(m_printed) + ")");
    }
    // Two-term asymptotic form against the quadrature value.
    const double asym[2][2] = {{4.0, 79.0}, {9.0, 51.0}};
    for (const auto& a : asym) {
        const double exact = ks::iks(a[0], policy).value;
        const double pct = 100 * relative_deviation(ks::iks_asym(a[0]).value, exact);
        line(std::fabs(pct - a[1]) <= 2.0, "asymptotic x=" + shortest(a[0]) + " deviation=" + brief(pct) +
                                               "% expected " + shortest(a[1]) + " +/- 2");
    }
    report << "cross-method: " << (ok ? "all checks pass" : "FAILED") << '\n';
    return ok ? kOk : kVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Kallen-Sabry and Uehling vacuum-polarization integrals and potentials", "vpol"};
    app.require_subcommand(1);
    app.fallthrough();

    Options o;
    double tol = 0.0;
    int max_terms = 0;
    auto* tol_opt = app.add_option("--tol", tol, "Relative tolerance for series truncation and quadrature");
    auto* terms_opt = app.add_option("--max-terms", max_terms, "Series term cap");
    app.add_option("--switch-x", o.switch_x, "Series/quadrature switch point for I_KS")->capture_default_str();
    app.add_option("--alpha", o.alpha, "Fine-structure constant")->capture_default_str();
    app.add_option("--charge-z", o.charge_z, "Nuclear charge number Z")->capture_default_str();
    app.add_flag("--fm", o.fm, "Potential abscissa r is given in fm instead of reduced Compton wavelengths");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", o.output, "Write results to FILE instead of standard output");
    app.add_flag("--skip-errors", o.skip_errors, "Drop failing rows instead of aborting");
    app.add_option("--jobs", o.jobs, "Worker threads for multi-row commands")->check(CLI::PositiveNumber);
    app.add_option("--fixture", o.fixture, "Reference table CSV for verify paper-table");
    app.add_option("--method", o.method,
                   "auto, series, quadrature, defining, smallx, asymptotic (I_KS); auto, closed, quadrature, "
                   "smallx (Uehling)");

    std::string quantity, point;
    auto* eval = app.add_subcommand("eval", "Evaluate one quantity at one point");
    eval->add_option("quantity", quantity, "iks, vks, iueh or vueh")->required();
    eval->add_option("point", point, "x for iks/iueh, r for vks/vueh")->required();

    std::string t_quantity, list;
    std::vector<std::string> t_args;
    auto* table = app.add_subcommand("table", "Tabulate a quantity: x_min x_max steps [csv|json], or --list");
    table->add_option("quantity", t_quantity, "iks, vks, iueh or vueh")->required();
    table->add_option("args", t_args, "x_min x_max steps [format]");
    table->add_option("--list", list, "Explicit comma-separated abscissas");

    std::string target;
    auto* verify = app.add_subcommand("verify", "Check results against the value table or between methods");
    verify->add_option("target", target, "paper-table or cross-method")
        ->required()
        ->check(CLI::IsMember({"paper-table", "cross-method"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o_msg, e_msg;
        const int rc = app.exit(e, o_msg, e_msg);
        out << o_msg.str();
        err << e_msg.str();
        return rc == 0 ? kOk : kDomainOrParse;
    }
    if (tol_opt->count() > 0)
        o.tol = tol;
    if (terms_opt->count() > 0)
        o.max_terms = max_terms;

    try {
        if (*eval) {
            const Quantity q = parse_quantity(quantity);
            if (o.fm && !is_potential(q))
                throw UsageError("--fm applies only to vks and vueh");
            check_method(q, o.method);
            const auto rows = evaluate_rows(q, {parse_double(point, "point")}, o);
            return output_rows(q, rows, o, out, err);
        }
        if (*table) {
            const Quantity q = parse_quantity(t_quantity);
            if (o.fm && !is_potential(q))
                throw UsageError("--fm applies only to vks and vueh");
            check_method(q, o.method);
            std::vector<double> pts;
            std::vector<std::string> rest = t_args;
            if (!list.empty()) {
                pts = parse_list(list);
            } else {
                if (rest.size() < 3)
                    throw UsageError("table: expected x_min x_max steps, or --list");
                pts = grid(parse_double(rest[0], "x_min"), parse_double(rest[1], "x_max"),
                           parse_int(rest[2], "steps"));
                rest.erase(rest.begin(), rest.begin() + 3);
            }
            if (rest.size() == 1) {
                if (rest[0] != "csv" && rest[0] != "json")
                    throw UsageError("table: unknown format '" + rest[0] + "'");
                o.format = rest[0];
            } else if (rest.size() > 1) {
                throw UsageError("table: too many arguments");
            }
            return output_rows(q, evaluate_rows(q, pts, o), o, out, err);
        }
        if (*verify) {
            std::ostringstream report;
            const int rc = target == "paper-table" ? verify_paper_table(o, report) : verify_cross_method(o, report);
            emit(report.str(), o, out);
            if (rc != kOk)
                err << "vpol: verify " << target << " failed\n";
            return rc;
        }
    } catch (const UsageError& e) {
        err << "vpol: error: " << e.what() << '\n';
        return kDomainOrParse;
    } catch (const ParseError& e) {
        err << "vpol: error: " << e.what() << '\n';
        return kDomainOrParse;
    } catch (const DomainError& e) {
        err << "vpol: error: " << e.what() << '\n';
        return kDomainOrParse;
    } catch (const NumericError& e) {
        err << "vpol: error: " << e.what() << '\n';
        return kNumeric;
    }
    return kDomainOrParse;
}

}  // namespace vpol::cli
