#include "vpol/quadrature.hpp"

#include "vpol/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace vpol::quadrature {

namespace {

using fseries::FunctionId;
using specfun::Constants;

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Piecewise {
    double value = 0.0;
    double error = 0.0;
    double l1 = 0.0;
    int evaluations = 0;
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double log_sinh(double w)
{
    if (w < 1.0)
        return std::log(std::sinh(w));
    return w + std::log1p(-std::exp(-2 * w)) - Constants::ln2;
}

double log_cosh(double w)
{
    return w + std::log1p(std::exp(-2 * w)) - Constants::ln2;
}

// ln coth w, accurate at both ends.
double log_coth(double w)
{
    return std::log1p(2 / std::expm1(2 * w));
}

// Integrates f over [points.front(), points.back()], splitting at the interior points.
// The relative tolerance applies to max(|value|, scale).
template <class F>
Piecewise integrate(F f, std::vector<double> points, const QuadratureSpec& spec, const char* what,
                    double scale = 0.0)
{
    boost::math::quadrature::tanh_sinh<double> rule(static_cast<std::size_t>(spec.max_refinements));
    Piecewise out;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const double a = points[i], b = points[i + 1];
        if (!(b > a))
            continue;
        // Each piece is shifted to start at 0 so nodes near the left end keep full precision.
        auto shifted = [&](double t) {
            ++out.evaluations;
            return f(a + t);
        };
        double err = 0.0, l1 = 0.0;
        const double v = rule.integrate(shifted, 0.0, b - a, spec.rel_tol / 4, &err, &l1);
        if (!std::isfinite(v) || !std::isfinite(err))
            throw ToleranceNotMet(std::string(what) + ": non-finite integrand");
        out.value += v;
        out.error += err;
        out.l1 += l1;
    }
    out.error += 4 * kEps * out.l1;
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::max(std::fabs(out.value), scale));
    if (!(out.error <= tol))
        throw ToleranceNotMet(std::string(what) + ": error estimate " + sci(out.error) + " exceeds tolerance " +
                              sci(tol) + " after " + std::to_string(spec.max_refinements) + " refinements");
    return out;
}

// Breakpoints for an integrand dominated by e^{-x (cosh w - 1)}: the unit scale,
// the point where the exponent reaches 1, and the underflow cutoff.
std::vector<double> breakpoints(double x, const QuadratureSpec& spec)
{
    const double W = spec.cutoff(x);
    std::vector<double> pts{0.0};
    const double knee = std::acosh(1.0 + 1.0 / x);
    if (W > 1.0) {
        pts.push_back(1.0);
        if (knee > 1.0 && knee < W)
            pts.push_back(knee);
    }
    pts.push_back(W);
    return pts;
}

double damping(double x, double w)
{
    const double sh = std::sinh(w / 2);
    return std::exp(-2 * x * sh * sh);
}

Evaluation finish(const Piecewise& p, double scale)
{
    return {p.value * scale, p.error * std::fabs(scale), p.evaluations, Method::Quadrature};
}

// Kernel g(w) of the w-representation e^{-x cosh w} g(w), or of the inner layer for F10..F13.
double kernel(FunctionId id, double x, double w)
{
    switch (id) {
    case FunctionId::F01: return 1 / std::cosh(w);
    case FunctionId::F02: return 1.0;
    case FunctionId::F03: return std::cosh(w);
    case FunctionId::F04: return w * std::tanh(w);
    case FunctionId::F05: return log_coth(w);
    case FunctionId::F06: return std::cosh(w) * log_coth(w);
    case FunctionId::F07: return log_coth(w) / std::cosh(w);
    case FunctionId::F08: return w == 0.0 ? 1.0 : w / std::tanh(w);
    case FunctionId::F09: return w == 0.0 ? 1.0 : w / std::sinh(w);
    case FunctionId::F14: return std::tanh(w);
    case FunctionId::F15: return x * std::sinh(w);
    case FunctionId::F16: return w * std::sinh(w);
    case FunctionId::F17: return log_sinh(w);
    default: return 0.0;
    }
}

FunctionId outer_kernel(FunctionId id)
{
    switch (id) {
    case FunctionId::F10: return FunctionId::F01;
    case FunctionId::F11: return FunctionId::F05;
    case FunctionId::F12: return FunctionId::F08;
    default: return FunctionId::F04;
    }
}

// Li2(z) = sum z^k / k^2, truncated once the term falls below term_tol relative to the sum.
double dilog_direct(double z, const InnerSeriesSpec& inner)
{
    specfun::CompensatedSum s;
    double zk = 1.0;
    for (int k = 1; k <= inner.max_k; ++k) {
        zk *= z;
        const double term = zk / (static_cast<double>(k) * k);
        s += term;
        if (term <= inner.term_tol * s.value())
            return s.value();
    }
    throw ToleranceNotMet("dilog: inner series did not reach term_tol within max_k = " +
                          std::to_string(inner.max_k) + " terms");
}

// Li2 at q and 1 - q when q is given as e^{-2w}, keeping 1 - q exact for small w.
double dilog_exp(double w, const InnerSeriesSpec& inner)
{
    const double q = std::exp(-2 * w);
    if (q <= 0.5)
        return dilog_direct(q, inner);
    const double one_minus_q = -std::expm1(-2 * w);
    return Constants::pi * Constants::pi / 6 + 2 * w * std::log(one_minus_q) - dilog_direct(one_minus_q, inner);
}

}  // namespace

double QuadratureSpec::cutoff(double x) const
{
    return std::acosh(1.0 + underflow_exponent / x);
}

void QuadratureSpec::validate() const
{
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !std::isfinite(abs_tol) || !std::isfinite(rel_tol))
        throw DomainError("QuadratureSpec: tolerances must be positive and finite");
    if (max_refinements < 1)
        throw DomainError("QuadratureSpec: max_refinements must be >= 1");
    if (!(underflow_exponent > 0.0))
        throw DomainError("QuadratureSpec: underflow_exponent must be positive");
}

void InnerSeriesSpec::validate() const
{
    if (!(term_tol > 0.0))
        throw DomainError("InnerSeriesSpec: term_tol must be positive");
    if (max_k < 1)
        throw DomainError("InnerSeriesSpec: max_k must be >= 1");
}

double dilog(double z, const InnerSeriesSpec& inner)
{
    inner.validate();
    if (!(z >= 0.0 && z <= 1.0))
        throw DomainError("dilog: argument must lie in [0, 1], got " + std::to_string(z));
    if (z == 0.0)
        return 0.0;
    if (z == 1.0)
        return Constants::pi * Constants::pi / 6;
    if (z <= 0.5)
        return dilog_direct(z, inner);
    return Constants::pi * Constants::pi / 6 - std::log(z) * std::log1p(-z) - dilog_direct(1 - z, inner);
}

Evaluation eval_integral(FunctionId id, double x, const QuadratureSpec& spec)
{
    detail::require_positive(x, "eval_integral");
    spec.validate();
    const auto pts = breakpoints(x, spec);
    const std::string what = "eval_integral(" + std::string(fseries::name(id)) + ")";

    switch (id) {
    case FunctionId::F10:
    case FunctionId::F11:
    case FunctionId::F12:
    case FunctionId::F13: {
        // int_x^inf dy/y int e^{-y cosh w} g(w) dw = int g(w) E1(x cosh w) dw
        const FunctionId g = outer_kernel(id);
        auto f = [&](double w) {
            const double c = std::cosh(w);
            return kernel(g, x, w) * std::exp(x) * boost::math::expint(1, x * c);
        };
        return finish(integrate(f, pts, spec, what.c_str()), std::exp(-x));
    }
    default: break;
    }
    if (index(id) < 1 || index(id) > 17)
        throw DomainError("eval_integral: unknown function id");
    auto f = [&](double w) { return damping(x, w) * kernel(id, x, w); };
    return finish(integrate(f, pts, spec, what.c_str()), std::exp(-x));
}

Evaluation iks_fast(double x, const QuadratureSpec& spec, const InnerSeriesSpec& inner)
{
    detail::require_positive(x, "iks_fast");
    spec.validate();
    inner.validate();
    const double ln2 = Constants::ln2;
    auto f = [&](double w) {
        const double c = std::cosh(w), s = std::sinh(w), th = std::tanh(w);
        const double ci = 1 / c, ci2 = ci * ci;
        const double v = th * th;
        // 13/54 - 19/108 c^-2 + 17/108 c^-4 - 2/9 c^-6, rewritten in tanh^2 to avoid cancellation at w = 0
        const double a0 = v * (57 - 55 * v + 24 * v * v) / 108;
        const double b = ci * (-44.0 / 9 + ci2 * (2.0 / 3 + ci2 * (5.0 / 4 + ci2 * 2.0 / 9)));
        // 2 - c^-2 - c^-4
        const double p = v * (2 + ci2);
        const double logs = 2 * ln2 + 2.0 / 3 * log_cosh(w) + 4.0 / 3 * log_sinh(w);
        const double q = std::exp(-2 * w);
        const double bracket = -2 * w * std::log(-std::expm1(-2 * w)) - w * std::log1p(q) + dilog_exp(w, inner) +
                               0.5 * dilog_exp(2 * w, inner);
        const double d = 2.0 / 3 * ci * (-4 + ci2 * ci2);
        return damping(x, w) * (a0 + b * w * s + p * logs + d * s * bracket);
    };
    return finish(integrate(f, breakpoints(x, spec), spec, "iks_fast"), std::exp(-x));
}

Evaluation iks_defining(double x, const QuadratureSpec& spec)
{
    detail::require_positive(x, "iks_defining");
    spec.validate();
    QuadratureSpec inner_spec = spec;
    inner_spec.abs_tol /= 10;
    inner_spec.rel_tol /= 10;

    // Inner integrand after y = cosh u, with the 3u - 3u cancellation removed and the
    // -2 ln(2u) singularity at u = 0 taken out; it is integrated analytically below.
    auto h = [](double u) {
        const double q = std::exp(-2 * u);
        const double one_minus_q2 = -std::expm1(-4 * u);
        return u * (6 * q * q + 2 * q) / one_minus_q2 - std::log1p(q) - 2 * std::log(-std::expm1(-2 * u) / (2 * u));
    };
    auto h_full = [&](double u) { return h(u) - 2 * std::log(2 * u); };
    constexpr double kTail = 25.0;
    int inner_evals = 0;
    // Inner pieces are judged against the size of J(0), the largest value J takes.
    double j_scale = 0.0;
    auto inner_head = [&](double w) {
        const Piecewise p = integrate(h, {0.0, w}, inner_spec, "iks_defining inner head", j_scale);
        inner_evals += p.evaluations;
        return p.value - 2 * w * (std::log(2 * w) - 1);
    };
    auto inner_tail = [&](double w) {
        const Piecewise p = integrate(h_full, {w, w + kTail}, inner_spec, "iks_defining inner tail", j_scale);
        inner_evals += p.evaluations;
        return p.value;
    };
    const double j0 = inner_head(1.0) + inner_tail(1.0);
    j_scale = std::fabs(j0);

    std::map<double, double> memo;
    auto J = [&](double w) {
        auto it = memo.find(w);
        if (it != memo.end())
            return it->second;
        const double v = (w < 1.0) ? j0 - inner_head(w) : inner_tail(w);
        memo.emplace(w, v);
        return v;
    };

    auto f = [&](double w) {
        const double c = std::cosh(w), s = std::sinh(w);
        const double ti = 1 / c, ti2 = ti * ti;
        const double A = ti2 * (13.0 / 54 + ti2 * (7.0 / 108 + ti2 * 2.0 / 9));
        const double B = ti * (-44.0 / 9 + ti2 * (2.0 / 3 + ti2 * (5.0 / 4 + ti2 * 2.0 / 9)));
        const double C = ti2 * (4.0 / 3 + ti2 * 2.0 / 3);
        const double D = ti * (-8.0 / 3 + ti2 * ti2 * 2.0 / 3);
        const double log8cs2 = 3 * Constants::ln2 + log_cosh(w) + 2 * log_sinh(w);
        return damping(x, w) * (A * s * s + B * w * s + C * s * s * log8cs2 + D * s * J(w));
    };
    Evaluation e = finish(integrate(f, breakpoints(x, spec), spec, "iks_defining"), std::exp(-x));
    e.terms_used += inner_evals;
    return e;
}

Evaluation uehling_integral(double x, const QuadratureSpec& spec)
{
    detail::require_positive(x, "uehling_integral");
    spec.validate();
    auto f = [&](double w) {
        const double th = std::tanh(w), ci = 1 / std::cosh(w);
        // 1 - c^-2 / 2 - c^-4 / 2 = tanh^2 (2 + c^-2) / 2
        return damping(x, w) * th * th * (2 + ci * ci) / 2;
    };
    return finish(integrate(f, breakpoints(x, spec), spec, "uehling_integral"), std::exp(-x));
}

}  // namespace vpol::quadrature
