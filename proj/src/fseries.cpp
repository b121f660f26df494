#include "vpol/fseries.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vpol::fseries {

namespace {

using specfun::Constants;
using Groups = std::array<double, 4>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = Constants::pi;
constexpr double kPi2 = Constants::pi * Constants::pi;

// Monomials of index j shared by all series, advanced by multiplicative recurrences.
struct Terms {
    double x, y;   // x and x^2
    int j = 0;
    double a = 1;  // (x^2/4)^j / (j!)^2
    double b;      // x^{2j+1} / (2^{2j+1} j! (j+1)!)
    double d;      // x^{2j+1} / ((2j+1)!!)^2
    double e = 1;  // x^{2j} / ((2j+1)!! (2j-1)!!)
    double s = 1;  // x^{2j} / (2j)!
    double t = 1;  // x^{2j} / (2j+1)!
    double q = 1;  // (-x)^j / j!
    double p = 1;  // x^{2j}
    double h = 0;  // H_j
    double h1 = 1; // H_{j+1}

    explicit Terms(double x_) : x(x_), y(x_ * x_), b(x_ / 2), d(x_) {}

    void advance()
    {
        const double n = j + 1;
        a *= y / (4 * n * n);
        b *= y / (4 * n * (n + 1));
        d *= y / ((2 * n + 1) * (2 * n + 1));
        e *= y / ((2 * n + 1) * (2 * n - 1));
        s *= y / ((2 * n - 1) * (2 * n));
        t *= y / ((2 * n) * (2 * n + 1));
        q *= -x / n;
        p *= y;
        ++j;
    }
};

Groups constants(FunctionId id, double x)
{
    const double z3 = Constants::zeta3, ln2 = Constants::ln2;
    switch (id) {
    case FunctionId::F01: return {kPi / 2, 0, 0, 0};
    case FunctionId::F03: return {1 / x, 0, 0, 0};
    case FunctionId::F04: return {kPi2 / 24, 0, 0.5, 0};
    case FunctionId::F07: return {kPi / 2 * ln2, 0, 0, 0};
    case FunctionId::F10: return {-kPi * ln2, -kPi / 2, 0, 0};
    case FunctionId::F11: return {-7.0 / 8 * z3, -kPi2 / 8, 0, 0};
    case FunctionId::F12: return {-kPi2 / 8 * ln2 - 25.0 / 48 * z3, -kPi2 / 6, 0, -1.0 / 6};
    case FunctionId::F13: return {-z3 / 12, -kPi2 / 24, 0, -1.0 / 6};
    case FunctionId::F14: return {-ln2, -1, 0, 0};
    default: return {};
    }
}

bool uses_coefficients(FunctionId id)
{
    switch (id) {
    case FunctionId::F05:
    case FunctionId::F06:
    case FunctionId::F07:
    case FunctionId::F08:
    case FunctionId::F09:
    case FunctionId::F11:
    case FunctionId::F12: return true;
    default: return false;
    }
}

// Contribution of index j to each L-group.
Groups term(FunctionId id, const Terms& m, const specfun::CoefficientCache& cache)
{
    const int j = m.j;
    const double x = m.x;
    const double jj = j;
    auto c1 = [&] { return cache.c1()[j]; };
    auto c2 = [&] { return cache.c2()[j]; };
    auto r1 = [&] { return cache.r1()[j]; };
    auto r2 = [&] { return cache.r2()[j]; };

    switch (id) {
    case FunctionId::F01: {
        const double u = x * m.a / (2 * jj + 1);
        return {-u / (2 * jj + 1) - m.h * u, u, 0, 0};
    }
    case FunctionId::F02: return {m.h * m.a, -m.a, 0, 0};
    case FunctionId::F03: return {-(m.h + m.h1) * m.b / 2, m.b, 0, 0};
    case FunctionId::F04: {
        if (j == 0)
            return {};
        const double u = m.a / (2 * jj);
        return {-m.a / (4 * jj * jj) - m.h * u, u, 0, 0};
    }
    case FunctionId::F05: {
        const double w = m.y * m.p;
        return {kPi2 / 8 * m.a - kPi / 2 * m.d + c2() * w, c1() * w, 0, 0};
    }
    case FunctionId::F06: {
        const double w = x * m.p;
        const double k = 2 * jj + 2;
        return {-kPi2 / 8 * m.b + kPi / 2 * m.e - (c1() + k * c2()) * w, -k * c1() * w, 0, 0};
    }
    case FunctionId::F07: {
        const double w = x * m.y * m.p;
        const double k = 2 * jj + 3;
        return {-kPi2 / 8 * x * m.a / (2 * jj + 1) + kPi / 2 * x * m.d / (2 * jj + 2) +
                    (c1() / (k * k) - c2() / k) * w,
                -c1() * w / k, 0, 0};
    }
    case FunctionId::F08: {
        const double k = 2 * jj + 1;
        return {kPi2 / 6 * m.s - kPi2 / 4 * x * m.t + (r1() - k * r2()) * m.p, m.t + k * r1() * m.p,
                m.s / 2, 0};
    }
    case FunctionId::F09: {
        const double xt = x * m.t;
        const double w = x * m.p;
        return {r2() * w - kPi2 / 6 * xt + kPi2 / 4 * m.s, -r1() * w, -xt / 2, 0};
    }
    case FunctionId::F10: {
        const double k = 2 * jj + 1;
        const double u = x * m.a / (k * k);
        return {2 * u / k + m.h * u, -u, 0, 0};
    }
    case FunctionId::F11: {
        const double w = m.y * m.p;
        const double k = 2 * jj + 2;
        Groups g{kPi / 2 * m.d / (2 * jj + 1) + c1() * w / (k * k) - c2() * w / k, -c1() * w / k, 0, 0};
        if (j >= 1)
            g[0] -= kPi2 / 8 * m.a / (2 * jj);
        return g;
    }
    case FunctionId::F12: {
        Groups g{kPi2 / 4 * x * m.t / (2 * jj + 1), 0, 0, 0};
        if (j >= 1) {
            const double k = (2 * jj + 1) / (2 * jj);
            g[0] += -kPi2 / 12 * m.s / jj + (r1() / (4 * jj * jj) + k * r2()) * m.p - m.t / (8 * jj * jj * jj);
            g[1] = -k * r1() * m.p + m.t / (4 * jj * jj);
            g[2] = -m.s / (4 * jj);
        }
        return g;
    }
    case FunctionId::F13: {
        if (j == 0)
            return {};
        const double u = m.a / (4 * jj * jj);
        return {u / jj + m.h * u, -u, 0, 0};
    }
    case FunctionId::F14:
        if (j == 0)
            return {};
        return {-m.q / jj, 0, 0, 0};
    case FunctionId::F15: return {m.q, 0, 0, 0};
    default: return {};
    }
}

double group_magnitude_error(const std::array<double, 4>& err, double L)
{
    const double a = std::fabs(L);
    return ((err[3] * a + err[2]) * a + err[1]) * a + err[0];
}

}  // namespace

std::string_view name(FunctionId id)
{
    static constexpr std::string_view names[] = {"f01", "f02", "f03", "f04", "f05", "f06", "f07", "f08", "f09",
                                                 "f10", "f11", "f12", "f13", "f14", "f15", "f16", "f17"};
    const int i = index(id);
    if (i < 1 || i > 17)
        return "unknown";
    return names[i - 1];
}

void Truncation::validate() const
{
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
        throw DomainError("Truncation: rel_tol must be positive and finite");
    if (max_terms < 1)
        throw DomainError("Truncation: max_terms must be >= 1");
    if (consecutive_small < 1)
        throw DomainError("Truncation: consecutive_small must be >= 1");
}

LogArgument LogArgument::at(double x)
{
    detail::require_positive(x, "LogArgument");
    return {Constants::gamma + std::log(x / 2)};
}

double SeriesGroups::combined_error(double L) const
{
    const double a = std::fabs(L);
    const double rounding = 4 * kEps * (((std::fabs(coeff[3]) * a + std::fabs(coeff[2])) * a + std::fabs(coeff[1])) * a +
                                        std::fabs(coeff[0]));
    return group_magnitude_error(err, L) + rounding;
}

SeriesGroups series_groups(FunctionId id, double x, const Truncation& trunc, const specfun::CoefficientCache& cache)
{
    detail::require_positive(x, "eval_series");
    trunc.validate();
    if (index(id) < 1 || index(id) > 15)
        throw DomainError("series_groups: " + std::string(name(id)) + " has no grouped series");

    const Groups base = constants(id, x);
    std::array<specfun::CompensatedSum, 4> sums;
    for (int p = 0; p < 4; ++p)
        sums[p] = specfun::CompensatedSum(base[p]);

    const bool needs_cache = uses_coefficients(id);
    const auto harmonic = cache.harmonic();
    const int cache_terms = static_cast<int>(harmonic.size());

    Terms m(x);
    Groups last{};
    int small_run = 0;
    bool converged = false;
    for (; m.j < trunc.max_terms; m.advance()) {
        if (needs_cache && m.j > cache.max_order())
            throw NonConvergent("eval_series(" + std::string(name(id)) + ", x=" + std::to_string(x) +
                                "): coefficient cache exhausted at order " + std::to_string(cache.max_order()));
        if (m.j > 0)
            m.h = (m.j < cache_terms) ? harmonic[m.j] : m.h + 1.0 / m.j;
        m.h1 = (m.j + 1 < cache_terms) ? harmonic[m.j + 1] : m.h + 1.0 / (m.j + 1);

        const Groups g = term(id, m, cache);
        bool small = true;
        for (int p = 0; p < 4; ++p) {
            sums[p] += g[p];
            if (std::fabs(g[p]) > trunc.rel_tol * std::fabs(sums[p].value()))
                small = false;
        }
        last = g;
        small_run = small ? small_run + 1 : 0;
        if (small_run >= trunc.consecutive_small) {
            ++m.j;
            converged = true;
            break;
        }
    }
    if (!converged)
        throw NonConvergent("eval_series(" + std::string(name(id)) + ", x=" + std::to_string(x) +
                            "): no convergence within " + std::to_string(trunc.max_terms) + " terms");

    SeriesGroups out;
    out.terms_used = m.j;
    for (int p = 0; p < 4; ++p) {
        out.coeff[p] = sums[p].value();
        out.err[p] = std::fabs(last[p]) + 2 * kEps * sums[p].magnitude();
    }
    return out;
}

Evaluation eval_series(FunctionId id, double x, const Truncation& trunc, const specfun::CoefficientCache& cache)
{
    if (id == FunctionId::F16)
        return eval_f16(x, trunc, cache);
    if (id == FunctionId::F17)
        return eval_f17(x, trunc, cache);
    const SeriesGroups g = series_groups(id, x, trunc, cache);
    const double L = LogArgument::at(x).value;
    return {g.combine(L), g.combined_error(L), g.terms_used, Method::Series};
}

Evaluation eval_f16(double x, const Truncation& trunc, const specfun::CoefficientCache& cache)
{
    Evaluation k0 = eval_series(FunctionId::F02, x, trunc, cache);
    k0.value /= x;
    k0.err_est = k0.err_est / x + kEps * std::fabs(k0.value);
    return k0;
}

Evaluation eval_f17(double x, const Truncation& trunc, const specfun::CoefficientCache& cache)
{
    Evaluation k0 = eval_series(FunctionId::F02, x, trunc, cache);
    const double pref = -0.5 * (Constants::gamma + Constants::ln2 + std::log(x));
    const double v = pref * k0.value;
    k0.err_est = std::fabs(pref) * k0.err_est + 2 * kEps * (std::fabs(v) + 0.5 * std::fabs(k0.value));
    k0.value = v;
    return k0;
}

}  // namespace vpol::fseries
