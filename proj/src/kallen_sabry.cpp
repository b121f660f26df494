#include "vpol/kallen_sabry.hpp"

#include "vpol/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace vpol {

void PhysicalParams::validate() const
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("PhysicalParams: alpha must be positive and finite");
    if (!(Z > 0.0) || !std::isfinite(Z))
        throw DomainError("PhysicalParams: Z must be positive and finite");
}

namespace ks {

namespace {

using fseries::FunctionId;
using specfun::Constants;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = Constants::pi;
constexpr double kPi2 = Constants::pi * Constants::pi;

// Coefficient of x^n in the small-x expansion: l2 L^2 + l1 L + c0.
struct SmallXRow {
    double l2, l1, c0;
};

using SmallXTable = std::array<SmallXRow, 12>;

SmallXTable corrected_table()
{
    const double z3 = Constants::zeta3, ln2 = Constants::ln2;
    return {{
        {-4.0 / 9, -13.0 / 54, -z3 - 65.0 / 648 - kPi2 / 27},
        {0, 0, 13 * kPi2 / 18 + 16.0 / 9 * kPi * ln2 - 383 * kPi / 135},
        {0, 5.0 / 12, -65.0 / 72},
        {0, 0, 7 * kPi2 / 108 - 10 * kPi / 81},
        {-5.0 / 288, 323.0 / 3456, z3 / 96 - 6509.0 / 41472 - 5 * kPi2 / 3456},
        {0, 0, 11 * kPi / 3375 - kPi2 / 3600},
        {-7.0 / 17280, 3437.0 / 1555200, -320219.0 / 93312000 - 7 * kPi2 / 207360},
        {0, 0, 34 * kPi / 2083725 + kPi2 / 127008},
        {-29.0 / 4423680, 65377.0 / 1857945600, -10755917.0 / 195084288000 - 29 * kPi2 / 53084160},
        {0, 0, 23 * kPi / 241116750 + 11 * kPi2 / 97977600},
        {-167.0 / 2985984000, 23017.0 / 75246796800,
         -4650880853.0 / 9481096396800000 - 167 * kPi2 / 35831808000},
        {0, 0, 58 * kPi / 124804708875 + 17 * kPi2 / 18441561600},
    }};
}

SmallXTable printed_table()
{
    SmallXTable t = corrected_table();
    const double z3 = Constants::zeta3;
    t[4].l1 = 4187.0 / 86400;
    t[4].c0 = z3 / 96 - 33841.0 / 207360 - 5 * kPi2 / 3456;
    t[6].l1 = 17833.0 / 7776000;
    t[6].c0 = -1822711.0 / 466560000 - 7 * kPi2 / 207360;
    t[8].l1 = 32429.0 / 371589120;
    t[8].c0 = -13296077.0 / 195084288000 - 29 * kPi2 / 53084160;
    t[10].l1 = -43214671.0 / 144850083840000;
    t[10].c0 = 26826183589.0 / 58403553804288000 - 167 * kPi2 / 35831808000;
    return t;
}

const SmallXTable& table(SmallXCoefficients set)
{
    static const SmallXTable corrected = corrected_table();
    static const SmallXTable printed = printed_table();
    return set == SmallXCoefficients::Corrected ? corrected : printed;
}

}  // namespace

void MethodPolicy::validate() const
{
    if (!(x_smallx_max > 0.0) || !(x_smallx_max <= x_series_max))
        throw DomainError("MethodPolicy: require 0 < x_smallx_max <= x_series_max");
    trunc.validate();
    quad.validate();
    inner.validate();
}

Evaluation iks_series(double x, const fseries::Truncation& trunc, const specfun::CoefficientCache& cache)
{
    detail::require_positive(x, "iks_series");
    const double L = fseries::LogArgument::at(x).value;
    const double x2 = x * x, x4 = x2 * x2;
    const double m96 = x4 - 96;

    const std::array<double, 15> pref = {
        x * (-91.0 / 135 - x2 / 36 - 4.0 / 3 * L),
        47.0 / 27 + x2 * (47.0 / 6480 + x2 / 1620) - (24 + x2) * L / 12,
        x * (-65.0 / 648 + x2 * (419.0 / 12960 - x2 / 3240) + (36 + x2) * L / 24),
        -41.0 / 9 + x2 * (2.0 / 3 + x2 * (-5.0 / 864 + x2 / 3240)) - m96 * L / 24,
        (24 + x2) / 18,
        -x * (36 + x2) / 36,
        8.0 / 9 * x,
        -(6 + x2) / 18,
        x * (2 + x2) / 18,
        -4.0 / 3 * x,
        m96 / 36,
        -m96 / 18,
        -5.0 / 72 * m96,
        kPi2 * m96 / 144,
        -kPi2 * (-6 + x * (2 + x * (-1 + x))) / 144,
    };

    specfun::CompensatedSum sum;
    double err = 0.0;
    int terms = 0;
    for (int i = 0; i < 15; ++i) {
        const auto id = static_cast<FunctionId>(i + 1);
        const Evaluation f = fseries::eval_series(id, x, trunc, cache);
        sum += pref[i] * f.value;
        err += std::fabs(pref[i]) * f.err_est + 2 * kEps * std::fabs(pref[i] * f.value);
        terms += f.terms_used;
    }
    err += 2 * kEps * sum.magnitude();
    return {sum.value(), err, terms, Method::Series};
}

Evaluation iks_small(double x, SmallXCoefficients set)
{
    detail::require_positive(x, "iks_small");
    const double L = fseries::LogArgument::at(x).value;
    const SmallXTable& t = table(set);
    double v = 0.0, mag = 0.0;
    for (int n = static_cast<int>(t.size()) - 1; n >= 0; --n) {
        const double c = (t[n].l2 * L + t[n].l1) * L + t[n].c0;
        v = v * x + c;
        mag = mag * x + std::fabs(c);
    }
    const double last = std::fabs((t[11].l2 * L + t[11].l1) * L + t[11].c0) * std::pow(x, 11);
    return {v, last + 4 * kEps * mag, static_cast<int>(t.size()), Method::SmallX};
}

Evaluation iks_asym(double x, AsymptoticOrder order)
{
    detail::require_positive(x, "iks_asym");
    const double ex = std::exp(-x);
    const double leading = -kPi2 / 2 * ex / x;
    const double next = (3 * Constants::ln2 - 2.0 / 9) * std::sqrt(kPi / 2) * ex / std::pow(x, 1.5);
    if (order == AsymptoticOrder::Leading)
        return {leading, std::fabs(next), 1, Method::Asymptotic};
    return {leading + next, std::fabs(next), 2, Method::Asymptotic};
}

Evaluation iks(double x, const MethodPolicy& policy)
{
    detail::require_positive(x, "iks");
    policy.validate();
    if (x <= policy.x_series_max)
        return iks_series(x, policy.trunc);
    return quadrature::iks_fast(x, policy.quad, policy.inner);
}

Evaluation v_ks(double r, const PhysicalParams& params, const MethodPolicy& policy)
{
    detail::require_positive(r, "v_ks");
    params.validate();
    Evaluation e = iks(2 * r, policy);
    const double a = params.alpha;
    const double scale = a * a * (params.Z * a) / (kPi2 * r);
    e.value *= scale;
    e.err_est = e.err_est * std::fabs(scale) + 2 * kEps * std::fabs(e.value);
    return e;
}

}  // namespace ks
}  // namespace vpol
