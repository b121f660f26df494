#include "vpol/uehling.hpp"

#include <cmath>
#include <limits>

namespace vpol::uehling {

namespace {

using fseries::FunctionId;
using specfun::Constants;

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

UehlingKernelSet UehlingKernelSet::at(double x, const fseries::Truncation& trunc,
                                      const specfun::CoefficientCache& cache)
{
    return {fseries::eval_series(FunctionId::F02, x, trunc, cache),
            fseries::eval_series(FunctionId::F03, x, trunc, cache),
            fseries::eval_series(FunctionId::F01, x, trunc, cache)};
}

Evaluation iueh_closed(double x, const fseries::Truncation& trunc, const specfun::CoefficientCache& cache)
{
    detail::require_positive(x, "iueh_closed");
    const UehlingKernelSet k = UehlingKernelSet::at(x, trunc, cache);
    const double x2 = x * x;
    const double p0 = (12 + x2) / 12, p1 = -x * (10 + x2) / 12, p2 = x * (9 + x2) / 12;
    specfun::CompensatedSum s;
    s += p0 * k.k0.value;
    s += p1 * k.k1.value;
    s += p2 * k.ik0.value;
    const double err = std::fabs(p0) * k.k0.err_est + std::fabs(p1) * k.k1.err_est +
                       std::fabs(p2) * k.ik0.err_est + 4 * kEps * s.magnitude();
    return {s.value(), err, k.k0.terms_used + k.k1.terms_used + k.ik0.terms_used, Method::Closed};
}

Evaluation iueh_small(double x)
{
    detail::require_positive(x, "iueh_small");
    const double L = fseries::LogArgument::at(x).value;
    const double pi = Constants::pi;
    // Coefficients of x^0..x^12 as (constant, L coefficient).
    const double c[13][2] = {
        {-5.0 / 6, -1},
        {3 * pi / 8, 0},
        {-3.0 / 8, 0},
        {pi / 24, 0},
        {-7.0 / 192, 1.0 / 64},
        {0, 0},
        {-127.0 / 345600, 1.0 / 5760},
        {0, 0},
        {-949.0 / 240844800, 1.0 / 573440},
        {0, 0},
        {-6079.0 / 195084288000, 1.0 / 77414400},
        {0, 0},
        {-5053.0 / 27748152115200, 1.0 / 14014218240},
    };
    double v = 0.0, mag = 0.0;
    for (int n = 12; n >= 0; --n) {
        const double t = c[n][0] + c[n][1] * L;
        v = v * x + t;
        mag = mag * x + std::fabs(t);
    }
    const double last = std::fabs(c[12][0] + c[12][1] * L) * std::pow(x, 12);
    return {v, last + 4 * kEps * mag, 13, Method::SmallX};
}

Evaluation iueh(double x, const fseries::Truncation& trunc, const quadrature::QuadratureSpec& quad)
{
    detail::require_positive(x, "iueh");
    if (x <= kClosedFormMax)
        return iueh_closed(x, trunc);
    return quadrature::uehling_integral(x, quad);
}

Evaluation v_uehling(double r, const PhysicalParams& params, const fseries::Truncation& trunc,
                     const quadrature::QuadratureSpec& quad)
{
    detail::require_positive(r, "v_uehling");
    params.validate();
    Evaluation e = iueh(2 * r, trunc, quad);
    const double a = params.alpha;
    const double scale = -2.0 / 3 * a * (params.Z * a) / (Constants::pi * r);
    e.value *= scale;
    e.err_est = e.err_est * std::fabs(scale) + 2 * kEps * std::fabs(e.value);
    return e;
}

}  // namespace vpol::uehling
