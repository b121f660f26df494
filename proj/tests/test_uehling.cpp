#include "vpol/quadrature.hpp"
#include "vpol/uehling.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace vpol;
using namespace vpol::uehling;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

constexpr double kAlpha = 7.2973525693e-3;

}  // namespace

TEST(IuehClosed, HighPrecisionValues)
{
    EXPECT_LE(rel(iueh_closed(0.01).value, 3.89951197056156943), 1e-14);
    EXPECT_LE(rel(iueh_closed(0.1).value, 1.69936647396966743), 1e-14);
    EXPECT_LE(rel(iueh_closed(1.0).value, 0.177933578889234295), 1e-14);
    EXPECT_LE(rel(iueh_closed(4.0).value, 0.0024052220916846744), 1e-10);
    EXPECT_EQ(iueh_closed(1.0).method, Method::Closed);
}

TEST(IuehClosed, MatchesIntegral)
{
    for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 3.0, 4.0}) {
        const Evaluation c = iueh_closed(x);
        const Evaluation q = quadrature::uehling_integral(x);
        EXPECT_LE(rel(c.value, q.value), x <= 1.0 ? 1e-10 : 1e-9) << x;
        EXPECT_LE(std::fabs(c.value - q.value), c.err_est + q.err_est) << x;
    }
}

TEST(IuehClosed, SmallXLeadingTerms)
{
    const double x = 1e-6;
    EXPECT_NEAR(iueh_closed(x).value, -5.0 / 6 - (std::numbers::egamma + std::log(x / 2)), 1e-5);
}

TEST(IuehSmall, AgreesWithClosedForm)
{
    EXPECT_LE(rel(iueh_small(0.1).value, iueh_closed(0.1).value), 1e-10);
    EXPECT_LE(rel(iueh_small(0.5).value, iueh_closed(0.5).value), 1e-7);
    EXPECT_LE(rel(iueh_small(1e-8).value, iueh_closed(1e-8).value), 1e-12);
    EXPECT_EQ(iueh_small(0.1).method, Method::SmallX);
}

TEST(IuehSmall, TruncationOrder)
{
    // The remainder starts at x^14 ln x. Deep below x = 0.5 it sits under double
    // rounding, so the scaling is measured between x = 1 and x = 2.
    const double d1 = std::fabs(iueh_small(1.0).value - iueh_closed(1.0).value);
    const double d2 = std::fabs(iueh_small(2.0).value - iueh_closed(2.0).value);
    const double ratio = d2 / d1;
    const double expected = std::pow(2.0, 14);
    EXPECT_GT(ratio, expected / 3);
    EXPECT_LT(ratio, expected * 3);
}

TEST(Iueh, SwitchesToQuadratureForLargeX)
{
    EXPECT_EQ(iueh(5.0).method, Method::Closed);
    EXPECT_EQ(iueh(12.0).method, Method::Quadrature);
    EXPECT_LE(rel(iueh(12.0).value, quadrature::uehling_integral(12.0).value), 1e-15);
}

TEST(VUehling, Composition)
{
    const double want = -2.0 / 3 * kAlpha * kAlpha / (std::numbers::pi * 0.5) * iueh_closed(1.0).value;
    EXPECT_LE(rel(v_uehling(0.5).value, want), 1e-15);
}

TEST(VUehling, LinearInZ)
{
    PhysicalParams z1, z2;
    z2.Z = 2.0;
    for (double r : {0.01, 0.5, 3.0})
        EXPECT_DOUBLE_EQ(v_uehling(r, z2).value, 2 * v_uehling(r, z1).value);
}

TEST(VUehling, NegativeOnRange)
{
    for (double r = 0.01; r <= 2.0; r += 0.01)
        EXPECT_LT(v_uehling(r).value, 0.0) << r;
}

TEST(VUehling, DomainErrors)
{
    EXPECT_THROW(v_uehling(0.0), DomainError);
    EXPECT_THROW(iueh_closed(-1.0), DomainError);
    EXPECT_THROW(iueh_small(0.0), DomainError);
}
