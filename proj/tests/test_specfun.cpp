#include "rational_oracle.hpp"

#include "vpol/evaluation.hpp"
#include "vpol/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace vpol;
using namespace vpol::specfun;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

TEST(Constants, MatchTabulatedDigits)
{
    EXPECT_NEAR(Constants::gamma, 0.577215664901533, 5e-16);
    EXPECT_NEAR(Constants::zeta3, 1.20205690315959, 5e-15);
}

TEST(HarmonicNumber, SmallValues)
{
    EXPECT_EQ(harmonic_number(0), 0.0);
    EXPECT_EQ(harmonic_number(1), 1.0);
    EXPECT_DOUBLE_EQ(harmonic_number(3), 11.0 / 6);
}

TEST(HarmonicNumber, Recurrence)
{
    for (int j = 1; j <= 200; ++j)
        EXPECT_NEAR(harmonic_number(j) - harmonic_number(j - 1), 1.0 / j, 4e-16 * harmonic_number(j)) << j;
}

TEST(HarmonicNumber, RejectsNegative)
{
    EXPECT_THROW(harmonic_number(-1), DomainError);
}

TEST(DoubleFactorial, Conventions)
{
    EXPECT_EQ(double_factorial(-1), 1.0);
    EXPECT_EQ(double_factorial(0), 1.0);
    EXPECT_EQ(double_factorial(5), 15.0);
    EXPECT_EQ(double_factorial(6), 48.0);
    EXPECT_THROW(double_factorial(-2), DomainError);
}

TEST(CoeffC, OrderZeroIsExact)
{
    const auto [c1, c2] = coeff_c(0);
    EXPECT_EQ(c1, -0.25);
    EXPECT_EQ(c2, 0.5);
}

TEST(CoeffC, OrderOne)
{
    const auto [c1, c2] = coeff_c(1);
    EXPECT_DOUBLE_EQ(c1, -1.0 / 48);
    EXPECT_DOUBLE_EQ(c2, test::to_double(test::oracle_c(1).second));
    EXPECT_NEAR(c2, 0.0486111111111111, 1e-15);
}

TEST(CoeffC, OrderFiveMatchesRationalOracle)
{
    const auto [c1, c2] = coeff_c(5);
    const auto [e1, e2] = test::oracle_c(5);
    EXPECT_LE(rel(c1, test::to_double(e1)), 1e-15);
    EXPECT_LE(rel(c2, test::to_double(e2)), 1e-15);
}

TEST(CoeffR, OrderZero)
{
    const auto [r1, r2] = coeff_r(0);
    EXPECT_EQ(r1, -1.0);
    EXPECT_EQ(r2, -1.0);
}

TEST(CoeffR, OrderThreeMatchesRationalOracle)
{
    const auto [r1, r2] = coeff_r(3);
    const auto [e1, e2] = test::oracle_r(3);
    EXPECT_LE(rel(r1, test::to_double(e1)), 1e-15);
    EXPECT_LE(rel(r2, test::to_double(e2)), 1e-15);
}

TEST(CoeffR, OrderOneKnownValues)
{
    const auto [r1, r2] = coeff_r(1);
    EXPECT_NEAR(r1, -0.263888888888889, 1e-14);
    EXPECT_NEAR(r2, -0.317129629629630, 1e-14);
}

TEST(CoefficientCache, MatchesRationalOracleThroughOrder32)
{
    const CoefficientCache& cache = default_cache();
    for (int j = 0; j <= 32; ++j) {
        const auto [c1, c2] = test::oracle_c(j);
        const auto [r1, r2] = test::oracle_r(j);
        EXPECT_LE(rel(cache.c1()[j], test::to_double(c1)), 1e-13) << j;
        EXPECT_LE(rel(cache.c2()[j], test::to_double(c2)), 1e-13) << j;
        EXPECT_LE(rel(cache.r1()[j], test::to_double(r1)), 1e-13) << j;
        EXPECT_LE(rel(cache.r2()[j], test::to_double(r2)), 1e-13) << j;
    }
}

TEST(CoefficientCache, Invariants)
{
    const CoefficientCache cache(20);
    ASSERT_EQ(cache.max_order(), 20);
    for (auto span : {cache.c1(), cache.c2(), cache.r1(), cache.r2(), cache.harmonic()}) {
        ASSERT_EQ(span.size(), 21u);
        for (double v : span)
            EXPECT_TRUE(std::isfinite(v));
    }
    EXPECT_EQ(cache.c1()[0], -0.25);
    EXPECT_EQ(cache.c2()[0], 0.5);
    EXPECT_EQ(cache.harmonic()[0], 0.0);
    for (int j = 1; j <= 20; ++j)
        EXPECT_NEAR(cache.harmonic()[j] - cache.harmonic()[j - 1], 1.0 / j, 1e-15);
}

TEST(CoefficientCache, FreeFunctionsAgreeWithCache)
{
    const CoefficientCache& cache = default_cache();
    for (int j : {0, 1, 7, 40, 64}) {
        EXPECT_EQ(coeff_c(j).first, cache.c1()[j]);
        EXPECT_EQ(coeff_c(j).second, cache.c2()[j]);
        EXPECT_EQ(coeff_r(j).first, cache.r1()[j]);
        EXPECT_EQ(coeff_r(j).second, cache.r2()[j]);
    }
}

TEST(CoefficientCache, DeterministicConstruction)
{
    EXPECT_TRUE(CoefficientCache(30) == CoefficientCache(30));
    EXPECT_FALSE(CoefficientCache(30) == CoefficientCache(31));
}

TEST(CoefficientCache, RejectsNegativeOrder)
{
    EXPECT_THROW(CoefficientCache(-1), DomainError);
}

TEST(CompensatedSum, RecoversCancellation)
{
    CompensatedSum s;
    s += 1.0;
    s += 1e100;
    s += 1.0;
    s += -1e100;
    EXPECT_EQ(s.value(), 2.0);
    EXPECT_EQ(s.magnitude(), 2.0 + 2e100);
}
