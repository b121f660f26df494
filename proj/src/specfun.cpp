#include "vpol/specfun.hpp"

#include "vpol/evaluation.hpp"

#include <gmpxx.h>

#include <string>

namespace vpol {

void detail::require_positive(double x, std::string_view what)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(what) + ": argument must be positive and finite, got " +
                          std::to_string(x));
}

namespace specfun {

namespace {

mpq_class ratio(const mpz_class& num, const mpz_class& den)
{
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// Exact building blocks shared by the c and r families. Everything here is
// rational; the only rounding happens in get_d() at the very end.
struct ExactTables {
    std::vector<mpz_class> fact;      // fact[n] = n!
    std::vector<mpz_class> odd_dfact; // odd_dfact[i] = (2i-1)!!, odd_dfact[0] = (-1)!! = 1
    std::vector<mpq_class> harmonic;  // harmonic[j] = H_j

    explicit ExactTables(int n)
        : fact(n + 1), odd_dfact(n + 2), harmonic(n + 1)
    {
        fact[0] = 1;
        for (int i = 1; i <= n; ++i)
            fact[i] = fact[i - 1] * i;
        odd_dfact[0] = 1;
        for (int i = 1; i <= n + 1; ++i)
            odd_dfact[i] = odd_dfact[i - 1] * (2 * i - 1);
        harmonic[0] = 0;
        for (int j = 1; j <= n; ++j)
            harmonic[j] = harmonic[j - 1] + ratio(1, j);
    }

    // (2i+1)!!
    const mpz_class& dfact_odd(int i) const { return odd_dfact[i + 1]; }
};

std::pair<mpq_class, mpq_class> exact_c(int j, const ExactTables& t)
{
    mpq_class c1 = 0, c2 = 0;
    for (int m = 0; m <= j; ++m) {
        const mpz_class& dfo = t.dfact_odd(j - m);  // (2j-2m+1)!!
        mpz_class base = mpz_class(2 * m + 1) * (mpz_class(1) << (2 * m)) * t.fact[m] * t.fact[m] *
                         dfo * dfo;
        const int slope = 2 * j - 4 * m + 1;
        c1 += ratio(slope, base * (j - m + 1));

        mpq_class inner = ratio(1, 2 * m + 1) + ratio(slope, 2 * (j - m + 1)) * t.harmonic[m];
        c2 += inner / mpq_class(base);
    }
    c1 *= ratio(-1, 4);
    c2 *= ratio(1, 2);
    return {c1, c2};
}

// S_k = sum over m = k - 2h of (-1)^m / (2^{2h} m! (h!)^2); T_k is the same sum
// weighted by H_h. Only even k - m contribute; odd ones are skipped outright.
struct ParityFilteredSums {
    std::vector<mpq_class> a;  // S_k / k
    std::vector<mpq_class> b;  // (S_k / k + T_k) / k

    ParityFilteredSums(int kmax, const ExactTables& t) : a(kmax + 1), b(kmax + 1)
    {
        for (int k = 1; k <= kmax; ++k) {
            mpq_class s = 0, tw = 0;
            for (int h = 0; 2 * h <= k; ++h) {
                const int m = k - 2 * h;
                mpz_class den = (mpz_class(1) << (2 * h)) * t.fact[m] * t.fact[h] * t.fact[h];
                mpq_class term = ratio(1, den);
                if (m % 2 != 0)
                    term = -term;
                s += term;
                tw += term * t.harmonic[h];
            }
            a[k] = s / mpq_class(k);
            b[k] = (a[k] + tw) / mpq_class(k);
        }
    }
};

std::pair<mpq_class, mpq_class> exact_r(int j, const ParityFilteredSums& sums, const ExactTables& t)
{
    const int n = 2 * j + 1;
    mpq_class r1 = 0, r2 = 0;
    for (int k = 1; k <= n; ++k) {
        const mpz_class& f = t.fact[n - k];
        r1 += sums.a[k] / mpq_class(f);
        r2 += sums.b[k] / mpq_class(f);
    }
    return {r1, r2};
}

void require_order(int j, const char* what)
{
    if (j < 0)
        throw DomainError(std::string(what) + ": index must be non-negative, got " + std::to_string(j));
}

}  // namespace

double harmonic_number(int j)
{
    require_order(j, "harmonic_number");
    CompensatedSum s;
    for (int k = 1; k <= j; ++k)
        s += 1.0 / k;
    return s.value();
}

double double_factorial(int n)
{
    if (n < -1)
        throw DomainError("double_factorial: n must be >= -1, got " + std::to_string(n));
    double p = 1.0;
    for (int k = n; k > 1; k -= 2)
        p *= k;
    return p;
}

std::pair<double, double> coeff_c(int j)
{
    require_order(j, "coeff_c");
    ExactTables t(2 * j + 2);
    auto [c1, c2] = exact_c(j, t);
    return {c1.get_d(), c2.get_d()};
}

std::pair<double, double> coeff_r(int j)
{
    require_order(j, "coeff_r");
    const int n = 2 * j + 1;
    ExactTables t(n);
    ParityFilteredSums sums(n, t);
    auto [r1, r2] = exact_r(j, sums, t);
    return {r1.get_d(), r2.get_d()};
}

CoefficientCache::CoefficientCache(int max_order)
    : max_order_(max_order)
{
    if (max_order < 0)
        throw DomainError("CoefficientCache: max_order must be non-negative");
    const int n = max_order + 1;
    c1_.resize(n);
    c2_.resize(n);
    r1_.resize(n);
    r2_.resize(n);
    harmonic_.resize(n);

    const int kmax = 2 * max_order + 1;
    ExactTables t(kmax + 1);
    ParityFilteredSums sums(kmax, t);
    for (int j = 0; j <= max_order; ++j) {
        auto [c1, c2] = exact_c(j, t);
        auto [r1, r2] = exact_r(j, sums, t);
        c1_[j] = c1.get_d();
        c2_[j] = c2.get_d();
        r1_[j] = r1.get_d();
        r2_[j] = r2.get_d();
        harmonic_[j] = t.harmonic[j].get_d();
    }
}

const CoefficientCache& default_cache()
{
    static const CoefficientCache cache;
    return cache;
}

}  // namespace specfun
}  // namespace vpol
