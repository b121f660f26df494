#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

namespace vpol::specfun {

struct Constants {
    static constexpr double gamma = std::numbers::egamma;
    static constexpr double zeta3 = 1.2020569031595942853997381615114;
    static constexpr double pi = std::numbers::pi;
    static constexpr double ln2 = std::numbers::ln2;
};

//! Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    CompensatedSum() = default;
    explicit CompensatedSum(double init) : sum_(init), abs_sum_(std::fabs(init)) {}

    void add(double v)
    {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
        abs_sum_ += std::fabs(v);
    }
    CompensatedSum& operator+=(double v)
    {
        add(v);
        return *this;
    }

    double value() const { return sum_ + comp_; }
    //! Sum of magnitudes of everything added; scales the rounding error.
    double magnitude() const { return abs_sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_sum_ = 0.0;
};

//! H_j = psi(j+1) - psi(1) = sum_{k=1}^{j} 1/k. Throws DomainError for j < 0.
double harmonic_number(int j);

//! n!! with (-1)!! = 0!! = 1. Throws DomainError for n < -1; +inf past overflow.
double double_factorial(int n);

//! (c1_j, c2_j): the coefficient pair of the ln(coth w) kernel family,
//! evaluated exactly and rounded once to double.
std::pair<double, double> coeff_c(int j);

//! (r1_j, r2_j): the coefficient pair of the w/sinh w kernel family,
//! evaluated exactly and rounded once to double.
std::pair<double, double> coeff_r(int j);

//! Immutable table of the c/r coefficient families and harmonic numbers for
//! j = 0..max_order. Safe to share between threads after construction.
class CoefficientCache {
public:
    static constexpr int kDefaultOrder = 64;

    explicit CoefficientCache(int max_order = kDefaultOrder);

    int max_order() const { return max_order_; }

    std::span<const double> c1() const { return c1_; }
    std::span<const double> c2() const { return c2_; }
    std::span<const double> r1() const { return r1_; }
    std::span<const double> r2() const { return r2_; }
    //! harmonic()[j] = H_j.
    std::span<const double> harmonic() const { return harmonic_; }

    bool operator==(const CoefficientCache&) const = default;

private:
    int max_order_;
    std::vector<double> c1_, c2_, r1_, r2_, harmonic_;
};

//! Process-wide cache at the default order, built on first use.
const CoefficientCache& default_cache();

}  // namespace vpol::specfun
