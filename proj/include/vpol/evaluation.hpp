#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vpol {

enum class Method { Series, Quadrature, SmallX, Asymptotic, Closed };

constexpr std::string_view to_string(Method m)
{
    switch (m) {
    case Method::Series: return "series";
    case Method::Quadrature: return "quadrature";
    case Method::SmallX: return "smallx";
    case Method::Asymptotic: return "asymptotic";
    case Method::Closed: return "closed";
    }
    return "unknown";
}

//! A computed value together with an absolute error estimate and work counters.
/*! err_est is a bound on |value - exact| under the assumptions of the method
    that produced it (truncation remainder plus accumulated rounding). For
    quadrature, terms_used counts integrand evaluations. */
struct Evaluation {
    double value = 0.0;
    double err_est = 0.0;
    int terms_used = 0;
    Method method = Method::Series;
};

class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

//! Argument outside the domain of the function (e.g. x <= 0).
class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

//! A series failed to reach its truncation criterion within its term budget.
class NonConvergent : public NumericError {
public:
    using NumericError::NumericError;
};

//! A quadrature could not meet the requested tolerance.
class ToleranceNotMet : public NumericError {
public:
    using NumericError::NumericError;
};

namespace detail {
void require_positive(double x, std::string_view what);
}

}  // namespace vpol
