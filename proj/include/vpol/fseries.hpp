#pragma once

#include "vpol/evaluation.hpp"
#include "vpol/specfun.hpp"

#include <array>
#include <string_view>

namespace vpol::fseries {

//! The component functions of the vacuum-polarization integrals.
/*! Each f is an integral over w in (0, inf) of e^{-x cosh w} times a kernel,
    or (F10..F14) that integral further integrated as int_x^inf dy/y.

      F01  1/cosh w              (= int_x^inf K0, Bickley Ki1)
      F02  1                     (= K0)
      F03  cosh w                (= K1)
      F04  w tanh w
      F05  ln coth w
      F06  cosh w ln coth w
      F07  ln(coth w) / cosh w
      F08  w cosh w / sinh w
      F09  w / sinh w
      F10  int_x dy/y of F01
      F11  int_x dy/y of F05
      F12  int_x dy/y of F08
      F13  int_x dy/y of F04
      F14  E1(x)
      F15  e^{-x}
      F16  w sinh w              (= K0/x)
      F17  ln sinh w             (= -(gamma + ln 2 + ln x) K0 / 2)
*/
enum class FunctionId { F01 = 1, F02, F03, F04, F05, F06, F07, F08, F09, F10, F11, F12, F13, F14, F15, F16, F17 };

inline constexpr std::array<FunctionId, 17> kAllFunctions = {
    FunctionId::F01, FunctionId::F02, FunctionId::F03, FunctionId::F04, FunctionId::F05, FunctionId::F06,
    FunctionId::F07, FunctionId::F08, FunctionId::F09, FunctionId::F10, FunctionId::F11, FunctionId::F12,
    FunctionId::F13, FunctionId::F14, FunctionId::F15, FunctionId::F16, FunctionId::F17};

constexpr int index(FunctionId id) { return static_cast<int>(id); }
std::string_view name(FunctionId id);

struct Truncation {
    double rel_tol = 1e-15;
    int max_terms = 200;
    int consecutive_small = 3;

    //! Throws DomainError if any field is out of range.
    void validate() const;
};

//! L = gamma + ln(x/2), shared by every logarithmic series group.
struct LogArgument {
    double value;

    static LogArgument at(double x);
};

//! Each series is a polynomial in L whose coefficients are power series in x:
//!   f(x) = G0(x) + L G1(x) + L^2 G2(x) + L^3 G3(x).
struct SeriesGroups {
    std::array<double, 4> coeff{};
    //! Truncation remainder plus rounding bound for each group.
    std::array<double, 4> err{};
    int terms_used = 0;

    double combine(double L) const { return ((coeff[3] * L + coeff[2]) * L + coeff[1]) * L + coeff[0]; }
    double combined_error(double L) const;
};

//! Group-by-group series for F01..F15 (F16 and F17 are expressed through F02).
SeriesGroups series_groups(FunctionId id, double x, const Truncation& trunc = {},
                           const specfun::CoefficientCache& cache = specfun::default_cache());

Evaluation eval_series(FunctionId id, double x, const Truncation& trunc = {},
                       const specfun::CoefficientCache& cache = specfun::default_cache());

//! int_0^inf e^{-x cosh w} w sinh w dw = K0(x)/x
Evaluation eval_f16(double x, const Truncation& trunc = {},
                    const specfun::CoefficientCache& cache = specfun::default_cache());

//! int_0^inf e^{-x cosh w} ln(sinh w) dw = -(gamma + ln 2 + ln x) K0(x) / 2
Evaluation eval_f17(double x, const Truncation& trunc = {},
                    const specfun::CoefficientCache& cache = specfun::default_cache());

}  // namespace vpol::fseries
