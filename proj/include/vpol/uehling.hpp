#pragma once

#include "vpol/evaluation.hpp"
#include "vpol/fseries.hpp"
#include "vpol/kallen_sabry.hpp"
#include "vpol/quadrature.hpp"

namespace vpol::uehling {

//! K0, K1 and int_x^inf K0 at one point, from the shared component series.
struct UehlingKernelSet {
    Evaluation k0, k1, ik0;

    static UehlingKernelSet at(double x, const fseries::Truncation& trunc = {},
                               const specfun::CoefficientCache& cache = specfun::default_cache());
};

//! Above this x the closed form cancels and the integral is used instead.
inline constexpr double kClosedFormMax = 10.0;

//! ((12 + x^2) K0 - x (10 + x^2) K1 + x (9 + x^2) int_x^inf K0) / 12
Evaluation iueh_closed(double x, const fseries::Truncation& trunc = {},
                       const specfun::CoefficientCache& cache = specfun::default_cache());

//! Small-x expansion through the x^12 term.
Evaluation iueh_small(double x);

//! Closed form up to kClosedFormMax, quadrature beyond.
Evaluation iueh(double x, const fseries::Truncation& trunc = {}, const quadrature::QuadratureSpec& quad = {});

//! -(2/3) alpha (Z alpha) / (pi r) I_U(2r), r in units of the reduced Compton wavelength.
Evaluation v_uehling(double r, const PhysicalParams& params = {}, const fseries::Truncation& trunc = {},
                     const quadrature::QuadratureSpec& quad = {});

}  // namespace vpol::uehling
