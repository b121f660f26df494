#pragma once

#include "vpol/evaluation.hpp"
#include "vpol/fseries.hpp"
#include "vpol/quadrature.hpp"

namespace vpol {

struct PhysicalParams {
    double alpha = 7.2973525693e-3;
    double Z = 1.0;
    //! Reduced electron Compton wavelength in fm; radial distances are in these units.
    static constexpr double lambda_e_fm = 386.159;

    void validate() const;
};

namespace ks {

struct MethodPolicy {
    double x_series_max = 4.0;
    double x_smallx_max = 1.0;
    fseries::Truncation trunc{};
    quadrature::QuadratureSpec quad{};
    quadrature::InnerSeriesSpec inner{};

    void validate() const;
};

enum class SmallXCoefficients {
    //! Rational parts re-derived exactly from the full series; the default.
    Corrected,
    //! The coefficient set as originally published, kept for comparison.
    AsPrinted,
};

enum class AsymptoticOrder { Leading, NextOrder };

//! I_KS as the weighted sum of f01..f15 with polynomial prefactors.
Evaluation iks_series(double x, const fseries::Truncation& trunc = {},
                      const specfun::CoefficientCache& cache = specfun::default_cache());

//! Expansion in x, L and L^2 through the x^11 term.
Evaluation iks_small(double x, SmallXCoefficients set = SmallXCoefficients::Corrected);

//! -(pi^2/2) e^{-x}/x, optionally plus (3 ln 2 - 2/9) sqrt(pi/2) e^{-x}/x^{3/2}.
Evaluation iks_asym(double x, AsymptoticOrder order = AsymptoticOrder::NextOrder);

//! Series for x <= x_series_max, single-integral quadrature above.
Evaluation iks(double x, const MethodPolicy& policy = {});

//! alpha^2 (Z alpha) / (pi^2 r) I_KS(2r), r in units of the reduced Compton wavelength.
Evaluation v_ks(double r, const PhysicalParams& params = {}, const MethodPolicy& policy = {});

}  // namespace ks
}  // namespace vpol
