#pragma once

#include "vpol/evaluation.hpp"
#include "vpol/fseries.hpp"

namespace vpol::quadrature {

struct QuadratureSpec {
    double abs_tol = 1e-13;
    double rel_tol = 1e-12;
    int max_refinements = 15;
    //! Largest t for which e^{-t} is kept; the w-cutoff solves x (cosh W - 1) = underflow_exponent.
    double underflow_exponent = 745.0;

    //! W(x). Every w-integrand carries e^{-x (cosh w - 1)} once e^{-x} is factored out.
    double cutoff(double x) const;
    void validate() const;
};

struct InnerSeriesSpec {
    double term_tol = 1e-18;
    int max_k = 400;

    void validate() const;
};

//! Li2(z) for 0 <= z <= 1: direct sum for z <= 1/2, reflection above.
double dilog(double z, const InnerSeriesSpec& inner = {});

//! Integral representation of the named component function.
Evaluation eval_integral(fseries::FunctionId id, double x, const QuadratureSpec& spec = {});

//! Single-integral form of I_KS with the inner power series summed as dilogarithms.
Evaluation iks_fast(double x, const QuadratureSpec& spec = {}, const InnerSeriesSpec& inner = {});

//! The defining double integral of I_KS, t = cosh w and y = cosh u in both layers.
Evaluation iks_defining(double x, const QuadratureSpec& spec = {});

//! int_0^inf e^{-x cosh w} (1 - cosh^-2 w / 2 - cosh^-4 w / 2) dw
Evaluation uehling_integral(double x, const QuadratureSpec& spec = {});

}  // namespace vpol::quadrature
