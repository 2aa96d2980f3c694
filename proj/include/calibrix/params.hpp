#pragma once

#include <functional>
#include <map>
#include <string>

#include "calibrix/errors.hpp"

namespace calibrix {

/// Parameters of the opposite-trace model construction around (x0, 0).
///
/// Derived quantities:
///   h      = (x0 - 3 eps) / 4        band thickness
///   lambda = (1 - 4 eps) / (2 h)     band flux slope
///   kappa  = lambda/4 - 1/lambda     band shear (normal-flux matching)
///   b      = 2 h + kappa delta       band offset
struct ModelParams {
    double x0 = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    double h = 0.0;
    double lambda = 0.0;
    double kappa = 0.0;
    double b = 0.0;

    /// Signed slack of every validated constraint (positive = satisfied),
    /// kept for report auditing.
    std::map<std::string, double> constraint_margins;
};

/// Parameters of the unit-jump (shifted) model construction. Same field
/// roles as ModelParams with h = (1 - 6 eps)/5 and b = x0 + 3 eps + kappa delta.
struct ShiftedParams {
    double x0 = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    double h = 0.0;
    double lambda = 0.0;
    double kappa = 0.0;
    double b = 0.0;

    std::map<std::string, double> constraint_margins;
};

/// Parameters of the conformal-chart construction around (u0, 0).
/// sign = +1 when the second tangential derivative at the origin is positive
/// (characteristic-circle center a sits below u0), -1 otherwise.
struct GeneralParams {
    double u0 = 0.0;
    double eps = 0.0;
    double delta = 0.0;
    double h = 0.0;
    double lambda = 0.0;
    double a = 0.0;
    double mu = 0.0;
    int sign = +1;
};

/// Derives all model parameters and validates the admissibility constraints.
/// Throws ConstraintViolation naming the first failed constraint.
ModelParams derive_model_params(double x0, double eps, double delta);

/// Shifted-construction analogue of derive_model_params.
ShiftedParams derive_shifted_params(double x0, double eps, double delta);

/// True iff sup |2 h f(y)| <= eps over a dense sample of |y| < delta.
/// Used when auto-sizing delta; f_eval must be defined on |y| < delta.
bool validate_f_smallness(const ModelParams& p,
                          const std::function<double(double)>& f_eval,
                          int samples = 10000);

/// Largest delta (up to a safety factor) satisfying the delta bounds and the
/// f-smallness criterion, found by bisection (40 iterations).
double auto_delta_model(double x0, double eps);

/// Largest admissible delta for the shifted construction. The correction
/// profile does not vanish at y = 0 here, so only the geometric bounds apply.
double auto_delta_shifted(double x0, double eps);

}  // namespace calibrix
