#pragma once

#include <array>
#include <vector>

#include "calibrix/geometry.hpp"
#include "calibrix/params.hpp"

namespace calibrix {

/// Region tags of the piecewise field definition. A1/A5 are the tubes around
/// the two graph branches, A2/A4 the flux bands, A3 the correction band.
enum class Region { A1, A2, A3, A4, A5, Outside };

const char* region_name(Region r);

/// Which model construction applies: Opposite traces (w = x / -x) or the
/// unit jump (w = x+1 / x).
enum class ModelKind { Opposite, Shifted };

/// Cartesian field components (phi_x, phi_y, phi_z).
struct FieldValue {
    double phi_x = 0.0, phi_y = 0.0, phi_z = 1.0;
};

/// Half-width of the graph-neighborhood tube at height y. Requires |y| <= eps.
double tube_half_width(double y, double eps);

/// A z-interval [lo, hi) occupied by one region at a fixed base point.
struct RegionSpan {
    Region tag;
    double lo, hi;
};

/// The explicit piecewise field of one model construction. All evaluators are
/// pure; slice integrals use exact per-region antiderivatives.
class ModelField {
public:
    static ModelField from(const ModelParams& p);
    static ModelField from(const ShiftedParams& p);

    ModelKind kind() const { return kind_; }
    double x0() const { return x0_; }
    double eps() const { return eps_; }
    double delta() const { return delta_; }
    double h() const { return h_; }
    double lambda() const { return lambda_; }
    double kappa() const { return kappa_; }
    double b() const { return b_; }

    /// Test hook: overriding kappa (e.g. to 0) breaks the normal-flux match
    /// across the band boundaries without touching anything else.
    void override_kappa(double kappa);

    /// Base rectangle U.
    Rect domain() const;

    /// z-window outside which the field is exactly (0,0,1).
    double z_lo() const;
    double z_hi() const;

    /// Ascending region spans at (x, y); boundaries are half-open [lo, hi).
    std::array<RegionSpan, 5> spans(double x, double y) const;

    /// Sorted interface z-values at (x, y) (10 values, two per region).
    std::vector<double> cuts(double x, double y) const;

    Region classify(double x, double y, double z) const;

    FieldValue eval(double x, double y, double z) const;

    /// Correction profile on the A3 band, by logarithmic closed form.
    double f(double y) const;

    /// Componentwise integral of (phi_x, phi_y) dz over [t1, t2], exact.
    Vec2 slice(double x, double y, double t1, double t2) const;

    /// Jump interval [w-, w+] at (x, 0) and the trace value of w per side.
    std::array<double, 2> jump_span(double x) const;
    double w(double x, double y) const;       // the candidate minimizer
    Vec2 grad_w(double x, double y) const;    // off the jump set

    /// z-thickness of the A3 band (differs between the two constructions).
    double core_thickness() const { return kind_ == ModelKind::Opposite ? 2.0 * h_ : h_; }

private:
    ModelKind kind_ = ModelKind::Opposite;
    double x0_ = 0, eps_ = 0, delta_ = 0, h_ = 0, lambda_ = 0, kappa_ = 0, b_ = 0;

    Vec2 antiderivative(const RegionSpan& s, double x, double y, double z) const;
};

}  // namespace calibrix
