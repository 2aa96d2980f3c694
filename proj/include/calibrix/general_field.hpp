#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "calibrix/geometry.hpp"
#include "calibrix/harmonic.hpp"
#include "calibrix/model_field.hpp"
#include "calibrix/params.hpp"

namespace calibrix {

/// Which chart construction applies: Opposite traces (w = u / -u) or the
/// unit jump (w = u+1 / u, handled in coordinates shifted so u(0,0) = 0).
enum class GeneralKind { Opposite, Shifted };

/// Field components on the tangent frame (tau_u, tau_v, e_z).
struct FrameFieldValue {
    double phi_u = 0.0, phi_v = 0.0, phi_z = 1.0;
};

/// Result of the finite-difference curvature probe of the slice diagnostic
/// at its critical point.
struct HessianResult {
    std::array<std::array<double, 3>, 3> matrix{};  // d^2 in (v, s, t)
    std::array<double, 3> eigenvalues{};
    bool negative_definite = false;
    double dt_ds = 0.0;  // mixed (s,t) entry
};

/// Optional user overrides for the chart construction; anything unset is
/// derived automatically.
struct GeneralOverrides {
    std::optional<double> eps;
    std::optional<double> delta;
    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<double> a;
};

/// The assembled chart-coordinate calibration field for a harmonic input.
/// Construction normalizes the input (sign and axis flips encode the
/// admissible symmetries), sizes the chart, and tunes (a, mu).
class GeneralField {
public:
    static GeneralField build(const HarmonicPoly& input, GeneralKind kind,
                              const GeneralOverrides& ov = {});

    const GeneralParams& params() const { return gp_; }
    const Frame& frame() const { return frame_; }
    GeneralKind kind() const { return kind_; }

    /// Chart rectangle V and support window in z.
    Rect domain() const;
    double z_lo() const;
    double z_hi() const;

    double f(double v) const;               // correction profile on A3
    double sigma_at(double u, double v) const;
    double beta_at(double u, double v) const;
    double gamma_at(double u, double v) const { return frame_.gamma(u, v); }

    std::array<RegionSpan, 5> spans(double u, double v) const;
    std::vector<double> cuts(double u, double v) const;
    Region classify(double u, double v, double z) const;

    FrameFieldValue eval_frame(double u, double v, double z) const;

    /// Physical Cartesian field: (phi_u grad u + phi_v grad v, |grad u|^2 phi_z).
    FieldValue eval_physical(double x, double y, double z) const;

    /// Componentwise integral of (phi_u, phi_v) dz over [t1, t2], exact.
    Vec2 slice(double u, double v, double t1, double t2) const;

    /// Slice diagnostic |I(u,v,s,t)|^2 - gamma^2(u,v).
    double d_function(double u, double v, double s, double t) const;

    /// Critical slice endpoints (s0, t0) at chart height u.
    std::array<double, 2> jump_span(double u) const;

    /// Central-difference Hessian of the diagnostic in (v,s,t) at the
    /// critical point, with Richardson extrapolation and closed-form
    /// eigenvalues. Not an exception on indefiniteness: the verdict signals
    /// that `a` must move closer to u0.
    HessianResult hessian_check() const;

    /// Expected mixed (s,t) curvature from the on-graph traces.
    double expected_dt_ds() const { return kind_ == GeneralKind::Opposite ? 8.0 : -8.0; }

    /// Candidate minimizer data in chart/physical form, for condition (c).
    double w_graph_z(double u, int side) const;  // side=+1 upper branch
    Vec2 grad_w(double x, double y) const;
    double w_value(double x, double y) const;

private:
    GeneralParams gp_;
    Frame frame_{HarmonicPoly{{0.0, 1.0}}};
    GeneralKind kind_ = GeneralKind::Opposite;

    Vec2 antiderivative(const RegionSpan& s, double u, double v, double z) const;
    double d_probe(double dv, double ds, double dt) const;
};

}  // namespace calibrix
