#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "calibrix/geometry.hpp"
#include "calibrix/params.hpp"

namespace calibrix {

/// Harmonic polynomial u(x,y) = sum a_n Re((x+iy)^n). Realized through the
/// complex polynomial P(z) = sum a_n z^n with real coefficients, which makes
/// harmonicity and the vanishing normal derivative on the axis structural.
struct HarmonicPoly {
    std::vector<double> coeffs;

    std::complex<double> P(std::complex<double> z) const;
    std::complex<double> dP(std::complex<double> z) const;
    std::complex<double> ddP(std::complex<double> z) const;

    double u(double x, double y) const { return P({x, y}).real(); }
    double v(double x, double y) const { return P({x, y}).imag(); }
    Vec2 grad_u(double x, double y) const;
    Vec2 grad_v(double x, double y) const;

    double u0() const;        // u(0,0)
    double du_x0() const;     // d/dx u at (0,0)
    double ddu_x0() const;    // d^2/dx^2 u at (0,0)
};

/// Harmonic conjugate vanishing on the axis, as a standalone evaluator.
std::function<double(double, double)> conjugate(const HarmonicPoly& p);

/// Conformal chart (u,v) = Phi(x,y) around the origin with Newton inversion.
/// An optional shift moves the u-coordinate: chart value u = Re P - shift.
class Frame {
public:
    explicit Frame(HarmonicPoly poly, double u_shift = 0.0);

    const HarmonicPoly& poly() const { return poly_; }
    double u_shift() const { return shift_; }
    double u0() const { return u0_; }

    /// Chart map at a physical point.
    Vec2 phi(double x, double y) const;

    /// Inverse chart by path-following Newton from the expansion point.
    /// Throws NoConvergence when the iteration leaves the invertible patch.
    Vec2 psi(double u, double v) const;
    std::complex<double> psi_c(double u, double v) const;

    /// Metric factor 1/|grad u| evaluated at Psi(u,v); strictly positive.
    double gamma(double u, double v) const;

    /// d(eta)/dv where eta is the y-part of Psi (positive on the chart).
    double deta_dv(double u, double v) const;

    /// Tangent frame at a physical point: tau_u = grad u/|grad u|^2 etc.
    Vec2 tau_u(double x, double y) const;
    Vec2 tau_v(double x, double y) const;

private:
    HarmonicPoly poly_;
    double shift_ = 0.0;
    double u0_ = 0.0;
};

/// sigma(u,v) = gamma(a + sign*r, 0)/2 - 2 eps with r the distance to (a,0);
/// constant along circles centered at (a,0).
double sigma(const GeneralParams& gp, const Frame& fr, double u, double v);

/// Characteristic solution of the band-tilt transport problem:
/// beta = (mu-1) r theta / (lambda sigma(r)), theta measured about (a,0)
/// from the axis side containing the chart. beta(u,0) = 0 exactly.
double beta(const GeneralParams& gp, const Frame& fr, double u, double v);

}  // namespace calibrix
