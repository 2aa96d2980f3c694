#include "calibrix/harmonic.hpp"

#include <cmath>

#include "calibrix/errors.hpp"

namespace calibrix {

using cplx = std::complex<double>;

cplx HarmonicPoly::P(cplx z) const {
    cplx acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx HarmonicPoly::dP(cplx z) const {
    cplx acc{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 1;)
        acc = acc * z + static_cast<double>(k) * coeffs[k];
    return acc;
}

cplx HarmonicPoly::ddP(cplx z) const {
    cplx acc{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 2;)
        acc = acc * z + static_cast<double>(k * (k - 1)) * coeffs[k];
    return acc;
}

Vec2 HarmonicPoly::grad_u(double x, double y) const {
    const cplx d = dP({x, y});
    return {d.real(), -d.imag()};
}

Vec2 HarmonicPoly::grad_v(double x, double y) const {
    const cplx d = dP({x, y});
    return {d.imag(), d.real()};
}

double HarmonicPoly::u0() const { return coeffs.empty() ? 0.0 : coeffs[0]; }

double HarmonicPoly::du_x0() const { return coeffs.size() > 1 ? coeffs[1] : 0.0; }

double HarmonicPoly::ddu_x0() const { return coeffs.size() > 2 ? 2.0 * coeffs[2] : 0.0; }

std::function<double(double, double)> conjugate(const HarmonicPoly& p) {
    return [p](double x, double y) { return p.P({x, y}).imag(); };
}

Frame::Frame(HarmonicPoly poly, double u_shift)
    : poly_(std::move(poly)), shift_(u_shift) {
    if (std::abs(poly_.du_x0()) == 0.0)
        throw HypothesisError("du/dx(0,0) != 0");
    u0_ = poly_.u0() - shift_;
}

Vec2 Frame::phi(double x, double y) const {
    const cplx w = poly_.P({x, y});
    return {w.real() - shift_, w.imag()};
}

cplx Frame::psi_c(double u, double v) const {
    const cplx target{u + shift_, v};
    const cplx start{poly_.u0(), 0.0};
    cplx z{0.0, 0.0};
    // Path-following keeps the iterate inside the invertible patch around the
    // expansion point; each leg is polished by plain Newton.
    const int legs = 4;
    for (int leg = 1; leg <= legs; ++leg) {
        const cplx w = start + (target - start) * (static_cast<double>(leg) / legs);
        bool done = false;
        cplx best = z;
        double best_res = std::abs(poly_.P(z) - w);
        for (int it = 0; it < 50; ++it) {
            const cplx d = poly_.dP(z);
            if (std::abs(d) < 1e-300) throw NoConvergence("chart Jacobian vanished");
            const cplx step = (poly_.P(z) - w) / d;
            z -= step;
            const double res = std::abs(poly_.P(z) - w);
            if (res < best_res) {
                best = z;
                best_res = res;
            }
            if (std::abs(step) <= 1e-15 * (1.0 + std::abs(z))) {
                done = true;
                break;
            }
        }
        // Stagnation at roundoff still counts when the residual is at noise level.
        if (!done && best_res <= 1e-11 * (1.0 + std::abs(w))) {
            z = best;
            done = true;
        }
        if (!done) throw NoConvergence("chart inversion did not converge");
    }
    return z;
}

Vec2 Frame::psi(double u, double v) const {
    const cplx z = psi_c(u, v);
    return {z.real(), z.imag()};
}

double Frame::gamma(double u, double v) const {
    return 1.0 / std::abs(poly_.dP(psi_c(u, v)));
}

double Frame::deta_dv(double u, double v) const {
    // D(Psi) = 1/P'(Psi) as a complex derivative; its imaginary-part row gives
    // d(eta)/dv = Re(1/P').
    const cplx d = poly_.dP(psi_c(u, v));
    return (1.0 / d).real();
}

Vec2 Frame::tau_u(double x, double y) const {
    const Vec2 g = poly_.grad_u(x, y);
    return g * (1.0 / g.norm2());
}

Vec2 Frame::tau_v(double x, double y) const {
    const Vec2 g = poly_.grad_v(x, y);
    return g * (1.0 / g.norm2());
}

double sigma(const GeneralParams& gp, const Frame& fr, double u, double v) {
    const double r = std::hypot(u - gp.a, v);
    return 0.5 * fr.gamma(gp.a + gp.sign * r, 0.0) - 2.0 * gp.eps;
}

double beta(const GeneralParams& gp, const Frame& fr, double u, double v) {
    if (v == 0.0) return 0.0;
    const double r = std::hypot(u - gp.a, v);
    const double theta = std::atan2(v, gp.sign * (u - gp.a));
    return (gp.mu - 1.0) * r * theta / (gp.lambda * sigma(gp, fr, u, v));
}

}  // namespace calibrix
