#include "calibrix/general_field.hpp"

#include <algorithm>
#include <cmath>

#include "calibrix/errors.hpp"

namespace calibrix {

namespace {

// Symmetric 3x3 eigenvalues, trigonometric closed form.
std::array<double, 3> sym3_eigenvalues(const std::array<std::array<double, 3>, 3>& A) {
    const double p1 = sqr(A[0][1]) + sqr(A[0][2]) + sqr(A[1][2]);
    if (p1 < 1e-300) {
        std::array<double, 3> e{A[0][0], A[1][1], A[2][2]};
        std::sort(e.begin(), e.end());
        return e;
    }
    const double q = (A[0][0] + A[1][1] + A[2][2]) / 3.0;
    const double p2 = sqr(A[0][0] - q) + sqr(A[1][1] - q) + sqr(A[2][2] - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    std::array<std::array<double, 3>, 3> B;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B[i][j] = (A[i][j] - (i == j ? q : 0.0)) / p;
    const double detB =
        B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) -
        B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
        B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
    const double r = std::clamp(detB / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    std::array<double, 3> e{e3, 3.0 * q - e1 - e3, e1};
    std::sort(e.begin(), e.end());
    return e;
}

HarmonicPoly flip_x(HarmonicPoly p) {
    for (std::size_t n = 1; n < p.coeffs.size(); n += 2) p.coeffs[n] = -p.coeffs[n];
    return p;
}

HarmonicPoly negate(HarmonicPoly p) {
    for (double& c : p.coeffs) c = -c;
    return p;
}

}  // namespace

Rect GeneralField::domain() const {
    return {gp_.u0 - gp_.delta, gp_.u0 + gp_.delta, -gp_.delta, gp_.delta};
}

double GeneralField::z_lo() const {
    return kind_ == GeneralKind::Opposite ? -(gp_.u0 + gp_.delta + 2.0 * gp_.eps)
                                          : gp_.u0 - gp_.delta - 2.0 * gp_.eps;
}

double GeneralField::z_hi() const {
    return kind_ == GeneralKind::Opposite ? gp_.u0 + gp_.delta + 2.0 * gp_.eps
                                          : gp_.u0 + 1.0 + gp_.delta + 2.0 * gp_.eps;
}

double GeneralField::f(double v) const {
    const double eps = gp_.eps;
    const double c1 = eps - v, c2 = eps + v;
    const double au = tube_half_width(v, eps), al = tube_half_width(-v, eps);
    const double iu = c1 * std::log((au + 2.0 * eps) / c1);
    const double il = c2 * std::log((al + 2.0 * eps) / c2);
    return kind_ == GeneralKind::Opposite ? -(iu - il) / gp_.h : -(iu + il) / gp_.h;
}

double GeneralField::sigma_at(double u, double v) const { return sigma(gp_, frame_, u, v); }

double GeneralField::beta_at(double u, double v) const { return beta(gp_, frame_, u, v); }

std::array<RegionSpan, 5> GeneralField::spans(double u, double v) const {
    const double au = tube_half_width(v, gp_.eps), al = tube_half_width(-v, gp_.eps);
    const double bt = beta_at(u, v);
    const double h = gp_.h, il = 1.0 / gp_.lambda;
    if (kind_ == GeneralKind::Opposite) {
        return {{{Region::A5, -u - al, -u + al},
                 {Region::A4, -3.0 * h + bt - il, -3.0 * h + bt},
                 {Region::A3, -h, h},
                 {Region::A2, 3.0 * h + bt, 3.0 * h + bt + il},
                 {Region::A1, u - au, u + au}}};
    }
    return {{{Region::A5, u - al, u + al},
             {Region::A4, h + bt, h + bt + il},
             {Region::A3, 2.0 * h, 4.0 * h},
             {Region::A2, 5.0 * h + bt, 5.0 * h + bt + il},
             {Region::A1, u + 1.0 - au, u + 1.0 + au}}};
}

std::vector<double> GeneralField::cuts(double u, double v) const {
    std::vector<double> c;
    c.reserve(10);
    for (const auto& s : spans(u, v)) {
        c.push_back(s.lo);
        c.push_back(s.hi);
    }
    return c;
}

Region GeneralField::classify(double u, double v, double z) const {
    for (const auto& s : spans(u, v))
        if (z >= s.lo && z < s.hi) return s.tag;
    return Region::Outside;
}

FrameFieldValue GeneralField::eval_frame(double u, double v, double z) const {
    const Region reg = classify(u, v, z);
    const double eps = gp_.eps;
    switch (reg) {
        case Region::A1: {
            const double c1 = eps - v;
            const double zc = kind_ == GeneralKind::Opposite ? u : u + 1.0;
            const double rho = std::hypot(c1, z - zc);
            return {2.0 * c1 / rho, -2.0 * (z - zc) / rho, 1.0};
        }
        case Region::A5: {
            const double c2 = eps + v;
            if (kind_ == GeneralKind::Opposite) {
                const double rho = std::hypot(c2, z + u);
                return {-2.0 * c2 / rho, 2.0 * (z + u) / rho, 1.0};
            }
            const double rho = std::hypot(c2, z - u);
            return {2.0 * c2 / rho, 2.0 * (z - u) / rho, 1.0};
        }
        case Region::A2:
        case Region::A4: {
            const double r = std::hypot(u - gp_.a, v);
            const double ls = gp_.lambda * sigma_at(u, v);
            return {-gp_.sign * ls * v / r, gp_.sign * ls * (u - gp_.a) / r, gp_.mu};
        }
        case Region::A3:
            return {f(v), 0.0, 1.0};
        default:
            return {0.0, 0.0, 1.0};
    }
}

FieldValue GeneralField::eval_physical(double x, double y, double z) const {
    const Vec2 uv = frame_.phi(x, y);
    const FrameFieldValue fv = eval_frame(uv.x, uv.y, z);
    const Vec2 gu = frame_.poly().grad_u(x, y);
    const Vec2 gv = frame_.poly().grad_v(x, y);
    // (calibration in physical coordinates) phi = phi_u grad u + phi_v grad v
    // in the plane and |grad u|^2 phi_z vertically.
    return {fv.phi_u * gu.x + fv.phi_v * gv.x,
            fv.phi_u * gu.y + fv.phi_v * gv.y,
            gu.norm2() * fv.phi_z};
}

Vec2 GeneralField::antiderivative(const RegionSpan& s, double u, double v, double z) const {
    const double eps = gp_.eps;
    switch (s.tag) {
        case Region::A1: {
            const double c1 = eps - v;
            const double zc = kind_ == GeneralKind::Opposite ? u : u + 1.0;
            return {2.0 * c1 * std::asinh((z - zc) / c1), -2.0 * std::hypot(c1, z - zc)};
        }
        case Region::A5: {
            const double c2 = eps + v;
            if (kind_ == GeneralKind::Opposite)
                return {-2.0 * c2 * std::asinh((z + u) / c2), 2.0 * std::hypot(c2, z + u)};
            return {2.0 * c2 * std::asinh((z - u) / c2), 2.0 * std::hypot(c2, z - u)};
        }
        case Region::A2:
        case Region::A4: {
            const double r = std::hypot(u - gp_.a, v);
            const double ls = gp_.lambda * sigma_at(u, v);
            return {-gp_.sign * ls * v / r * z, gp_.sign * ls * (u - gp_.a) / r * z};
        }
        case Region::A3:
            return {f(v) * z, 0.0};
        default:
            return {0.0, 0.0};
    }
}

Vec2 GeneralField::slice(double u, double v, double t1, double t2) const {
    if (t1 > t2) {
        const Vec2 r = slice(u, v, t2, t1);
        return {-r.x, -r.y};
    }
    Vec2 total{0.0, 0.0};
    for (const auto& s : spans(u, v)) {
        const double lo = std::max(t1, s.lo), hi = std::min(t2, s.hi);
        if (hi <= lo) continue;
        total = total + antiderivative(s, u, v, hi) - antiderivative(s, u, v, lo);
    }
    return total;
}

double GeneralField::d_function(double u, double v, double s, double t) const {
    const Vec2 I = slice(u, v, s, t);
    return I.norm2() - sqr(frame_.gamma(u, v));
}

std::array<double, 2> GeneralField::jump_span(double u) const {
    if (kind_ == GeneralKind::Opposite) return {-u, u};
    return {u, u + 1.0};
}

double GeneralField::w_graph_z(double u, int side) const {
    if (kind_ == GeneralKind::Opposite) return side > 0 ? u : -u;
    return side > 0 ? u + 1.0 : u;
}

double GeneralField::w_value(double x, double y) const {
    const double uval = frame_.poly().u(x, y) - frame_.u_shift();
    if (kind_ == GeneralKind::Opposite) return y > 0.0 ? uval : -uval;
    return y > 0.0 ? uval + 1.0 : uval;
}

Vec2 GeneralField::grad_w(double x, double y) const {
    const Vec2 g = frame_.poly().grad_u(x, y);
    if (kind_ == GeneralKind::Opposite && y < 0.0) return {-g.x, -g.y};
    return g;
}

double GeneralField::d_probe(double dv, double ds, double dt) const {
    const auto span = jump_span(gp_.u0);
    return d_function(gp_.u0, dv, span[0] + ds, span[1] + dt);
}

HessianResult GeneralField::hessian_check() const {
    // Steps: v uses the chart scale (gamma enters only through v), s/t use an
    // absolute step since their gamma term cancels in differences.
    const double hv = 1e-4 * gp_.delta;
    const double hst = 1e-5 * std::max(1.0, std::abs(gp_.u0));
    const std::array<double, 3> steps{hv, hst, hst};

    auto entry = [&](int i, int j, double scale) {
        std::array<double, 3> e1{}, e2{};
        e1[i] = steps[i] * scale;
        e2[j] = steps[j] * scale;
        if (i == j) {
            return (d_probe(e1[0], e1[1], e1[2]) - 2.0 * d_probe(0, 0, 0) +
                    d_probe(-e1[0], -e1[1], -e1[2])) /
                   sqr(steps[i] * scale);
        }
        const auto at = [&](double s1, double s2) {
            return d_probe(e1[0] * s1 + e2[0] * s2, e1[1] * s1 + e2[1] * s2,
                           e1[2] * s1 + e2[2] * s2);
        };
        return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) /
               (4.0 * steps[i] * steps[j] * sqr(scale));
    };

    HessianResult res;
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const double coarse = entry(i, j, 2.0);
            const double fine = entry(i, j, 1.0);
            const double ext = (4.0 * fine - coarse) / 3.0;  // Richardson
            res.matrix[i][j] = res.matrix[j][i] = ext;
        }
    }
    res.eigenvalues = sym3_eigenvalues(res.matrix);
    res.negative_definite = res.eigenvalues[2] < 0.0;
    res.dt_ds = res.matrix[1][2];
    return res;
}

GeneralField GeneralField::build(const HarmonicPoly& input, GeneralKind kind,
                                 const GeneralOverrides& ov) {
    HarmonicPoly poly = input;

    // Hypotheses, then the symmetry normalizations they license: negating u
    // swaps the two branches of the opposite-trace candidate, flipping x
    // reverses the tangential derivative; both preserve the functional.
    if (kind == GeneralKind::Opposite && poly.u0() == 0.0)
        throw HypothesisError("u(0,0) != 0");
    if (poly.du_x0() == 0.0) throw HypothesisError("du/dx(0,0) != 0");
    if (poly.ddu_x0() == 0.0) throw HypothesisError("d2u/dx2(0,0) != 0");

    if (kind == GeneralKind::Opposite && poly.u0() < 0.0) poly = negate(poly);
    if (poly.du_x0() < 0.0) poly = flip_x(poly);

    const double shift = kind == GeneralKind::Shifted ? poly.u0() : 0.0;

    GeneralField gf;
    gf.kind_ = kind;
    gf.frame_ = Frame(poly, shift);

    GeneralParams& gp = gf.gp_;
    gp.u0 = gf.frame_.u0();
    gp.sign = poly.ddu_x0() > 0.0 ? +1 : -1;

    const double gamma0 = gf.frame_.gamma(gp.u0, 0.0);
    if (kind == GeneralKind::Opposite) {
        gp.eps = ov.eps.value_or(
            std::min({0.98 / 32.0, gamma0 / 140.0, gp.u0 / 12.0}));
    } else {
        gp.eps = ov.eps.value_or(std::min({0.98 / 32.0, gamma0 / 140.0, 1.0 / 18.0}));
    }
    if (!(gp.eps > 0.0)) throw ConstraintViolation("eps > 0");

    gp.h = kind == GeneralKind::Opposite ? (gp.u0 - 3.0 * gp.eps) / 4.0
                                         : (1.0 - 6.0 * gp.eps) / 6.0;
    if (!(2.0 * gp.eps <= gp.h)) throw ConstraintViolation("2 eps <= h");
    gp.lambda = ov.lambda.value_or(8.0 / gp.h);
    if (!(gp.lambda > 0.0)) throw ConstraintViolation("lambda > 0");

    // Chart sizing: shrink delta until every pointwise bound holds on a
    // covering grid. Failures inside the predicates (e.g. Newton divergence)
    // count as "too large".
    auto predicates_hold = [&](double delta) -> bool {
        gp.delta = delta;
        if (!(delta < gp.eps) || !(delta > 0.0)) return false;
        gp.a = ov.a.value_or(gp.u0 - gp.sign * 12.0 * delta);
        if (!(gp.sign * (gp.u0 - gp.a) > 11.0 * delta)) return false;
        try {
            const int G = 32;
            double max_ls2 = 0.0;
            for (int i = 0; i <= G; ++i) {
                for (int j = 0; j <= G; ++j) {
                    const double u = gp.u0 - delta + 2.0 * delta * i / G;
                    const double v = -delta + 2.0 * delta * j / G;
                    const double g = gf.frame_.gamma(u, v);
                    if (!(g > 128.0 * gp.eps)) return false;
                    if (!(gf.frame_.deta_dv(u, v) > 8.0 * gp.eps)) return false;
                    const double sg = sigma(gp, gf.frame_, u, v);
                    if (!(2.0 * sg <= g)) return false;
                    max_ls2 = std::max(max_ls2, sqr(gp.lambda) / 4.0 * sqr(sg));
                }
            }
            gp.mu = ov.mu.value_or(1.05 * max_ls2);
            if (!(gp.mu > 0.0) || gp.mu < max_ls2) return false;
            // Region disjointness with the actual band tilt.
            for (int i = 0; i <= 8; ++i) {
                for (int j = 0; j <= 8; ++j) {
                    const double u = gp.u0 - delta + 2.0 * delta * i / 8;
                    const double v = -delta * 0.999 + 2.0 * 0.999 * delta * j / 8;
                    const auto sp = gf.spans(u, v);
                    double prev = -1e300;
                    for (const auto& s : sp) {
                        if (!(s.lo > prev) || !(s.hi > s.lo)) return false;
                        prev = s.hi;
                    }
                }
            }
            return true;
        } catch (const NoConvergence&) {
            return false;
        }
    };

    if (ov.delta) {
        if (!predicates_hold(*ov.delta))
            throw ConstraintViolation("chart bounds at requested delta");
    } else {
        double delta = 0.5 * gp.eps;
        bool ok = false;
        for (int it = 0; it < 60 && !ok; ++it) {
            ok = predicates_hold(delta);
            if (!ok) delta *= 0.65;
        }
        if (!ok) throw ConstraintViolation("chart sizing failed");
    }

    // Move a toward u0 (respecting the 11 delta gap) until the diagnostic
    // Hessian is negative definite.
    if (!ov.a) {
        const double a_limit = gp.u0 - gp.sign * 11.0 * gp.delta;
        for (int it = 0; it < 40; ++it) {
            if (gf.hessian_check().negative_definite) break;
            gp.a = 0.5 * (gp.a + a_limit);
            if (!ov.mu) {
                double max_ls2 = 0.0;
                const int G = 16;
                for (int i = 0; i <= G; ++i)
                    for (int j = 0; j <= G; ++j)
                        max_ls2 = std::max(
                            max_ls2,
                            sqr(gp.lambda) / 4.0 *
                                sqr(sigma(gp, gf.frame_,
                                          gp.u0 - gp.delta + 2.0 * gp.delta * i / G,
                                          -gp.delta + 2.0 * gp.delta * j / G)));
                gp.mu = 1.05 * max_ls2;
            }
        }
    }
    return gf;
}

}  // namespace calibrix
