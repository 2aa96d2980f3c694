#include <doctest.h>

#include <cmath>

#include "calibrix/general_field.hpp"
#include "calibrix/sampling.hpp"
#include "oracles.hpp"

using namespace calibrix;

namespace {

const GeneralField& standard_field() {
    static const GeneralField f =
        GeneralField::build(HarmonicPoly{{1.0, 1.0, 1.0}}, GeneralKind::Opposite);
    return f;
}

}  // namespace

TEST_CASE("build derives and validates the parameter set") {
    const GeneralParams& gp = standard_field().params();
    CHECK(gp.u0 == doctest::Approx(1.0));
    CHECK(gp.sign == 1);
    CHECK(gp.eps <= 1.0 / 32.0);
    CHECK(2.0 * gp.eps <= gp.h);
    CHECK(gp.h == doctest::Approx((gp.u0 - 3.0 * gp.eps) / 4.0).epsilon(1e-14));
    CHECK(gp.lambda == doctest::Approx(8.0 / gp.h).epsilon(1e-14));
    CHECK(gp.sign * (gp.u0 - gp.a) > 11.0 * gp.delta);
    CHECK(gp.delta < gp.eps);

    // chart bounds hold across V
    const Frame& fr = standard_field().frame();
    for (int i = 0; i <= 16; ++i) {
        for (int j = 0; j <= 16; ++j) {
            const double u = gp.u0 - gp.delta + 2.0 * gp.delta * i / 16;
            const double v = -gp.delta + 2.0 * gp.delta * j / 16;
            CHECK(fr.gamma(u, v) > 128.0 * gp.eps);
            CHECK(fr.deta_dv(u, v) > 8.0 * gp.eps);
            CHECK(2.0 * standard_field().sigma_at(u, v) <= fr.gamma(u, v));
            const double max_ls =
                sqr(gp.lambda) / 4.0 * sqr(standard_field().sigma_at(u, v));
            CHECK(max_ls <= gp.mu);
        }
    }
}

TEST_CASE("hypothesis checks") {
    CHECK_THROWS_AS(GeneralField::build(HarmonicPoly{{0.0, 1.0}}, GeneralKind::Opposite),
                    HypothesisError);
    CHECK_THROWS_AS(GeneralField::build(HarmonicPoly{{1.0, 1.0}}, GeneralKind::Opposite),
                    HypothesisError);
    CHECK_THROWS_AS(GeneralField::build(HarmonicPoly{{1.0, 0.0, 1.0}},
                                        GeneralKind::Opposite),
                    HypothesisError);
    // the unit-jump construction does not need u(0,0) != 0
    CHECK_NOTHROW(GeneralField::build(HarmonicPoly{{0.0, 1.0, 1.0}},
                                      GeneralKind::Shifted));
}

TEST_CASE("symmetry normalization accepts negated and reflected inputs") {
    const GeneralField f =
        GeneralField::build(HarmonicPoly{{-1.0, -1.0, -1.0}}, GeneralKind::Opposite);
    CHECK(f.params().u0 == doctest::Approx(1.0));
    const GeneralField g =
        GeneralField::build(HarmonicPoly{{1.0, -1.0, 1.0}}, GeneralKind::Opposite);
    CHECK(g.frame().poly().du_x0() > 0.0);
}

TEST_CASE("on-graph frame values are exact") {
    const GeneralField& f = standard_field();
    const GeneralParams& gp = f.params();
    HaltonSampler s(33);
    for (int i = 0; i < 200; ++i) {
        const double u = s.in(i, 0, gp.u0 - gp.delta, gp.u0 + gp.delta);
        const double v = s.in(i, 1, -gp.delta, gp.delta);
        const FrameFieldValue up = f.eval_frame(u, v, u);
        CHECK(up.phi_u == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(up.phi_v == doctest::Approx(0.0));
        CHECK(up.phi_z == doctest::Approx(1.0));
        const FrameFieldValue lo = f.eval_frame(u, v, -u);
        CHECK(lo.phi_u == doctest::Approx(-2.0).epsilon(1e-12));
        CHECK(lo.phi_v == doctest::Approx(0.0));
    }
}

TEST_CASE("flux band values") {
    const GeneralField& f = standard_field();
    const GeneralParams& gp = f.params();
    const double u = gp.u0 + 0.4 * gp.delta, v = -0.3 * gp.delta;
    const auto sp = f.spans(u, v);
    const double z = 0.5 * (sp[3].lo + sp[3].hi);
    const FrameFieldValue g = f.eval_frame(u, v, z);
    const double r = std::hypot(u - gp.a, v);
    const double ls = gp.lambda * f.sigma_at(u, v);
    CHECK(g.phi_u == doctest::Approx(-ls * v / r).epsilon(1e-13));
    CHECK(g.phi_v == doctest::Approx(ls * (u - gp.a) / r).epsilon(1e-13));
    CHECK(g.phi_z == doctest::Approx(gp.mu));
    // v = 0 kills the u-component
    const auto sp0 = f.spans(gp.u0, 0.0);
    const FrameFieldValue g0 = f.eval_frame(gp.u0, 0.0, 0.5 * (sp0[3].lo + sp0[3].hi));
    CHECK(g0.phi_u == 0.0);
    CHECK(g0.phi_v == doctest::Approx(gp.lambda * f.sigma_at(gp.u0, 0.0)));
}

TEST_CASE("full-slice identities in the chart") {
    const GeneralField& f = standard_field();
    const GeneralParams& gp = f.params();
    HaltonSampler s(35);
    for (int i = 0; i < 1000; ++i) {
        const double u = s.in(i, 0, gp.u0 - gp.delta, gp.u0 + gp.delta);
        const double v = s.in(i, 1, -gp.delta, gp.delta);
        const Vec2 I = f.slice(u, v, -u, u);
        const double r = std::hypot(u - gp.a, v);
        const double sg = f.sigma_at(u, v);
        CHECK(std::abs(I.x - (-2.0 * sg * v / r)) <= 1e-8);
        CHECK(std::abs(I.y - (4.0 * gp.eps + 2.0 * sg * (u - gp.a) / r)) <= 1e-8);
        // lower bound on the transverse component
        CHECK(I.y > 7.0 / 8.0 * f.gamma_at(u, v));
    }
    // axis: exactly the metric factor
    for (int i = 0; i <= 20; ++i) {
        const double u = gp.u0 - gp.delta + 2.0 * gp.delta * i / 20;
        const Vec2 I = f.slice(u, 0.0, -u, u);
        CHECK(std::abs(I.x) <= 1e-14);
        CHECK(std::abs(I.y - f.gamma_at(u, 0.0)) <= 1e-12);
    }
}

TEST_CASE("slice against split quadrature") {
    const GeneralField& f = standard_field();
    const GeneralParams& gp = f.params();
    HaltonSampler s(37);
    for (int i = 0; i < 40; ++i) {
        const double u = s.in(i, 0, gp.u0 - gp.delta, gp.u0 + gp.delta);
        const double v = s.in(i, 1, -gp.delta, gp.delta);
        double t1 = s.in(i, 2, f.z_lo(), f.z_hi());
        double t2 = s.in(i, 3, f.z_lo(), f.z_hi());
        if (t1 > t2) std::swap(t1, t2);
        const std::vector<double> cuts = f.cuts(u, v);
        const double ox = oracles::integrate_split(
            [&](double z) { return f.eval_frame(u, v, z).phi_u; }, t1, t2, cuts);
        const double oy = oracles::integrate_split(
            [&](double z) { return f.eval_frame(u, v, z).phi_v; }, t1, t2, cuts);
        const Vec2 I = f.slice(u, v, t1, t2);
        CHECK(std::abs(I.x - ox) <= 1e-9);
        CHECK(std::abs(I.y - oy) <= 1e-9);
    }
}

TEST_CASE("physical field realizes the graph condition") {
    const GeneralField& f = standard_field();
    const HarmonicPoly& poly = f.frame().poly();
    HaltonSampler s(39);
    for (int i = 0; i < 200; ++i) {
        const double x = s.in(i, 0, -0.002, 0.002);
        const double y = s.in(i, 1, -0.002, 0.002);
        if (std::abs(y) < 1e-6) continue;
        const double z = f.w_value(x, y);
        const FieldValue p = f.eval_physical(x, y, z);
        const Vec2 gw = f.grad_w(x, y);
        CHECK(std::abs(p.phi_x - 2.0 * gw.x) <= 1e-8);
        CHECK(std::abs(p.phi_y - 2.0 * gw.y) <= 1e-8);
        CHECK(std::abs(p.phi_z - gw.norm2()) <= 1e-8);
        // vertical component on the graph equals |grad u|^2 = 1/gamma^2
        const Vec2 uv = f.frame().phi(x, y);
        CHECK(std::abs(p.phi_z - 1.0 / sqr(f.gamma_at(uv.x, uv.y))) <= 1e-10);
        (void)poly;
    }
}

TEST_CASE("slice diagnostic at the critical point") {
    const GeneralField& f = standard_field();
    const GeneralParams& gp = f.params();
    for (int i = 0; i <= 10; ++i) {
        const double u = gp.u0 - gp.delta + 2.0 * gp.delta * i / 10;
        CHECK(std::abs(f.d_function(u, 0.0, -u, u)) <= 1e-10);
    }
    // gradient in (v, s, t) vanishes
    const double u = gp.u0;
    const double hv = 1e-6;
    const double gv = (f.d_function(u, hv, -u, u) - f.d_function(u, -hv, -u, u)) / (2 * hv);
    const double gs =
        (f.d_function(u, 0, -u + hv, u) - f.d_function(u, 0, -u - hv, u)) / (2 * hv);
    const double gt =
        (f.d_function(u, 0, -u, u + hv) - f.d_function(u, 0, -u, u - hv)) / (2 * hv);
    CHECK(std::abs(gv) <= 1e-6);
    CHECK(std::abs(gs) <= 1e-6);
    CHECK(std::abs(gt) <= 1e-6);

    // interior window value is strictly inside the bound
    const double al = tube_half_width(0.0, gp.eps);
    CHECK(f.d_function(u, 0.0, -u + al, u - al) < 0.0);
}

TEST_CASE("curvature probe matches the closed-form entries") {
    const GeneralField& f = standard_field();
    const GeneralParams& gp = f.params();
    const HessianResult h = f.hessian_check();
    CHECK(h.negative_definite);
    CHECK(h.dt_ds == doctest::Approx(8.0).epsilon(1e-5));
    const double gamma0 = f.gamma_at(gp.u0, 0.0);
    CHECK(h.matrix[1][1] ==
          doctest::Approx(8.0 - 4.0 / gp.eps * gamma0).epsilon(1e-4));
    CHECK(h.matrix[2][2] ==
          doctest::Approx(8.0 - 4.0 / gp.eps * gamma0).epsilon(1e-4));
    const double expect_vt =
        -4.0 / (gp.u0 - gp.a) * (f.frame().deta_dv(gp.u0, 0.0) - 4.0 * gp.eps);
    CHECK(h.matrix[0][1] == doctest::Approx(expect_vt).epsilon(1e-3));
    CHECK(h.eigenvalues[2] < 0.0);
}

TEST_CASE("mixed chart derivative matches the tangential data at the origin") {
    // d(eta)/du dv at (u0, 0) = -u_xx(0,0) / u_x(0,0)^3 = -2 here.
    const GeneralField& f = standard_field();
    const Frame& fr = f.frame();
    const double u0 = f.params().u0;
    const double step = 1e-5;
    const double mixed = oracles::diff(
        [&](double u) {
            return oracles::diff(
                [&](double v) { return fr.psi(u, v).y; }, 0.0, step);
        },
        u0, step);
    CHECK(mixed == doctest::Approx(-2.0).epsilon(1e-5));
}

TEST_CASE("negative-curvature variant mirrors the construction") {
    const GeneralField f =
        GeneralField::build(HarmonicPoly{{1.0, 1.0, -1.0}}, GeneralKind::Opposite);
    const GeneralParams& gp = f.params();
    CHECK(gp.sign == -1);
    CHECK(gp.a > gp.u0 + 11.0 * gp.delta);
    CHECK(f.hessian_check().negative_definite);
    // axis slice identity still holds
    const Vec2 I = f.slice(gp.u0, 0.0, -gp.u0, gp.u0);
    CHECK(std::abs(I.y - f.gamma_at(gp.u0, 0.0)) <= 1e-12);
}

TEST_CASE("unit-jump variant uses the translated chart") {
    const GeneralField f =
        GeneralField::build(HarmonicPoly{{1.0, 1.0, 1.0}}, GeneralKind::Shifted);
    const GeneralParams& gp = f.params();
    CHECK(f.frame().u_shift() == doctest::Approx(1.0));
    CHECK(gp.u0 == doctest::Approx(0.0));
    const auto span = f.jump_span(gp.u0);
    CHECK(span[1] - span[0] == doctest::Approx(1.0));
    const Vec2 I = f.slice(gp.u0, 0.0, span[0], span[1]);
    CHECK(std::abs(I.x) <= 1e-12);
    CHECK(std::abs(I.y - f.gamma_at(gp.u0, 0.0)) <= 1e-12);
    // both graph branches carry +2
    CHECK(f.eval_frame(gp.u0, 0.001, span[0]).phi_u == doctest::Approx(2.0));
    CHECK(f.eval_frame(gp.u0, 0.001, span[1]).phi_u == doctest::Approx(2.0));
    const HessianResult h = f.hessian_check();
    CHECK(h.negative_definite);
    CHECK(h.dt_ds == doctest::Approx(-8.0).epsilon(1e-5));
}

TEST_CASE("regions stay disjoint over the chart") {
    const GeneralField& f = standard_field();
    const GeneralParams& gp = f.params();
    HaltonSampler s(41);
    for (int i = 0; i < 1000; ++i) {
        const double u = s.in(i, 0, gp.u0 - gp.delta, gp.u0 + gp.delta);
        const double v = s.in(i, 1, -0.999 * gp.delta, 0.999 * gp.delta);
        double prev = -1e300;
        for (const auto& sp : f.spans(u, v)) {
            CHECK(sp.lo > prev);
            CHECK(sp.hi > sp.lo);
            prev = sp.hi;
        }
    }
}
