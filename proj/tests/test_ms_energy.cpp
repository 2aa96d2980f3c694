#include <doctest.h>

#include <cmath>

#include "calibrix/errors.hpp"
#include "calibrix/ms_energy.hpp"

using namespace calibrix;

TEST_CASE("two-branch candidate reproduces the exact energy") {
    for (const double eps : {0.01, 0.1, 1.0}) {
        const EnergyBreakdown e = evaluate(model_candidate(eps, 64));
        CHECK(e.dirichlet == doctest::Approx(4.0 * eps * eps).epsilon(1e-12));
        CHECK(e.crack_length == doctest::Approx(2.0 * eps).epsilon(1e-14));
        CHECK(e.total == doctest::Approx(4.0 * eps * eps + 2.0 * eps).epsilon(1e-12));
    }
    // criterion resolution
    const EnergyBreakdown e = evaluate(model_candidate(0.01, 256));
    CHECK(std::abs(e.total - 0.0204) <= 0.01 * 0.0204);
}

TEST_CASE("trivial candidates") {
    SbvCandidate constant;
    constant.domain = {-1.0, 1.0, -1.0, 1.0};
    constant.n = 32;
    constant.eval = [](double, double) { return 3.0; };
    CHECK(evaluate(constant).total == doctest::Approx(0.0));

    SbvCandidate linear;
    linear.domain = {0.0, 1.0, 0.0, 1.0};
    linear.n = 32;
    linear.eval = [](double x, double) { return x; };
    const EnergyBreakdown e = evaluate(linear);
    CHECK(e.dirichlet == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.crack_length == 0.0);
}

TEST_CASE("nodal-grid candidates are supported") {
    const int n = 16;
    std::vector<double> nodal((n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            nodal[j * (n + 1) + i] = static_cast<double>(i) / n;
    const SbvCandidate c = SbvCandidate::from_grid({0, 1, 0, 1}, n, nodal);
    CHECK(evaluate(c).dirichlet == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("competitor trace, jump structure and finite energy") {
    const SbvCandidate psi = build_competitor(1.0, 256);

    SUBCASE("boundary trace matches the candidate") {
        for (int i = 0; i <= 50; ++i) {
            const double x = -1.0 + 2.0 * i / 50.0;
            CHECK(psi.eval(x, 1.0) == doctest::Approx(x).epsilon(1e-13));
            CHECK(psi.eval(x, -1.0) == doctest::Approx(-x).epsilon(1e-13));
        }
    }
    SUBCASE("jump lives on the outer half-segments and closes at the tips") {
        const double dy = 1e-9;
        for (const double x : {0.1, 0.3, 0.49}) {
            CHECK(std::abs(psi.eval(x, dy) - psi.eval(x, -dy)) <= 1e-8);
        }
        for (const double x : {0.55, 0.75, 0.95}) {
            const double jump = psi.eval(x, dy) - psi.eval(x, -dy);
            CHECK(jump == doctest::Approx(2.0 * x * std::min(1.0, 2.0 * (x - 0.5)))
                              .epsilon(1e-6));
            CHECK(jump > 0.0);
        }
        // amplitude tapers to zero at the tip
        CHECK(std::abs(psi.eval(0.5 + 1e-7, dy) - psi.eval(0.5 + 1e-7, -dy)) <= 1e-5);
    }
    SUBCASE("Dirichlet energy converges to the analytic value") {
        double prev_err = 1e300;
        for (const int n : {128, 256, 512}) {
            SbvCandidate c = build_competitor(1.0, n);
            const double e = evaluate(c).dirichlet;
            const double err = std::abs(e - competitor_energy_exact());
            CHECK(err < prev_err);
            prev_err = err;
        }
        const double e512 = evaluate(build_competitor(1.0, 512)).dirichlet;
        CHECK(e512 == doctest::Approx(competitor_energy_exact()).epsilon(5e-3));
        CHECK(e512 > 4.0);
    }
}

TEST_CASE("scaling law is exact on matched grids") {
    const SbvCandidate psi = build_competitor(1.0, 128);
    const EnergyBreakdown base = evaluate(psi);
    for (const double eps : {0.5, 0.07}) {
        const EnergyBreakdown scaled = evaluate(scale_candidate(psi, eps));
        CHECK(scaled.dirichlet ==
              doctest::Approx(eps * eps * base.dirichlet).epsilon(1e-12));
        CHECK(scaled.crack_length ==
              doctest::Approx(eps * base.crack_length).epsilon(1e-12));
    }
}

TEST_CASE("grid convergence has order two for smooth candidates") {
    auto energy_at = [](int n) {
        SbvCandidate c;
        c.domain = {-1.0, 1.0, -1.0, 1.0};
        c.n = n;
        c.eval = [](double x, double y) { return std::sin(x) * std::exp(0.5 * y); };
        return evaluate(c).dirichlet;
    };
    const double e64 = energy_at(64), e128 = energy_at(128), e256 = energy_at(256);
    const double order = std::log2(std::abs(e128 - e64) / std::abs(e256 - e128));
    CHECK(order > 1.7);
    CHECK(order < 2.3);
}

TEST_CASE("sweep exhibits the non-minimality window") {
    const std::vector<double> eps{0.01, 0.05, 0.2, 0.5, 0.9};
    const std::vector<SweepRow> rows = counterexample_sweep(eps, 128);
    REQUIRE(rows.size() == eps.size());

    // identity: scaled energy equals eps^2 E + eps on the matched grid
    const double E = evaluate(build_competitor(1.0, 128)).dirichlet;
    for (const SweepRow& r : rows) {
        CHECK(r.ms_w == doctest::Approx(4.0 * r.eps * r.eps + 2.0 * r.eps).epsilon(1e-12));
        CHECK(r.ms_psi == doctest::Approx(r.eps * r.eps * E + r.eps).epsilon(1e-12));
        CHECK(r.margin == doctest::Approx(r.ms_w - r.ms_psi));
    }
    // margin positive for small scales, negative once eps exceeds 1/(E-4)
    CHECK(rows.front().margin > 0.0);
    CHECK(rows.back().margin < 0.0);
    const double eps_star = 1.0 / (E - 4.0);
    for (const SweepRow& r : rows) {
        if (r.eps <= eps_star) CHECK(r.margin > 0.0);
        if (r.eps > eps_star * 1.05) CHECK(r.margin < 0.0);
    }
}

TEST_CASE("cracks must lie on grid lines") {
    SbvCandidate c;
    c.domain = {-1.0, 1.0, -1.0, 1.0};
    c.n = 32;
    c.eval = [](double, double y) { return y > 0 ? 1.0 : 0.0; };
    c.cracks = {{0.013, -1.0, 1.0}};
    CHECK_THROWS_AS(evaluate(c), DomainError);
}
