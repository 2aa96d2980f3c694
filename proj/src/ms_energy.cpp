#include "calibrix/ms_energy.hpp"

#include <algorithm>
#include <cmath>

#include "calibrix/errors.hpp"
#include "calibrix/threading.hpp"

namespace calibrix {

namespace {

double clampd(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

SbvCandidate SbvCandidate::from_grid(Rect domain, int n, std::vector<double> nodal) {
    if (static_cast<int>(nodal.size()) != (n + 1) * (n + 1))
        throw DomainError("nodal grid size mismatch");
    SbvCandidate c;
    c.domain = domain;
    c.n = n;
    const double hx = domain.width() / n, hy = domain.height() / n;
    c.eval = [domain, n, hx, hy, nodal = std::move(nodal)](double x, double y) {
        // Bilinear interpolation of the nodal data.
        double fx = clampd((x - domain.x_lo) / hx, 0.0, static_cast<double>(n));
        double fy = clampd((y - domain.y_lo) / hy, 0.0, static_cast<double>(n));
        const int i = std::min(static_cast<int>(fx), n - 1);
        const int j = std::min(static_cast<int>(fy), n - 1);
        const double ax = fx - i, ay = fy - j;
        auto at = [&](int ii, int jj) { return nodal[jj * (n + 1) + ii]; };
        return (1 - ax) * (1 - ay) * at(i, j) + ax * (1 - ay) * at(i + 1, j) +
               (1 - ax) * ay * at(i, j + 1) + ax * ay * at(i + 1, j + 1);
    };
    return c;
}

EnergyBreakdown evaluate(const SbvCandidate& c) {
    const int n = c.n;
    if (n < 16) throw DomainError("grid resolution must be >= 16");
    const double hx = c.domain.width() / n, hy = c.domain.height() / n;

    // Cracks must coincide with grid lines so the traces separate cleanly.
    for (const CrackSegment& s : c.cracks) {
        const double idx = (s.y - c.domain.y_lo) / hy;
        if (std::abs(idx - std::round(idx)) > 1e-9)
            throw DomainError("crack not on a grid line");
    }

    const double off = 1e-7 * hy;  // side-aware sampling offset at crack rows
    auto on_crack_row = [&](double y) {
        for (const CrackSegment& s : c.cracks)
            if (std::abs(y - s.y) < 1e-12 * std::max(1.0, std::abs(s.y))) return true;
        return false;
    };

    std::vector<double> row_energy(n, 0.0);
    parallel_for(n, [&](std::size_t j) {
        const double y0 = c.domain.y_lo + j * hy;
        const double y1 = y0 + hy;
        const int side = +1;  // cell sits above y0, below y1
        const double y0s = on_crack_row(y0) ? y0 + side * off : y0;
        const double y1s = on_crack_row(y1) ? y1 - off : y1;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x0 = c.domain.x_lo + i * hx, x1 = x0 + hx;
            const double f00 = c.eval(x0, y0s), f10 = c.eval(x1, y0s);
            const double f01 = c.eval(x0, y1s), f11 = c.eval(x1, y1s);
            // Exact energy of the bilinear interpolant on the cell.
            const double d0 = f10 - f00, d1 = f11 - f01;  // x-differences
            const double e0 = f01 - f00, e1 = f11 - f10;  // y-differences
            acc += (d0 * d0 + d0 * d1 + d1 * d1) / 3.0 * hy / hx;
            acc += (e0 * e0 + e0 * e1 + e1 * e1) / 3.0 * hx / hy;
        }
        row_energy[j] = acc;
    });

    EnergyBreakdown out;
    for (double e : row_energy) out.dirichlet += e;
    for (const CrackSegment& s : c.cracks) out.crack_length += s.length();
    out.total = out.dirichlet + out.crack_length;
    return out;
}

SbvCandidate scale_candidate(const SbvCandidate& c, double eps) {
    SbvCandidate s;
    s.n = c.n;
    s.domain = {c.domain.x_lo * eps, c.domain.x_hi * eps, c.domain.y_lo * eps,
                c.domain.y_hi * eps};
    auto base = c.eval;
    s.eval = [base, eps](double x, double y) { return eps * base(x / eps, y / eps); };
    for (const CrackSegment& seg : c.cracks)
        s.cracks.push_back({seg.y * eps, seg.x_lo * eps, seg.x_hi * eps});
    return s;
}

SbvCandidate build_competitor(double zeta_scale, int n) {
    if (!(zeta_scale > 0.0)) throw DomainError("zeta_scale must be positive");
    const double c0 = std::min(0.5 * zeta_scale, 0.95);

    SbvCandidate c;
    c.domain = {-1.0, 1.0, -1.0, 1.0};
    c.n = n;
    // psi = x [ (1-tau) clamp(y/c0) + tau sign(y) ] with tau ramping 0 -> 1 on
    // 1/2 <= |x| <= 1. The jump amplitude 2 x tau(x) vanishes continuously at
    // the crack tips, matches w on the boundary, and keeps |grad psi| bounded.
    c.eval = [c0](double x, double y) {
        const double tau = clampd(2.0 * (std::abs(x) - 0.5), 0.0, 1.0);
        const double trans = clampd(y / c0, -1.0, 1.0);
        return x * ((1.0 - tau) * trans + tau * sign_of(y));
    };
    c.cracks = {{0.0, -1.0, -0.5}, {0.0, 0.5, 1.0}};
    return c;
}

SbvCandidate model_candidate(double eps, int n) {
    SbvCandidate c;
    c.domain = {-eps, eps, -eps, eps};
    c.n = n;
    c.eval = [](double x, double y) { return y > 0.0 ? x : -x; };
    c.cracks = {{0.0, -eps, eps}};
    return c;
}

double competitor_energy_exact() { return 254.0 / 45.0; }

std::vector<SweepRow> counterexample_sweep(const std::vector<double>& eps_list,
                                           int n, double zeta_scale) {
    const SbvCandidate psi = build_competitor(zeta_scale, n);
    std::vector<SweepRow> rows;
    rows.reserve(eps_list.size());
    for (double eps : eps_list) {
        if (!(eps > 0.0)) throw DomainError("eps must be positive");
        SweepRow row;
        row.eps = eps;
        row.ms_w = evaluate(model_candidate(eps, n)).total;
        row.ms_psi = evaluate(scale_candidate(psi, eps)).total;
        row.margin = row.ms_w - row.ms_psi;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace calibrix
