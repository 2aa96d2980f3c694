#pragma once

#include <functional>
#include <vector>

#include "calibrix/geometry.hpp"

namespace calibrix {

/// A horizontal crack segment {y = y_c, x in [x_lo, x_hi]}; gradients are
/// never differenced across it.
struct CrackSegment {
    double y = 0.0;
    double x_lo = 0.0, x_hi = 0.0;

    double length() const { return x_hi - x_lo; }
};

/// Grid candidate for the free-discontinuity energy. Corner values are
/// materialized per cell from the evaluator with a side-aware offset, so a
/// crack on a grid line keeps the two traces separate.
struct SbvCandidate {
    Rect domain;
    int n = 64;  // cells per direction
    std::function<double(double, double)> eval;
    std::vector<CrackSegment> cracks;

    static SbvCandidate from_grid(Rect domain, int n, std::vector<double> nodal);
};

struct EnergyBreakdown {
    double dirichlet = 0.0;
    double crack_length = 0.0;
    double total = 0.0;
};

/// Dirichlet term by exact bilinear-element energy plus exact crack length.
/// Cracks must lie on grid lines.
EnergyBreakdown evaluate(const SbvCandidate& c);

/// Scaled candidate eps * c(x/eps, y/eps) on the scaled domain.
SbvCandidate scale_candidate(const SbvCandidate& c, double eps);

/// Boundary-compatible competitor on (-1,1)^2 whose jump lives on the outer
/// half-segments of the axis and tapers to zero at the crack tips (the taper
/// keeps the Dirichlet energy finite). zeta_scale stretches the transition
/// band height.
SbvCandidate build_competitor(double zeta_scale, int n);

/// The candidate w = x sign(y) with full crack, restricted to eps*(-1,1)^2.
SbvCandidate model_candidate(double eps, int n);

/// Exact transition-band competitor energy (analytic value for the default
/// zeta_scale = 1 profile): 254/45.
double competitor_energy_exact();

struct SweepRow {
    double eps = 0.0;
    double ms_w = 0.0;
    double ms_psi = 0.0;
    double margin = 0.0;  // ms_w - ms_psi, positive = non-minimality exhibited
};

/// Energy comparison across scales; ms_psi is evaluated on the scaled grid.
std::vector<SweepRow> counterexample_sweep(const std::vector<double>& eps_list,
                                           int n = 256, double zeta_scale = 1.0);

}  // namespace calibrix
