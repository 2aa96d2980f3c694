#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "calibrix/errors.hpp"

namespace calibrix {

/// Adaptive Gauss-Kronrod (7/15) integration of a smooth scalar integrand.
/// Used as the independent oracle against the closed-form antiderivatives;
/// the production slice integrals never go through here.
inline double integrate_gk(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-12, int max_intervals = 4000) {
    if (a == b) return 0.0;

    // 15-point Kronrod nodes/weights on [-1,1] and the embedded 7-point Gauss rule.
    static const double xk[15] = {
        -0.991455371120813, -0.949107912342759, -0.864864423359769,
        -0.741531185599394, -0.586087235467691, -0.405845151377397,
        -0.207784955007898, 0.0,                0.207784955007898,
        0.405845151377397,  0.586087235467691,  0.741531185599394,
        0.864864423359769,  0.949107912342759,  0.991455371120813};
    static const double wk[15] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250,
        0.140653259715525, 0.169004726639267, 0.190350578064785,
        0.204432940075298, 0.209482141084728, 0.204432940075298,
        0.190350578064785, 0.169004726639267, 0.140653259715525,
        0.104790010322250, 0.063092092629979, 0.022935322010529};
    static const double wg[7] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119,
        0.417959183673469, 0.381830050505119, 0.279705391489277,
        0.129484966168870};

    struct Piece {
        double a, b, value, error;
        bool operator<(const Piece& o) const { return error < o.error; }
    };

    auto rule = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        double k = 0.0, g = 0.0;
        for (int i = 0; i < 15; ++i) {
            const double fv = f(c + h * xk[i]);
            k += wk[i] * fv;
            if (i % 2 == 1) g += wg[i / 2] * fv;
        }
        return Piece{lo, hi, k * h, std::abs((k - g) * h)};
    };

    std::priority_queue<Piece> pieces;
    pieces.push(rule(a, b));
    double total = pieces.top().value, err = pieces.top().error;
    int used = 1;
    while (err > abs_tol) {
        if (used >= max_intervals)
            throw QuadratureFailure("adaptive quadrature stalled, error estimate " +
                                    std::to_string(err));
        Piece worst = pieces.top();
        pieces.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Piece l = rule(worst.a, mid), r = rule(mid, worst.b);
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        pieces.push(l);
        pieces.push(r);
        ++used;
    }
    return total;
}

}  // namespace calibrix
