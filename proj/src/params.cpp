#include "calibrix/params.hpp"

#include <algorithm>
#include <cmath>

#include "calibrix/geometry.hpp"
#include "calibrix/model_field.hpp"

namespace calibrix {

namespace {

void require(bool ok, const std::string& name, double margin,
             std::map<std::string, double>& margins) {
    margins[name] = margin;
    if (!ok) throw ConstraintViolation(name);
}

}  // namespace

ModelParams derive_model_params(double x0, double eps, double delta) {
    if (!(x0 > 0.0) || !(eps > 0.0) || !(delta > 0.0))
        throw ConstraintViolation("inputs strictly positive");

    ModelParams p;
    p.x0 = x0;
    p.eps = eps;
    p.delta = delta;
    auto& m = p.constraint_margins;

    require(eps < x0 / 10.0, "eps < x0/10", x0 / 10.0 - eps, m);
    require(eps < 1.0 / 32.0, "eps < 1/32", 1.0 / 32.0 - eps, m);

    p.h = (x0 - 3.0 * eps) / 4.0;
    p.lambda = (1.0 - 4.0 * eps) / (2.0 * p.h);
    p.kappa = p.lambda / 4.0 - 1.0 / p.lambda;
    p.b = 2.0 * p.h + p.kappa * delta;

    require(delta < eps, "delta < eps", eps - delta, m);
    const double delta_cap = (x0 - 3.0 * eps) / (8.0 * std::abs(p.kappa));
    require(delta < delta_cap, "delta bound (geometry)", delta_cap - delta, m);
    return p;
}

ShiftedParams derive_shifted_params(double x0, double eps, double delta) {
    if (!(x0 > 0.0) || !(eps > 0.0) || !(delta > 0.0))
        throw ConstraintViolation("inputs strictly positive");

    ShiftedParams p;
    p.x0 = x0;
    p.eps = eps;
    p.delta = delta;
    auto& m = p.constraint_margins;

    require(eps < 1.0 / 24.0, "eps < 1/24", 1.0 / 24.0 - eps, m);
    require(eps < 1.0 / 32.0, "eps < 1/32", 1.0 / 32.0 - eps, m);

    p.h = (1.0 - 6.0 * eps) / 5.0;
    p.lambda = (1.0 - 4.0 * eps) / (2.0 * p.h);
    p.kappa = p.lambda / 4.0 - 1.0 / p.lambda;
    p.b = x0 + 3.0 * eps + p.kappa * delta;

    require(delta < eps, "delta < eps", eps - delta, m);
    const double delta_cap = (1.0 - 6.0 * eps) / (10.0 * std::abs(p.kappa));
    require(delta < delta_cap, "delta bound (120b)", delta_cap - delta, m);
    return p;
}

bool validate_f_smallness(const ModelParams& p,
                          const std::function<double(double)>& f_eval,
                          int samples) {
    double sup = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double y = -p.delta + 2.0 * p.delta * i / samples;
        sup = std::max(sup, std::abs(2.0 * p.h * f_eval(y)));
        if (sup > p.eps) return false;
    }
    return sup <= p.eps;
}

namespace {

// Shared bisection: largest delta in (0, cap] passing `ok`, 40 iterations.
double bisect_delta(double cap, const std::function<bool(double)>& ok) {
    double hi = cap;
    if (ok(hi)) return hi;
    double lo = 0.0;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

double auto_delta_model(double x0, double eps) {
    // Start just under the hard caps; f-smallness then shrinks if needed.
    const double probe = eps * 1e-6;
    const ModelParams ref = derive_model_params(x0, eps, probe);
    const double geom_cap = (x0 - 3.0 * eps) / (8.0 * std::abs(ref.kappa));
    const double cap = 0.995 * std::min(eps, geom_cap);

    auto ok = [&](double d) {
        if (d <= 0.0) return false;
        ModelParams p = derive_model_params(x0, eps, d);
        ModelField field = ModelField::from(p);
        return validate_f_smallness(p, [&](double y) { return field.f(y); }, 2000);
    };
    return bisect_delta(cap, ok);
}

double auto_delta_shifted(double x0, double eps) {
    const double probe = eps * 1e-6;
    const ShiftedParams ref = derive_shifted_params(x0, eps, probe);
    const double geom_cap = (1.0 - 6.0 * eps) / (10.0 * std::abs(ref.kappa));
    return 0.995 * std::min(eps, geom_cap);
}

}  // namespace calibrix
