#include "calibrix/model_field.hpp"

#include <algorithm>
#include <cmath>

#include "calibrix/errors.hpp"

namespace calibrix {

const char* region_name(Region r) {
    switch (r) {
        case Region::A1: return "A1";
        case Region::A2: return "A2";
        case Region::A3: return "A3";
        case Region::A4: return "A4";
        case Region::A5: return "A5";
        default: return "Outside";
    }
}

double tube_half_width(double y, double eps) {
    const double rad = 4.0 * eps * eps - sqr(eps - y);
    if (rad < 0.0) throw DomainError("tube half-width: |eps - y| exceeds 2 eps");
    return std::sqrt(rad);
}

ModelField ModelField::from(const ModelParams& p) {
    ModelField m;
    m.kind_ = ModelKind::Opposite;
    m.x0_ = p.x0; m.eps_ = p.eps; m.delta_ = p.delta;
    m.h_ = p.h; m.lambda_ = p.lambda; m.kappa_ = p.kappa; m.b_ = p.b;
    return m;
}

ModelField ModelField::from(const ShiftedParams& p) {
    ModelField m;
    m.kind_ = ModelKind::Shifted;
    m.x0_ = p.x0; m.eps_ = p.eps; m.delta_ = p.delta;
    m.h_ = p.h; m.lambda_ = p.lambda; m.kappa_ = p.kappa; m.b_ = p.b;
    return m;
}

void ModelField::override_kappa(double kappa) {
    kappa_ = kappa;
    b_ = (kind_ == ModelKind::Opposite) ? 2.0 * h_ + kappa_ * delta_
                                        : x0_ + 3.0 * eps_ + kappa_ * delta_;
}

Rect ModelField::domain() const {
    return {x0_ - eps_, x0_ + eps_, -delta_, delta_};
}

double ModelField::z_lo() const {
    return kind_ == ModelKind::Opposite ? -(x0_ + 3.0 * eps_) : x0_ - 3.0 * eps_;
}

double ModelField::z_hi() const {
    return kind_ == ModelKind::Opposite ? x0_ + 3.0 * eps_ : x0_ + 1.0 + 3.0 * eps_;
}

std::array<RegionSpan, 5> ModelField::spans(double x, double y) const {
    const double au = tube_half_width(y, eps_);   // upper tube
    const double al = tube_half_width(-y, eps_);  // lower tube
    if (kind_ == ModelKind::Opposite) {
        // Both bands shear with +kappa*y; the lower one hangs below -b.
        return {{{Region::A5, -x - al, -x + al},
                 {Region::A4, -b_ + kappa_ * y - h_, -b_ + kappa_ * y},
                 {Region::A3, -h_, h_},
                 {Region::A2, b_ + kappa_ * y, b_ + kappa_ * y + h_},
                 {Region::A1, x - au, x + au}}};
    }
    const double band = b_ + kappa_ * y;
    const double core = x0_ + 3.0 * eps_;
    return {{{Region::A5, x - al, x + al},
             {Region::A4, band, band + h_},
             {Region::A3, core + 2.0 * h_, core + 3.0 * h_},
             {Region::A2, band + 3.0 * h_, band + 4.0 * h_},
             {Region::A1, x + 1.0 - au, x + 1.0 + au}}};
}

std::vector<double> ModelField::cuts(double x, double y) const {
    std::vector<double> c;
    c.reserve(10);
    for (const auto& s : spans(x, y)) {
        c.push_back(s.lo);
        c.push_back(s.hi);
    }
    return c;
}

Region ModelField::classify(double x, double y, double z) const {
    for (const auto& s : spans(x, y))
        if (z >= s.lo && z < s.hi) return s.tag;
    return Region::Outside;
}

double ModelField::f(double y) const {
    const double c1 = eps_ - y, c2 = eps_ + y;
    const double au = tube_half_width(y, eps_), al = tube_half_width(-y, eps_);
    // Exact antiderivative of t -> c/sqrt(t^2+c^2); the tube edge satisfies
    // sqrt(alpha^2 + c^2) = 2 eps, hence the log arguments.
    const double iu = c1 * std::log((au + 2.0 * eps_) / c1);
    const double il = c2 * std::log((al + 2.0 * eps_) / c2);
    return kind_ == ModelKind::Opposite ? -(iu - il) / h_ : -2.0 * (iu + il) / h_;
}

FieldValue ModelField::eval(double x, double y, double z) const {
    const Region r = classify(x, y, z);
    switch (r) {
        case Region::A1: {
            const double c1 = eps_ - y;
            const double zc = kind_ == ModelKind::Opposite ? x : x + 1.0;
            const double rho = std::hypot(c1, z - zc);
            return {2.0 * c1 / rho, -2.0 * (z - zc) / rho, 1.0};
        }
        case Region::A5: {
            const double c2 = eps_ + y;
            if (kind_ == ModelKind::Opposite) {
                const double rho = std::hypot(c2, z + x);
                return {-2.0 * c2 / rho, 2.0 * (z + x) / rho, 1.0};
            }
            const double rho = std::hypot(c2, z - x);
            return {2.0 * c2 / rho, 2.0 * (z - x) / rho, 1.0};
        }
        case Region::A2:
        case Region::A4:
            return {0.0, lambda_, lambda_ * lambda_ / 4.0};
        case Region::A3:
            return {f(y), 0.0, 1.0};
        default:
            return {0.0, 0.0, 1.0};
    }
}

Vec2 ModelField::antiderivative(const RegionSpan& s, double x, double y, double z) const {
    switch (s.tag) {
        case Region::A1: {
            const double c1 = eps_ - y;
            const double zc = kind_ == ModelKind::Opposite ? x : x + 1.0;
            return {2.0 * c1 * std::asinh((z - zc) / c1), -2.0 * std::hypot(c1, z - zc)};
        }
        case Region::A5: {
            const double c2 = eps_ + y;
            if (kind_ == ModelKind::Opposite)
                return {-2.0 * c2 * std::asinh((z + x) / c2), 2.0 * std::hypot(c2, z + x)};
            return {2.0 * c2 * std::asinh((z - x) / c2), 2.0 * std::hypot(c2, z - x)};
        }
        case Region::A2:
        case Region::A4:
            return {0.0, lambda_ * z};
        case Region::A3:
            return {f(y) * z, 0.0};
        default:
            return {0.0, 0.0};
    }
}

Vec2 ModelField::slice(double x, double y, double t1, double t2) const {
    if (t1 > t2) {
        const Vec2 v = slice(x, y, t2, t1);
        return {-v.x, -v.y};
    }
    Vec2 total{0.0, 0.0};
    for (const auto& s : spans(x, y)) {
        const double lo = std::max(t1, s.lo), hi = std::min(t2, s.hi);
        if (hi <= lo) continue;
        total = total + antiderivative(s, x, y, hi) - antiderivative(s, x, y, lo);
    }
    return total;
}

std::array<double, 2> ModelField::jump_span(double x) const {
    if (kind_ == ModelKind::Opposite) return {-x, x};
    return {x, x + 1.0};
}

double ModelField::w(double x, double y) const {
    if (kind_ == ModelKind::Opposite) return y > 0.0 ? x : -x;
    return y > 0.0 ? x + 1.0 : x;
}

Vec2 ModelField::grad_w(double x, double y) const {
    (void)x;
    if (kind_ == ModelKind::Opposite) return {y > 0.0 ? 1.0 : -1.0, 0.0};
    return {1.0, 0.0};
}

}  // namespace calibrix
