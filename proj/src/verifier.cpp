#include "calibrix/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>

#include "calibrix/sampling.hpp"
#include "calibrix/threading.hpp"

namespace calibrix {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double component(const Vec3& v, int axis) {
    return axis == 0 ? v.x : axis == 1 ? v.y : v.z;
}

}  // namespace

// ------------------------------------------------------------------ views

CalibrationFieldView make_view(const ModelField& field) {
    auto f = std::make_shared<const ModelField>(field);
    CalibrationFieldView v;
    v.coords = "xyz";
    v.domain = f->domain();
    v.z_lo = f->z_lo();
    v.z_hi = f->z_hi();
    v.eval = [f](double x, double y, double z) {
        const FieldValue r = f->eval(x, y, z);
        return Vec3{r.phi_x, r.phi_y, r.phi_z};
    };
    v.region = [f](double x, double y, double z) { return f->classify(x, y, z); };
    v.cuts = [f](double x, double y) { return f->cuts(x, y); };
    v.slice = [f](double x, double y, double t1, double t2) {
        return f->slice(x, y, t1, t2);
    };
    v.bound_d = [](double, double) { return 1.0; };
    v.jump_span = [f](double x) { return f->jump_span(x); };
    v.jump_target = [](double) { return Vec2{0.0, 1.0}; };
    v.graph = [f](double x, double y, int side) {
        const double ys = side > 0 ? std::abs(y) : -std::abs(y);
        const Vec2 g = f->grad_w(x, ys);
        return GraphSample{f->w(x, ys), 2.0 * g.x, 2.0 * g.y, g.norm2()};
    };
    return v;
}

CalibrationFieldView make_view(const GeneralField& field) {
    auto f = std::make_shared<const GeneralField>(field);
    CalibrationFieldView v;
    v.coords = "uvz";
    v.domain = f->domain();
    v.z_lo = f->z_lo();
    v.z_hi = f->z_hi();
    v.eval = [f](double u, double vv, double z) {
        const FrameFieldValue r = f->eval_frame(u, vv, z);
        return Vec3{r.phi_u, r.phi_v, r.phi_z};
    };
    v.region = [f](double u, double vv, double z) { return f->classify(u, vv, z); };
    v.cuts = [f](double u, double vv) { return f->cuts(u, vv); };
    v.slice = [f](double u, double vv, double t1, double t2) {
        return f->slice(u, vv, t1, t2);
    };
    v.bound_d = [f](double u, double vv) { return f->gamma_at(u, vv); };
    v.jump_span = [f](double u) { return f->jump_span(u); };
    v.jump_target = [f](double u) { return Vec2{0.0, f->gamma_at(u, 0.0)}; };
    const bool opposite = field.kind() == GeneralKind::Opposite;
    v.graph = [f, opposite](double u, double, int side) {
        const double e1 = opposite ? (side > 0 ? 2.0 : -2.0) : 2.0;
        return GraphSample{f->w_graph_z(u, side), e1, 0.0, 1.0};
    };
    return v;
}

CalibrationFieldView with_region_override(CalibrationFieldView view, Region tag,
                                          Vec3 value) {
    auto base_eval = view.eval;
    auto base_region = view.region;
    view.eval = [base_eval, base_region, tag, value](double a, double b, double z) {
        if (base_region(a, b, z) == tag) return value;
        return base_eval(a, b, z);
    };
    return view;
}

// ------------------------------------------------------------- face fluxes

namespace {

constexpr double kGauss2 = 0.5773502691896258;  // 1/sqrt(3)

struct Box {
    double c[3];
    double h[3];
};

// Integral of the outward normal component over one box face. The inner
// direction is split exactly at the region interfaces found on each outer
// Gauss line, so every sub-piece is smooth and the composite 2-point Gauss
// rule converges at its nominal order.
double face_integral(const CalibrationFieldView& view, const Box& box, int fixed_axis,
                     int side, int res, double* max_abs) {
    const int ax1 = fixed_axis == 2 ? 0 : (fixed_axis == 0 ? 1 : 0);
    const int ax2 = fixed_axis == 2 ? 1 : 2;
    const double fv = box.c[fixed_axis] + side * box.h[fixed_axis];
    const double lo1 = box.c[ax1] - box.h[ax1], hi1 = box.c[ax1] + box.h[ax1];
    const double lo2 = box.c[ax2] - box.h[ax2], hi2 = box.c[ax2] + box.h[ax2];

    auto point = [&](double s1, double s2) {
        double p[3];
        p[fixed_axis] = fv;
        p[ax1] = s1;
        p[ax2] = s2;
        return Vec3{p[0], p[1], p[2]};
    };

    auto cuts_at = [&](double s1) {
        std::vector<double> cs;
        if (ax2 == 2) {
            const double px = fixed_axis == 0 ? fv : s1;
            const double py = fixed_axis == 0 ? s1 : fv;
            for (double c : view.cuts(px, py))
                if (c > lo2 && c < hi2) cs.push_back(c);
        } else {
            // Interfaces cross this face along curves in the base plane;
            // locate them by a tag scan with bisection refinement.
            const int scan = std::max(64, 2 * res);
            auto tag_at = [&](double s2) {
                const Vec3 p = point(s1, s2);
                return view.region(p.x, p.y, p.z);
            };
            Region prev = tag_at(lo2);
            for (int i = 1; i <= scan; ++i) {
                const double s2 = lo2 + (hi2 - lo2) * i / scan;
                const Region cur = tag_at(s2);
                if (cur != prev) {
                    double a = lo2 + (hi2 - lo2) * (i - 1) / scan, b = s2;
                    for (int it = 0; it < 60; ++it) {
                        const double m = 0.5 * (a + b);
                        (tag_at(m) == prev ? a : b) = m;
                    }
                    cs.push_back(0.5 * (a + b));
                    prev = cur;
                }
            }
        }
        std::sort(cs.begin(), cs.end());
        return cs;
    };

    double total = 0.0;
    const double w1 = (hi1 - lo1) / res;
    for (int i = 0; i < res; ++i) {
        const double c1 = lo1 + (i + 0.5) * w1;
        for (int g1 = -1; g1 <= 1; g1 += 2) {
            const double s1 = c1 + g1 * 0.5 * w1 * kGauss2;
            const std::vector<double> cs = cuts_at(s1);
            const double w2 = (hi2 - lo2) / res;
            std::size_t ci = 0;
            for (int j = 0; j < res; ++j) {
                double a = lo2 + j * w2;
                const double b = a + w2;
                while (ci < cs.size() && cs[ci] <= a) ++ci;
                std::size_t ce = ci;
                while (ce < cs.size() && cs[ce] < b) ++ce;
                double seg_lo = a;
                for (std::size_t k = ci; k <= ce; ++k) {
                    const double seg_hi = k < ce ? cs[k] : b;
                    const double len = seg_hi - seg_lo, mid = 0.5 * (seg_lo + seg_hi);
                    for (int g2 = -1; g2 <= 1; g2 += 2) {
                        const double s2 = mid + g2 * 0.5 * len * kGauss2;
                        const Vec3 p = point(s1, s2);
                        const double val = component(view.eval(p.x, p.y, p.z), fixed_axis);
                        if (max_abs) *max_abs = std::max(*max_abs, std::abs(val));
                        total += 0.5 * w1 * 0.5 * len * val;
                    }
                    seg_lo = seg_hi;
                }
            }
        }
    }
    return total * side;
}

// Normalized net outward flux: |sum of faces| / (total face area * field scale).
double box_flux(const CalibrationFieldView& view, const Box& box, int res) {
    double flux = 0.0, max_abs = 0.0;
    for (int axis = 0; axis < 3; ++axis)
        for (int side = -1; side <= 1; side += 2)
            flux += face_integral(view, box, axis, side, res, &max_abs);
    const double area = 8.0 * (box.h[0] * box.h[1] + box.h[0] * box.h[2] +
                               box.h[1] * box.h[2]);
    return std::abs(flux) / (area * std::max(1.0, max_abs));
}

struct BoxPlan {
    std::vector<Box> interior;
    std::vector<Box> straddle;
};

BoxPlan plan_boxes(const CalibrationFieldView& view, const VerifyOptions& opt) {
    BoxPlan plan;
    HaltonSampler sampler(opt.seed);
    const Rect dom = view.domain;
    const double inset = 0.12;
    const double hp0 = 0.5 * inset * std::min(dom.width(), dom.height());

    for (int k = 0; k < opt.box_plane_points; ++k) {
        const double x = sampler.in(k, 0, dom.x_lo + inset * dom.width(),
                                    dom.x_hi - inset * dom.width());
        const double y = sampler.in(k, 1, dom.y_lo + inset * dom.height(),
                                    dom.y_hi - inset * dom.height());
        std::vector<double> cs = view.cuts(x, y);
        std::vector<double> walls;
        walls.push_back(view.z_lo - 0.05 * (view.z_hi - view.z_lo));
        walls.insert(walls.end(), cs.begin(), cs.end());
        walls.push_back(view.z_hi + 0.05 * (view.z_hi - view.z_lo));

        auto cut_near = [&](double px, double py, double zc, double hz) {
            for (double c : view.cuts(px, py))
                if (std::abs(c - zc) < hz) return true;
            return false;
        };

        // One box per inter-wall gap, shrunk in the plane until no interface
        // enters its z-range anywhere over the footprint.
        for (std::size_t g = 0; g + 1 < walls.size(); ++g) {
            const double width = walls[g + 1] - walls[g];
            if (width < 1e-9) continue;
            const double cz = 0.5 * (walls[g] + walls[g + 1]);
            const double hz = 0.30 * width;
            double hp = hp0;
            bool ok = false;
            for (int shrink = 0; shrink < 24 && !ok; ++shrink, hp *= 0.5) {
                ok = !(cut_near(x - hp, y - hp, cz, 1.2 * hz) ||
                       cut_near(x - hp, y + hp, cz, 1.2 * hz) ||
                       cut_near(x + hp, y - hp, cz, 1.2 * hz) ||
                       cut_near(x + hp, y + hp, cz, 1.2 * hz));
            }
            if (ok) plan.interior.push_back(Box{{x, y, cz}, {hp, hp, hz}});
        }

        // One straddling box per interface.
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const double below = i == 0 ? cs[i] - view.z_lo : cs[i] - cs[i - 1];
            const double above = i + 1 == cs.size() ? view.z_hi - cs[i] : cs[i + 1] - cs[i];
            const double hz = 0.35 * std::min(below, above);
            if (hz < 1e-9) continue;
            double hp = hp0;
            bool ok = false;
            for (int shrink = 0; shrink < 24 && !ok; ++shrink, hp *= 0.5) {
                ok = true;
                for (int sx = -1; sx <= 1 && ok; sx += 2) {
                    for (int sy = -1; sy <= 1 && ok; sy += 2) {
                        std::vector<double> cc = view.cuts(x + sx * hp, y + sy * hp);
                        if (i >= cc.size() || std::abs(cc[i] - cs[i]) > 0.5 * hz) ok = false;
                        for (std::size_t j = 0; j < cc.size() && ok; ++j)
                            if (j != i && std::abs(cc[j] - cs[i]) < 1.3 * hz) ok = false;
                    }
                }
            }
            if (ok) plan.straddle.push_back(Box{{x, y, cs[i]}, {hp, hp, hz}});
        }
    }
    return plan;
}

}  // namespace

ConditionResult check_divergence_interior(const CalibrationFieldView& view,
                                          const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    ConditionResult res;
    res.tolerance = opt.tol.div_flux;
    const BoxPlan plan = plan_boxes(view, opt);

    std::vector<double> flux(plan.interior.size(), 0.0);
    parallel_for(plan.interior.size(), [&](std::size_t i) {
        flux[i] = box_flux(view, plan.interior[i], opt.face_res[2]);
    });
    res.samples = static_cast<long>(plan.interior.size());
    for (std::size_t i = 0; i < flux.size(); ++i) {
        if (flux[i] > res.worst_residual) {
            res.worst_residual = flux[i];
            const Box& b = plan.interior[i];
            res.worst_point = {b.c[0], b.c[1], b.c[2]};
        }
    }

    // Bonus diagnostic: pointwise divergence by central differences at box
    // centers (smooth interiors only).
    const double step = 1e-6 * (view.z_hi - view.z_lo);
    double fd_max = 0.0;
    for (const Box& b : plan.interior) {
        const double div =
            (view.eval(b.c[0] + step, b.c[1], b.c[2]).x -
             view.eval(b.c[0] - step, b.c[1], b.c[2]).x +
             view.eval(b.c[0], b.c[1] + step, b.c[2]).y -
             view.eval(b.c[0], b.c[1] - step, b.c[2]).y +
             view.eval(b.c[0], b.c[1], b.c[2] + step).z -
             view.eval(b.c[0], b.c[1], b.c[2] - step).z) /
            (2.0 * step);
        fd_max = std::max(fd_max, std::abs(div));
    }
    res.extras["fd_divergence_max"] = fd_max;

    res.pass = res.worst_residual <= res.tolerance;
    res.wall_time_s = seconds_since(t0);
    return res;
}

ConditionResult check_interface_continuity(const CalibrationFieldView& view,
                                           const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    ConditionResult res;
    res.tolerance = opt.tol.iface_flux;
    const BoxPlan plan = plan_boxes(view, opt);
    const std::size_t n = plan.straddle.size();

    std::vector<std::array<double, 3>> flux(n);
    parallel_for(n, [&](std::size_t i) {
        for (int r = 0; r < 3; ++r)
            flux[i][r] = box_flux(view, plan.straddle[i], opt.face_res[r]);
    });

    res.samples = static_cast<long>(n);
    double min_order = std::numeric_limits<double>::infinity();
    long with_signal = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (flux[i][2] > res.worst_residual) {
            res.worst_residual = flux[i][2];
            const Box& b = plan.straddle[i];
            res.worst_point = {b.c[0], b.c[1], b.c[2]};
        }
        // Convergence order from the two finest resolutions; boxes whose flux
        // sits at the exactness floor carry no signal to measure.
        if (flux[i][1] > 1e-11) {
            ++with_signal;
            const double order = std::log2(flux[i][1] / std::max(flux[i][2], 1e-16));
            min_order = std::min(min_order, order);
        }
    }
    res.extras["boxes_with_signal"] = static_cast<double>(with_signal);
    if (with_signal > 0) res.extras["min_order"] = min_order;

    const bool order_ok = with_signal == 0 || min_order >= opt.tol.iface_order;
    res.pass = res.worst_residual <= res.tolerance && order_ok;
    res.wall_time_s = seconds_since(t0);
    return res;
}

ConditionResult check_bound_b(const CalibrationFieldView& view,
                              const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    ConditionResult res;
    res.tolerance = opt.tol.bound_b;
    HaltonSampler sampler(opt.seed + 1);
    const Rect dom = view.domain;
    const double zpad = 0.05 * (view.z_hi - view.z_lo);

    const int n = opt.bound_samples;
    std::vector<double> residual(n);
    std::vector<Vec3> where(n);
    parallel_for(n, [&](std::size_t i) {
        double x, y, z;
        if (i % 3 == 0) {
            // Targeted samples: pick a region span and a quantile inside it.
            x = sampler.in(i, 0, dom.x_lo, dom.x_hi);
            y = sampler.in(i, 1, dom.y_lo, dom.y_hi);
            const std::vector<double> cs = view.cuts(x, y);
            const std::size_t span = (i / 3) % 5;
            const double q = sampler.get(i, 2);
            z = cs[2 * span] + q * (cs[2 * span + 1] - cs[2 * span]);
        } else {
            x = sampler.in(i, 0, dom.x_lo, dom.x_hi);
            y = sampler.in(i, 1, dom.y_lo, dom.y_hi);
            z = sampler.in(i, 3, view.z_lo - zpad, view.z_hi + zpad);
        }
        const Vec3 p = view.eval(x, y, z);
        residual[i] = p.x * p.x + p.y * p.y - 4.0 * p.z;
        where[i] = {x, y, z};
    });

    res.samples = n;
    res.worst_residual = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        if (residual[i] > res.worst_residual) {
            res.worst_residual = residual[i];
            res.worst_point = where[i];
        }
    }
    res.pass = res.worst_residual <= res.tolerance;
    res.wall_time_s = seconds_since(t0);
    return res;
}

ConditionResult check_graph_c(const CalibrationFieldView& view,
                              const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    ConditionResult res;
    res.tolerance = opt.tol.graph_c;
    HaltonSampler sampler(opt.seed + 2);
    const Rect dom = view.domain;

    const int n = opt.graph_samples;
    std::vector<double> residual(n);
    std::vector<Vec3> where(n);
    parallel_for(n, [&](std::size_t i) {
        const double x = sampler.in(i, 0, dom.x_lo, dom.x_hi);
        const double ymag = sampler.in(i, 1, 1e-6 * dom.height(), dom.y_hi);
        const int side = (i % 2 == 0) ? +1 : -1;
        const double y = side * ymag;
        const GraphSample g = view.graph(x, y, side);
        const Vec3 p = view.eval(x, y, g.z);
        residual[i] = std::max({std::abs(p.x - g.e1), std::abs(p.y - g.e2),
                                std::abs(p.z - g.ez)});
        where[i] = {x, y, g.z};
    });

    res.samples = n;
    for (int i = 0; i < n; ++i) {
        if (residual[i] > res.worst_residual) {
            res.worst_residual = residual[i];
            res.worst_point = where[i];
        }
    }
    res.pass = res.worst_residual <= res.tolerance;
    res.wall_time_s = seconds_since(t0);
    return res;
}

namespace {

struct SlicePointResult {
    double max_rel = -std::numeric_limits<double>::infinity();
    double max_noncanonical = -std::numeric_limits<double>::infinity();
    Vec3 point{};
    double t1 = 0.0, t2 = 0.0;
    double nc_t1 = 0.0, nc_t2 = 0.0;
    bool canonical = false;
};

SlicePointResult scan_point(const CalibrationFieldView& view, const VerifyOptions& opt,
                            double x, double y) {
    SlicePointResult out;
    out.point = {x, y, 0.0};
    const double B = view.bound_d(x, y);
    const double B2 = B * B;
    const std::array<double, 2> span = view.jump_span(x);
    const double tstep = (view.z_hi - view.z_lo) / (opt.tgrid - 1);

    // Node set: uniform grid plus the jump endpoints and region interfaces.
    std::vector<double> nodes;
    nodes.reserve(opt.tgrid + 14);
    for (int i = 0; i < opt.tgrid; ++i) nodes.push_back(view.z_lo + i * tstep);
    nodes.push_back(span[0]);
    nodes.push_back(span[1]);
    for (double c : view.cuts(x, y))
        if (c > view.z_lo && c < view.z_hi) nodes.push_back(c);
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                nodes.end());

    const std::size_t m = nodes.size();
    std::vector<Vec2> prefix(m);
    for (std::size_t i = 0; i < m; ++i)
        prefix[i] = view.slice(x, y, view.z_lo, nodes[i]);

    auto canonical = [&](double t1, double t2, double pad) {
        return std::abs(t1 - span[0]) <= pad && std::abs(t2 - span[1]) <= pad;
    };

    struct Peak {
        double rel, t1, t2;
    };
    std::vector<Peak> peaks;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const Vec2 I = prefix[j] - prefix[i];
            const double rel = (I.norm2() - B2) / B2;
            if (rel > out.max_rel) {
                out.max_rel = rel;
                out.t1 = nodes[i];
                out.t2 = nodes[j];
            }
            if (!canonical(nodes[i], nodes[j], 1.01 * tstep) &&
                rel > out.max_noncanonical) {
                out.max_noncanonical = rel;
                out.nc_t1 = nodes[i];
                out.nc_t2 = nodes[j];
            }
            if (peaks.size() < static_cast<std::size_t>(opt.top_maxima)) {
                peaks.push_back({rel, nodes[i], nodes[j]});
                std::sort(peaks.begin(), peaks.end(),
                          [](const Peak& a, const Peak& b) { return a.rel > b.rel; });
            } else if (rel > peaks.back().rel) {
                peaks.back() = {rel, nodes[i], nodes[j]};
                std::sort(peaks.begin(), peaks.end(),
                          [](const Peak& a, const Peak& b) { return a.rel > b.rel; });
            }
        }
    }

    // Local refinement around the recorded maxima.
    double radius = tstep;
    for (int round = 0; round < opt.refine_rounds; ++round) {
        radius /= 8.0;
        std::vector<Peak> next = peaks;
        for (const Peak& p : peaks) {
            for (int a = 0; a < opt.refine_grid; ++a) {
                for (int b = 0; b < opt.refine_grid; ++b) {
                    const double t1 =
                        p.t1 + radius * (2.0 * a / (opt.refine_grid - 1) - 1.0);
                    const double t2 =
                        p.t2 + radius * (2.0 * b / (opt.refine_grid - 1) - 1.0);
                    if (t2 <= t1) continue;
                    const Vec2 I = view.slice(x, y, t1, t2);
                    const double rel = (I.norm2() - B2) / B2;
                    if (rel > out.max_rel) {
                        out.max_rel = rel;
                        out.t1 = t1;
                        out.t2 = t2;
                    }
                    if (rel > next.front().rel) next.front() = {rel, t1, t2};
                }
            }
        }
        peaks = next;
    }
    out.canonical = canonical(out.t1, out.t2, 1.01 * tstep);
    return out;
}

}  // namespace

ConditionResult check_slice_d(const CalibrationFieldView& view,
                              const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    ConditionResult res;
    res.tolerance = opt.tol.slice_d;
    HaltonSampler sampler(opt.seed + 3);
    const Rect dom = view.domain;

    std::vector<Vec2> points;
    for (int i = 0; i < opt.axis_points_d; ++i) {
        const double x =
            dom.x_lo + (dom.x_hi - dom.x_lo) * (i + 0.5) / opt.axis_points_d;
        points.push_back({x, 0.0});
    }
    for (int i = 0; i < opt.plane_points_d; ++i) {
        const double x = sampler.in(i, 0, dom.x_lo, dom.x_hi);
        double y = sampler.in(i, 1, dom.y_lo, dom.y_hi);
        if (std::abs(y) < 1e-9 * dom.height()) y += 0.1 * dom.height();
        points.push_back({x, y});
    }

    std::vector<SlicePointResult> results(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        results[i] = scan_point(view, opt, points[i].x, points[i].y);
    });

    res.samples = static_cast<long>(points.size());
    double max_noncanon = -std::numeric_limits<double>::infinity();
    double max_off_axis = -std::numeric_limits<double>::infinity();
    bool axis_canonical = true;
    const double off_axis = 0.1 * 0.5 * dom.height();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (r.max_rel > res.worst_residual) {
            res.worst_residual = r.max_rel;
            res.worst_point = r.point;
            res.extras["t1"] = r.t1;
            res.extras["t2"] = r.t2;
        }
        if (r.max_noncanonical > max_noncanon) {
            max_noncanon = r.max_noncanonical;
            res.extras["nc_x"] = points[i].x;
            res.extras["nc_y"] = points[i].y;
            res.extras["nc_t1"] = r.nc_t1;
            res.extras["nc_t2"] = r.nc_t2;
        }
        if (std::abs(points[i].y) >= off_axis)
            max_off_axis = std::max(max_off_axis, r.max_rel);
        if (points[i].y == 0.0 && !r.canonical) axis_canonical = false;
    }
    res.extras["max_noncanonical"] = max_noncanon;
    res.extras["max_off_axis"] = max_off_axis;
    res.extras["axis_argmax_canonical"] = axis_canonical ? 1.0 : 0.0;
    res.pass = res.worst_residual <= res.tolerance;
    res.wall_time_s = seconds_since(t0);
    return res;
}

ConditionResult check_jump_e(const CalibrationFieldView& view,
                             const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    ConditionResult res;
    res.tolerance = opt.tol.jump_e;
    const Rect dom = view.domain;

    const int n = opt.identity_samples;
    std::vector<double> residual(n);
    std::vector<Vec3> where(n);
    parallel_for(n, [&](std::size_t i) {
        const double x = dom.x_lo + (dom.x_hi - dom.x_lo) * (i + 0.5) / n;
        const std::array<double, 2> span = view.jump_span(x);
        const Vec2 I = view.slice(x, 0.0, span[0], span[1]);
        const Vec2 target = view.jump_target(x);
        residual[i] = std::max(std::abs(I.x - target.x), std::abs(I.y - target.y));
        where[i] = {x, 0.0, 0.0};
    });

    res.samples = n;
    for (int i = 0; i < n; ++i) {
        if (residual[i] > res.worst_residual) {
            res.worst_residual = residual[i];
            res.worst_point = where[i];
        }
    }
    res.pass = res.worst_residual <= res.tolerance;
    res.wall_time_s = seconds_since(t0);
    return res;
}

bool VerificationReport::verified() const {
    for (const auto& [name, r] : conditions)
        if (!r.pass) return false;
    return !conditions.empty();
}

std::string VerificationReport::verdict() const {
    for (const auto& [name, r] : conditions)
        if (!r.pass) return "FAILED(" + name + ")";
    return "CALIBRATION_VERIFIED";
}

const ConditionResult* VerificationReport::find(const std::string& name) const {
    for (const auto& [n, r] : conditions)
        if (n == name) return &r;
    return nullptr;
}

VerificationReport verify_field(const CalibrationFieldView& view,
                                const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    VerificationReport report;
    report.seed = opt.seed;
    report.conditions.emplace_back("DivFree", check_divergence_interior(view, opt));
    report.conditions.emplace_back("InterfaceContinuity",
                                   check_interface_continuity(view, opt));
    report.conditions.emplace_back("Bound_b", check_bound_b(view, opt));
    report.conditions.emplace_back("Graph_c", check_graph_c(view, opt));
    report.conditions.emplace_back("Slice_d", check_slice_d(view, opt));
    report.conditions.emplace_back("Jump_e", check_jump_e(view, opt));
    report.total_wall_s = seconds_since(t0);
    return report;
}

}  // namespace calibrix
