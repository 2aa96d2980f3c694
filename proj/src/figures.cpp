#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "calibrix/report.hpp"

namespace calibrix {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

FigureData figure_data(const ModelField& field, int figure, double at) {
    FigureData d;
    const Rect dom = field.domain();
    const int N = 160;

    switch (figure) {
        case 1: {
            // Region bands over y at fixed x.
            d.columns = {"region", "y", "z_lo", "z_hi"};
            for (int i = 0; i <= N; ++i) {
                const double y = dom.y_lo + dom.height() * i / N;
                for (const auto& s : field.spans(at, y)) {
                    const double id = 1.0 + static_cast<double>(s.tag);
                    d.rows.push_back({id, y, s.lo, s.hi});
                }
            }
            break;
        }
        case 2: {
            // Tube field arrows in the base plane at fixed z.
            d.columns = {"x", "y", "phi_x", "phi_y"};
            const int M = 24;
            for (int i = 0; i <= M; ++i) {
                for (int j = 0; j <= M; ++j) {
                    const double x = dom.x_lo + dom.width() * i / M;
                    const double y = dom.y_lo + dom.height() * j / M;
                    if (field.classify(x, y, at) != Region::A1) continue;
                    const FieldValue f = field.eval(x, y, at);
                    d.rows.push_back({x, y, f.phi_x, f.phi_y});
                }
            }
            break;
        }
        case 3: {
            // Flux-band boundaries over y at fixed x.
            d.columns = {"region", "y", "z_lo", "z_hi"};
            for (int i = 0; i <= N; ++i) {
                const double y = dom.y_lo + dom.height() * i / N;
                const auto sp = field.spans(at, y);
                for (const auto& s : sp) {
                    if (s.tag != Region::A2 && s.tag != Region::A4) continue;
                    const double id = s.tag == Region::A2 ? 2.0 : 4.0;
                    d.rows.push_back({id, y, s.lo, s.hi});
                }
            }
            break;
        }
        case 4: {
            // Tube boundary circle: radius 2 eps centered at (xi, eta) = (at, eps).
            d.columns = {"theta", "xi", "eta"};
            const double eps = field.eps();
            for (int i = 0; i <= 256; ++i) {
                const double th = 2.0 * M_PI * i / 256;
                d.rows.push_back(
                    {th, at + 2.0 * eps * std::cos(th), eps + 2.0 * eps * std::sin(th)});
            }
            break;
        }
        default:
            throw ConstraintViolation("unknown figure id");
    }
    return d;
}

std::string render_csv(const FigureData& d) {
    std::string s;
    for (std::size_t i = 0; i < d.columns.size(); ++i) {
        if (i) s += ",";
        s += d.columns[i];
    }
    s += "\n";
    for (const auto& row : d.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) s += ",";
            s += num(row[i]);
        }
        s += "\n";
    }
    return s;
}

std::string render_svg(const FigureData& d, int figure) {
    // Minimal dependency-free rendering: series polylines (figures 1/3/4) or
    // arrow segments (figure 2), auto-scaled into a fixed canvas.
    const double W = 640, H = 480, pad = 40;
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;

    struct Seg {
        double x0, y0, x1, y1;
        int series;
    };
    std::vector<Seg> segs;

    if (figure == 2) {
        for (const auto& r : d.rows) {
            const double len = 0.004 / std::max(1.0, std::hypot(r[2], r[3]));
            segs.push_back({r[0], r[1], r[0] + r[2] * len, r[1] + r[3] * len, 0});
        }
    } else if (figure == 4) {
        for (std::size_t i = 1; i < d.rows.size(); ++i)
            segs.push_back({d.rows[i - 1][1], d.rows[i - 1][2], d.rows[i][1],
                            d.rows[i][2], 0});
    } else {
        // Boundary polylines per region id, lower and upper.
        for (std::size_t i = 1; i < d.rows.size(); ++i) {
            const auto& a = d.rows[i - 1];
            const auto& b = d.rows[i];
            if (a[0] != b[0]) continue;
            const int id = static_cast<int>(a[0]);
            segs.push_back({a[1], a[2], b[1], b[2], id});
            segs.push_back({a[1], a[3], b[1], b[3], id});
        }
    }
    for (const auto& s : segs) {
        xlo = std::min({xlo, s.x0, s.x1});
        xhi = std::max({xhi, s.x0, s.x1});
        ylo = std::min({ylo, s.y0, s.y1});
        yhi = std::max({yhi, s.y0, s.y1});
    }
    if (segs.empty()) {
        xlo = ylo = 0;
        xhi = yhi = 1;
    }
    auto mx = [&](double x) { return pad + (x - xlo) / (xhi - xlo + 1e-300) * (W - 2 * pad); };
    auto my = [&](double y) { return H - pad - (y - ylo) / (yhi - ylo + 1e-300) * (H - 2 * pad); };

    static const char* colors[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
       << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    for (const auto& s : segs) {
        os << "  <line x1=\"" << mx(s.x0) << "\" y1=\"" << my(s.y0) << "\" x2=\""
           << mx(s.x1) << "\" y2=\"" << my(s.y1) << "\" stroke=\""
           << colors[s.series % 6] << "\" stroke-width=\"1\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace calibrix
