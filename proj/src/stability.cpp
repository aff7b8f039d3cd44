#include "hhdkit/stability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace hhdkit {

namespace {

// global edge ids: kind 0 = horizontal edge starting at node (i, j),
// kind 1 = vertical edge starting at node (i, j)
using EdgeId = std::tuple<int, int, int>;

struct Segment {
    EdgeId a, b;
};

double interpolate(double v0, double v1) {
    const double denom = v1 - v0;
    if (denom == 0.0) return 0.5;
    double t = -v0 / denom;
    return std::clamp(t, 0.0, 1.0);
}

}  // namespace

VdpCaseStudy make_vdp_case_study(double mu, const GridSpec& grid) {
    VdpCaseStudy s;
    s.mu = mu;
    const double den = mu * mu + 4.0;
    s.p = RealMatrix(2, 2);
    s.p << 2.0, -mu, -mu, mu * mu + 2.0;
    s.p *= -mu / den;
    s.w = QuadraticForm{s.p};
    s.c0 = std::sqrt((1.0 + mu * mu) / (2.0 + mu * mu));
    s.grid = grid;
    return s;
}

Eigen::Vector2d vdp_field(double mu, const Eigen::Vector2d& x) {
    return {x(1), mu * (1.0 - x(0) * x(0)) * x(1) - x(0)};
}

double gamma_curve(double mu, double x) {
    const double c0 = std::sqrt((1.0 + mu * mu) / (2.0 + mu * mu));
    if (!(x > c0)) {
        throw std::domain_error("gamma_curve: requires x > c0 = " + std::to_string(c0));
    }
    const double radicand = -4.0 + 8.0 * x * x + mu * mu * std::pow(x, 4);
    if (radicand < 0.0) {
        throw std::domain_error("gamma_curve: negative radicand at x = " + std::to_string(x));
    }
    const double num = -2.0 * mu * x + mu * x * x * x - x * std::sqrt(radicand);
    const double den = 2.0 * ((2.0 + mu * mu) * x * x - (mu * mu + 1.0));
    return num / den;
}

double y_nullcline(double mu, double x) {
    if (mu == 0.0) throw std::domain_error("y_nullcline: mu must be nonzero");
    const double den = mu * (1.0 - x * x);
    if (den == 0.0) throw std::domain_error("y_nullcline: pole at x = " + std::to_string(x));
    return x / den;
}

std::pair<double, double> strip_bounds(double mu, double x) {
    if (!(mu > 0.0) || !(x > 1.0)) {
        throw std::invalid_argument("strip_bounds: requires mu > 0 and x > 1");
    }
    const double lower = y_nullcline(mu, x);
    const double upper = gamma_curve(mu, x);
    if (!(lower < upper)) {
        throw std::logic_error("strip_bounds: ordering violated at x = " + std::to_string(x));
    }
    return {lower, upper};
}

double orbital_derivative_field(const QuadraticForm& w, const PlanarField& field,
                                const Eigen::Vector2d& x) {
    return w.gradient(x).dot(field(x));
}

std::vector<LevelContours> sample_level_sets(const QuadraticForm& w,
                                             const std::vector<double>& levels,
                                             const GridSpec& grid) {
    if (grid.nx < 1 || grid.ny < 1 || !(grid.xmax > grid.xmin) || !(grid.ymax > grid.ymin)) {
        throw std::invalid_argument("sample_level_sets: empty grid");
    }
    const double hx = (grid.xmax - grid.xmin) / grid.nx;
    const double hy = (grid.ymax - grid.ymin) / grid.ny;
    auto node_x = [&](int i) { return grid.xmin + i * hx; };
    auto node_y = [&](int j) { return grid.ymin + j * hy; };
    auto eval = [&](int i, int j) {
        Eigen::Vector2d p{node_x(i), node_y(j)};
        return w.value(p);
    };

    std::vector<LevelContours> out;
    out.reserve(levels.size());
    for (double level : levels) {
        // corner values for the whole node lattice
        std::vector<double> vals((grid.nx + 1) * (grid.ny + 1));
        for (int j = 0; j <= grid.ny; ++j)
            for (int i = 0; i <= grid.nx; ++i) vals[j * (grid.nx + 1) + i] = eval(i, j) - level;
        auto val = [&](int i, int j) { return vals[j * (grid.nx + 1) + i]; };

        // cell sweep: emit segments keyed by global edge ids
        std::vector<Segment> segments;
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const double v00 = val(i, j), v10 = val(i + 1, j);
                const double v11 = val(i + 1, j + 1), v01 = val(i, j + 1);
                int idx = 0;
                if (v00 > 0) idx |= 1;
                if (v10 > 0) idx |= 2;
                if (v11 > 0) idx |= 4;
                if (v01 > 0) idx |= 8;
                if (idx == 0 || idx == 15) continue;
                const EdgeId bottom{0, i, j}, top{0, i, j + 1};
                const EdgeId left{1, i, j}, right{1, i + 1, j};
                auto emit = [&](EdgeId a, EdgeId b) { segments.push_back({a, b}); };
                switch (idx) {
                    case 1: case 14: emit(left, bottom); break;
                    case 2: case 13: emit(bottom, right); break;
                    case 3: case 12: emit(left, right); break;
                    case 4: case 11: emit(right, top); break;
                    case 6: case 9:  emit(bottom, top); break;
                    case 7: case 8:  emit(left, top); break;
                    case 5: case 10: {
                        // saddle cell: split by the center sample
                        const double center = (v00 + v10 + v11 + v01) * 0.25;
                        const bool center_pos = center > 0;
                        if ((idx == 5) == center_pos) {
                            emit(left, top);
                            emit(bottom, right);
                        } else {
                            emit(left, bottom);
                            emit(right, top);
                        }
                        break;
                    }
                    default: break;
                }
            }
        }

        // vertex position on an edge: linear interpolation plus one Newton step
        auto vertex = [&](const EdgeId& e) -> Point2 {
            const auto [kind, i, j] = e;
            double px, py;
            if (kind == 0) {
                const double t = interpolate(val(i, j), val(i + 1, j));
                px = node_x(i) + t * hx;
                py = node_y(j);
            } else {
                const double t = interpolate(val(i, j), val(i, j + 1));
                px = node_x(i);
                py = node_y(j) + t * hy;
            }
            Eigen::Vector2d p{px, py};
            const Eigen::Vector2d grad = w.gradient(p);
            const double g2 = grad.squaredNorm();
            if (g2 > 1e-30) p -= (w.value(p) - level) / g2 * grad;
            return {p(0), p(1)};
        };

        // stitch segments into polylines by walking the edge-incidence graph
        std::map<EdgeId, std::vector<int>> incident;
        for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
            incident[segments[s].a].push_back(s);
            incident[segments[s].b].push_back(s);
        }
        std::vector<bool> used(segments.size(), false);
        std::vector<Polyline> lines;
        auto walk = [&](int start_seg, EdgeId start_edge) {
            Polyline line;
            int seg = start_seg;
            EdgeId at = start_edge;
            line.points.push_back(vertex(at));
            while (true) {
                used[seg] = true;
                at = (segments[seg].a == at) ? segments[seg].b : segments[seg].a;
                line.points.push_back(vertex(at));
                int next = -1;
                for (int cand : incident[at])
                    if (!used[cand]) {
                        next = cand;
                        break;
                    }
                if (next < 0) break;
                seg = next;
            }
            return line;
        };
        // open curves first so ends start at degree-1 edges
        for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
            if (used[s]) continue;
            EdgeId open_end = segments[s].a;
            bool found = false;
            for (const EdgeId& e : {segments[s].a, segments[s].b}) {
                if (incident[e].size() == 1) {
                    open_end = e;
                    found = true;
                    break;
                }
            }
            if (found) lines.push_back(walk(s, open_end));
        }
        for (int s = 0; s < static_cast<int>(segments.size()); ++s) {
            if (!used[s]) lines.push_back(walk(s, segments[s].a));
        }
        out.push_back({level, std::move(lines)});
    }
    return out;
}

}  // namespace hhdkit
