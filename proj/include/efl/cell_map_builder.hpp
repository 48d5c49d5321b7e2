#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "efl/cell_map.hpp"
#include "efl/vector_field.hpp"

namespace efl {

/// Axis-aligned sampling window with a per-axis resolution.
struct grid_spec {
    std::vector<double> lo, hi;
    std::vector<int> res;

    std::size_t dims() const { return res.size(); }
    double width(std::size_t a) const { return (hi[a] - lo[a]) / res[a]; }

    void validate() const {
        if (res.empty() || res.size() > 2 || lo.size() != res.size() || hi.size() != res.size())
            throw error(errc::degenerate_grid, "grid must be 1D or 2D with matching bounds");
        for (std::size_t a = 0; a < res.size(); ++a) {
            if (res[a] < 2) throw error(errc::degenerate_grid, "resolution below 2 on an axis");
            if (!(hi[a] > lo[a])) throw error(errc::degenerate_grid, "empty box on an axis");
        }
    }
};

namespace detail {

/// Convex hull of a planar point cloud (monotone chain), counterclockwise,
/// no repeated first point.  Collinear input degenerates to a segment.
inline std::vector<vec2> convex_hull(std::vector<vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const vec2& a, const vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const vec2& a, const vec2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() <= 2) return pts;
    auto cross = [](const vec2& o, const vec2& a, const vec2& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<vec2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

inline double dist_point_segment(const vec2& p, const vec2& a, const vec2& b) {
    double dx = b.x - a.x, dy = b.y - a.y;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    double ex = p.x - (a.x + t * dx), ey = p.y - (a.y + t * dy);
    return std::sqrt(ex * ex + ey * ey);
}

/// Distance from a point to a convex polygon (0 inside).
inline double dist_point_hull(const vec2& p, const std::vector<vec2>& hull) {
    if (hull.empty()) return std::numeric_limits<double>::infinity();
    if (hull.size() == 1) {
        double ex = p.x - hull[0].x, ey = p.y - hull[0].y;
        return std::sqrt(ex * ex + ey * ey);
    }
    if (hull.size() == 2) return dist_point_segment(p, hull[0], hull[1]);
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const vec2& a = hull[i];
        const vec2& b = hull[(i + 1) % hull.size()];
        double cr = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (cr < 0) inside = false;
        best = std::min(best, dist_point_segment(p, a, b));
    }
    return inside ? 0.0 : best;
}

}  // namespace detail

/// Outer approximation of the time-tau map on the top cells of a grid.
///
/// Each cell is sampled at its corners and center; samples are integrated
/// and samples leaving the box mark the cell as exiting.  The image of a
/// cell is the owner cell of the integrated hull's centroid plus every cell
/// whose center lies within `bloat` of the hull.  Monotone in bloat and
/// deterministic given the specs.
inline std::pair<finite_space, cell_map> build_cell_map(const vector_field& field,
                                                        const grid_spec& grid,
                                                        const approx_params& params) {
    grid.validate();
    if (static_cast<std::size_t>(field.dims) != grid.dims())
        throw error(errc::degenerate_grid, "field and grid dimension disagree");
    const std::size_t d = grid.dims();
    double diag = 0.0;
    for (std::size_t a = 0; a < d; ++a) diag += grid.width(a) * grid.width(a);
    const double bloat = params.bloat >= 0.0 ? params.bloat : 0.1 * std::sqrt(diag);

    long total = 1;
    for (int r : grid.res) total *= r;
    std::vector<int> all(static_cast<std::size_t>(total));
    for (long i = 0; i < total; ++i) all[static_cast<std::size_t>(i)] = static_cast<int>(i);
    finite_space space = build_grid_space(grid.res, all);

    auto cell_coords = [&](long idx) {
        std::vector<int> c(d);
        for (std::size_t a = d; a-- > 0;) {
            c[a] = static_cast<int>(idx % grid.res[a]);
            idx /= grid.res[a];
        }
        return c;
    };
    auto in_box = [&](const vec2& p) {
        if (p.x < grid.lo[0] || p.x > grid.hi[0]) return false;
        if (d == 2 && (p.y < grid.lo[1] || p.y > grid.hi[1])) return false;
        return true;
    };
    auto owner = [&](const vec2& p) {
        long idx = 0;
        for (std::size_t a = 0; a < d; ++a) {
            double coord = a == 0 ? p.x : p.y;
            int k = static_cast<int>(std::floor((coord - grid.lo[a]) / grid.width(a)));
            k = std::clamp(k, 0, grid.res[a] - 1);
            idx = idx * grid.res[a] + k;
        }
        return idx;
    };
    auto center_of = [&](long idx) {
        auto c = cell_coords(idx);
        vec2 p;
        p.x = grid.lo[0] + (c[0] + 0.5) * grid.width(0);
        if (d == 2) p.y = grid.lo[1] + (c[1] + 0.5) * grid.width(1);
        return p;
    };

    std::vector<std::vector<int>> images(static_cast<std::size_t>(total));
    std::vector<bool> exit(static_cast<std::size_t>(total), false);
    for (long idx = 0; idx < total; ++idx) {
        auto c = cell_coords(idx);
        std::vector<vec2> samples;
        double x0 = grid.lo[0] + c[0] * grid.width(0), x1 = x0 + grid.width(0);
        if (d == 1) {
            samples = {{x0, 0}, {x1, 0}, {0.5 * (x0 + x1), 0}};
        } else {
            double y0 = grid.lo[1] + c[1] * grid.width(1), y1 = y0 + grid.width(1);
            samples = {{x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}, {0.5 * (x0 + x1), 0.5 * (y0 + y1)}};
        }
        std::vector<vec2> imgs;
        for (const auto& s : samples) {
            vec2 q = time_tau_map(field, params, s);
            if (in_box(q))
                imgs.push_back(q);
            else
                exit[static_cast<std::size_t>(idx)] = true;
        }
        if (imgs.empty()) continue;

        auto& out = images[static_cast<std::size_t>(idx)];
        if (d == 1) {
            double mn = imgs[0].x, mx = imgs[0].x, centroid = 0.0;
            for (const auto& q : imgs) {
                mn = std::min(mn, q.x);
                mx = std::max(mx, q.x);
                centroid += q.x;
            }
            centroid /= static_cast<double>(imgs.size());
            out.push_back(static_cast<int>(owner({centroid, 0})));
            int k0 = std::clamp(
                static_cast<int>(std::floor((mn - bloat - grid.lo[0]) / grid.width(0))) - 1, 0,
                grid.res[0] - 1);
            int k1 = std::clamp(
                static_cast<int>(std::floor((mx + bloat - grid.lo[0]) / grid.width(0))) + 1, 0,
                grid.res[0] - 1);
            for (int k = k0; k <= k1; ++k) {
                double ctr = grid.lo[0] + (k + 0.5) * grid.width(0);
                double dist = ctr < mn ? mn - ctr : (ctr > mx ? ctr - mx : 0.0);
                if (dist <= bloat) out.push_back(k);
            }
        } else {
            auto hull = detail::convex_hull(imgs);
            vec2 centroid;
            for (const auto& q : imgs) {
                centroid.x += q.x;
                centroid.y += q.y;
            }
            centroid.x /= static_cast<double>(imgs.size());
            centroid.y /= static_cast<double>(imgs.size());
            out.push_back(static_cast<int>(owner(centroid)));
            double mnx = hull[0].x, mxx = hull[0].x, mny = hull[0].y, mxy = hull[0].y;
            for (const auto& q : hull) {
                mnx = std::min(mnx, q.x);
                mxx = std::max(mxx, q.x);
                mny = std::min(mny, q.y);
                mxy = std::max(mxy, q.y);
            }
            int kx0 = std::clamp(static_cast<int>(std::floor((mnx - bloat - grid.lo[0]) / grid.width(0))) - 1,
                                 0, grid.res[0] - 1);
            int kx1 = std::clamp(static_cast<int>(std::floor((mxx + bloat - grid.lo[0]) / grid.width(0))) + 1,
                                 0, grid.res[0] - 1);
            int ky0 = std::clamp(static_cast<int>(std::floor((mny - bloat - grid.lo[1]) / grid.width(1))) - 1,
                                 0, grid.res[1] - 1);
            int ky1 = std::clamp(static_cast<int>(std::floor((mxy + bloat - grid.lo[1]) / grid.width(1))) + 1,
                                 0, grid.res[1] - 1);
            for (int kx = kx0; kx <= kx1; ++kx)
                for (int ky = ky0; ky <= ky1; ++ky) {
                    long target = static_cast<long>(kx) * grid.res[1] + ky;
                    if (detail::dist_point_hull(center_of(target), hull) <= bloat)
                        out.push_back(static_cast<int>(target));
                }
        }
    }
    cell_map map = make_cell_map(space, std::move(images), std::move(exit));
    return {std::move(space), std::move(map)};
}

}  // namespace efl
