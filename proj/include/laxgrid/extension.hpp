#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "laxgrid/error.hpp"
#include "laxgrid/grid.hpp"
#include "laxgrid/maps.hpp"
#include "laxgrid/twist.hpp"

namespace laxgrid {

using PointPair = std::pair<Point, Point>;

namespace detail {

inline double seg_point_distance(const Point& a, const Point& b, const Point& p) {
    double dx = b[0] - a[0], dy = b[1] - a[1];
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(a[0] + t * dx - p[0], a[1] + t * dy - p[1]);
}

inline double cross(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Zero when the closed segments meet.
inline double seg_seg_distance(const Point& a, const Point& b, const Point& c, const Point& d) {
    double d1 = cross(a, b, c), d2 = cross(a, b, d), d3 = cross(c, d, a), d4 = cross(c, d, b);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return 0.0;
    return std::min({seg_point_distance(a, b, c), seg_point_distance(a, b, d), seg_point_distance(c, d, a),
                     seg_point_distance(c, d, b)});
}

inline Point lerp(const Point& a, const Point& b, double t) {
    Point p(2);
    p[0] = a[0] + t * (b[0] - a[0]);
    p[1] = a[1] + t * (b[1] - a[1]);
    return p;
}

} // namespace detail

struct MovePlan {
    MeasureMap map = MeasureMap::identity(2);
    std::vector<TwistMap> twists;  // in application order
    double hop = 0.0;
};

// A twist centred at the midpoint of [z, z'] with R = 2|z' - z| puts z at
// rho = 1/4, where the profile is exactly a half turn: z goes to z'.
inline TwistMap hop_twist(const Point& z, const Point& z2) {
    double len = std::hypot(z2[0] - z[0], z2[1] - z[1]);
    return TwistMap(0.5 * (z[0] + z2[0]), 0.5 * (z[1] + z2[1]), 2.0 * len);
}

// Area-preserving map of the square sending each x_i to y_i, built from
// twists hopping along the straight segments. The hop length is capped so
// twist supports of different pairs stay disjoint, stay inside the square,
// and the total displacement stays below delta.
inline MovePlan move_points_plan(const std::vector<PointPair>& pairs, double delta) {
    require(delta > 0.0, ErrorKind::DomainError, "delta must be positive");
    MovePlan plan;
    if (pairs.empty()) return plan;
    double max_len = 0.0, gap = std::numeric_limits<double>::infinity(), margin = gap;
    for (auto& [x, y] : pairs) {
        require(x.n == 2 && y.n == 2, ErrorKind::DomainError, "move_points works in the plane");
        for (const Point* p : {&x, &y})
            require((*p)[0] > 0.0 && (*p)[0] < 1.0 && (*p)[1] > 0.0 && (*p)[1] < 1.0, ErrorKind::PointsOnBoundary,
                    "point not in the open unit square");
        max_len = std::max(max_len, std::hypot(y[0] - x[0], y[1] - x[1]));
        for (const Point* p : {&x, &y})
            margin = std::min({margin, (*p)[0], 1.0 - (*p)[0], (*p)[1], 1.0 - (*p)[1]});
    }
    require(max_len < delta, ErrorKind::DomainError, "a pair is at least delta apart");
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            double g = detail::seg_seg_distance(pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second);
            require(g > 0.0, ErrorKind::PathsIntersect,
                    "segments " + std::to_string(a) + " and " + std::to_string(b) + " meet");
            gap = std::min(gap, g);
        }
    double hop = std::min({delta / 4.0, (delta - max_len) / 4.0, gap / 4.0, margin / 2.0});
    plan.hop = hop;
    std::vector<MeasureMap> parts;
    for (auto& [x, y] : pairs) {
        double len = std::hypot(y[0] - x[0], y[1] - x[1]);
        if (len == 0.0) continue;
        auto hops = static_cast<int>(std::ceil(len / hop));
        for (int k = 0; k < hops; ++k) {
            Point a = detail::lerp(x, y, static_cast<double>(k) / hops);
            Point b = k + 1 == hops ? y : detail::lerp(x, y, static_cast<double>(k + 1) / hops);
            plan.twists.push_back(hop_twist(a, b));
            parts.push_back(MeasureMap::twist(plan.twists.back()));
        }
    }
    if (!parts.empty()) plan.map = MeasureMap::composition(std::move(parts));
    return plan;
}

inline MeasureMap move_points(const std::vector<PointPair>& pairs, double delta) {
    return move_points_plan(pairs, delta).map;
}

// Moves every x_i to y_i simultaneously in `stages` rounds, each round
// covering the next 1/stages of every segment. Segments that share
// endpoints (a cyclic relabelling of grid centres) become separable this way.
inline MovePlan move_points_staged(const std::vector<PointPair>& pairs, double delta, int stages = 3) {
    require(stages >= 1, ErrorKind::DomainError, "stages must be >= 1");
    MovePlan plan;
    std::vector<MeasureMap> parts;
    double hop = std::numeric_limits<double>::infinity();
    for (int s = 0; s < stages; ++s) {
        std::vector<PointPair> sub;
        for (auto& [x, y] : pairs)
            sub.push_back({detail::lerp(x, y, static_cast<double>(s) / stages),
                           s + 1 == stages ? y : detail::lerp(x, y, static_cast<double>(s + 1) / stages)});
        auto p = move_points_plan(sub, delta);
        hop = std::min(hop, p.hop);
        plan.twists.insert(plan.twists.end(), p.twists.begin(), p.twists.end());
        if (!p.twists.empty()) parts.push_back(p.map);
    }
    plan.hop = std::isfinite(hop) ? hop : 0.0;
    if (!parts.empty()) plan.map = MeasureMap::composition(std::move(parts));
    return plan;
}

// Smallest |rho - b| over the profile breakpoints b in {0, 1/8, 3/8, 1/2},
// taken over every twist the orbit of p passes through (in rho units).
inline double twist_breakpoint_distance(const MeasureMap& f, const Point& p) {
    double best = std::numeric_limits<double>::infinity();
    Point x = p;
    auto visit = [&](const TwistMap& t) {
        double rho = std::hypot(x[0] - t.cx, x[1] - t.cy) / t.R;
        if (rho <= 0.5 + 1e-3)
            for (double b : {0.0, 0.125, 0.375, 0.5}) best = std::min(best, std::abs(rho - b));
    };
    auto walk = [&](auto&& self, const MeasureMap& g) -> void {
        if (g.kind() == MapKind::twist) {
            visit(g.twist_map());
            x = g.apply(x);
        } else if (g.kind() == MapKind::composition) {
            for (auto& part : g.parts()) self(self, part);
        } else {
            x = g.apply(x);
        }
    };
    walk(walk, f);
    return best;
}

// max | |det J| - 1 | with J from central differences of step h.
inline double jacobian_check(const MeasureMap& f, const std::vector<Point>& points, double h = 1e-5) {
    require(f.dim() == 2, ErrorKind::DomainError, "jacobian_check works in the plane");
    double worst = 0.0;
    for (auto& p : points) {
        auto at = [&](double dx, double dy) {
            Point q(2);
            q[0] = p[0] + dx;
            q[1] = p[1] + dy;
            return f.apply(q);
        };
        Point xp = at(h, 0), xm = at(-h, 0), yp = at(0, h), ym = at(0, -h);
        double j11 = (xp[0] - xm[0]) / (2 * h), j21 = (xp[1] - xm[1]) / (2 * h);
        double j12 = (yp[0] - ym[0]) / (2 * h), j22 = (yp[1] - ym[1]) / (2 * h);
        worst = std::max(worst, std::abs(std::abs(j11 * j22 - j12 * j21) - 1.0));
    }
    return worst;
}

} // namespace laxgrid
