// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the pass-isac authors

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "passisac/core_model.hpp"

namespace passisac {

/// Downward-closed achievable rate region.  `hull_vertices` is the
/// upper-right boundary walked from (cr_max, 0) to (0, sr_max); the two
/// axis segments closing the polygon at the origin are implicit.
/// `corners` keeps the generating anchor points in input order so that
/// regions built from matched anchor grids can be averaged corner-wise.
struct RateRegion {
    std::vector<RatePair> corners;
    std::vector<RatePair> hull_vertices;

    double cr_max() const {
        double m = 0.0;
        for (const auto& v : hull_vertices) m = std::max(m, v.cr);
        return m;
    }
    double sr_max() const {
        double m = 0.0;
        for (const auto& v : hull_vertices) m = std::max(m, v.sr);
        return m;
    }
};

namespace detail {

struct Pt {
    double x, y;
};

inline double cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/// Andrew monotone chain; returns the hull in counterclockwise order.
/// Collinear vertices are dropped with a tolerance relative to the
/// bounding-box diagonal (rates span ~0-25 bits, absolute tolerances
/// would misbehave across that range).
inline std::vector<Pt> convex_hull_ccw(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    double diag_sq = 0.0;
    for (const auto& p : pts) diag_sq = std::max(diag_sq, p.x * p.x + p.y * p.y);
    const double tol = 1e-12 * std::max(diag_sq, 1e-300);

    std::vector<Pt> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= tol) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= tol) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    return hull;
}

}  // namespace detail

/// Convex hull (time sharing) of the rectangles [0,cr] x [0,sr] anchored at
/// the given corner points, reduced to the upper-right boundary.
inline RateRegion hull_of_rectangles(std::vector<RatePair> corner_points) {
    if (corner_points.empty()) throw std::domain_error("hull_of_rectangles: no corners");
    double cmax = 0.0, smax = 0.0;
    for (const auto& p : corner_points) {
        if (!std::isfinite(p.cr) || !std::isfinite(p.sr) || p.cr < 0.0 || p.sr < 0.0)
            throw std::domain_error("hull_of_rectangles: corners must be finite and >= 0");
        cmax = std::max(cmax, p.cr);
        smax = std::max(smax, p.sr);
    }

    RateRegion region;
    region.corners = std::move(corner_points);
    if (cmax == 0.0 && smax == 0.0) {
        region.hull_vertices = {{0.0, 0.0}};
        return region;
    }

    std::vector<detail::Pt> pts;
    pts.reserve(region.corners.size() + 3);
    pts.push_back({0.0, 0.0});
    pts.push_back({cmax, 0.0});
    pts.push_back({0.0, smax});
    for (const auto& p : region.corners) pts.push_back({p.cr, p.sr});
    const auto hull = detail::convex_hull_ccw(std::move(pts));

    // Walk counterclockwise from (cmax, 0) through the upper-right chain
    // up to (0, smax).
    std::size_t start = 0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (hull[i].x == cmax && hull[i].y == 0.0) { start = i; break; }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& v = hull[(start + i) % hull.size()];
        region.hull_vertices.push_back({v.x, v.y});
        if (v.x == 0.0 && v.y == smax) break;
    }
    return region;
}

/// True iff `p` is inside the downward-closed region within slack `tol`,
/// measured as Euclidean distance in rate units.
inline bool contains(const RateRegion& region, const RatePair& p, double tol) {
    if (region.hull_vertices.empty()) throw std::domain_error("contains: empty region");
    if (region.hull_vertices.size() == 1) {
        const auto& v = region.hull_vertices.front();
        return p.cr <= v.cr + tol && p.sr <= v.sr + tol;
    }
    // Closed counterclockwise polygon: origin, boundary chain, back to origin.
    std::vector<detail::Pt> poly;
    poly.reserve(region.hull_vertices.size() + 1);
    poly.push_back({0.0, 0.0});
    for (const auto& v : region.hull_vertices) poly.push_back({v.cr, v.sr});
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        if (len == 0.0) continue;
        const double c = detail::cross(a, b, {p.cr, p.sr});
        if (c < -tol * len) return false;
    }
    return true;
}

/// True iff region `a` is contained in region `b` within `tol`.  Both
/// regions are convex and downward closed, so testing the vertices of `a`
/// suffices.
inline bool region_subset(const RateRegion& a, const RateRegion& b, double tol) {
    for (const auto& v : a.hull_vertices)
        if (!contains(b, v, tol)) return false;
    return true;
}

/// Average rate region across realizations: the k-th generating corner is
/// averaged across all regions (anchor grids must match), then the mean
/// corners are hulled.
inline RateRegion average_regions(std::span<const RateRegion> regions,
                                  int alpha_anchor_count) {
    if (regions.empty()) throw std::domain_error("average_regions: no regions");
    const auto count = static_cast<std::size_t>(alpha_anchor_count);
    for (const auto& r : regions)
        if (r.corners.size() != count)
            throw std::domain_error("average_regions: mismatched anchor counts");
    std::vector<RatePair> mean(count, RatePair{0.0, 0.0});
    for (const auto& r : regions)
        for (std::size_t k = 0; k < count; ++k) {
            mean[k].cr += r.corners[k].cr;
            mean[k].sr += r.corners[k].sr;
        }
    const double inv = 1.0 / static_cast<double>(regions.size());
    for (auto& m : mean) {
        m.cr *= inv;
        m.sr *= inv;
    }
    return hull_of_rectangles(std::move(mean));
}

/// CSV serialization: header plus one "cr,sr" line per boundary vertex.
inline std::string region_to_csv(const RateRegion& region) {
    std::string out = "cr,sr\n";
    char line[80];
    for (const auto& v : region.hull_vertices) {
        std::snprintf(line, sizeof line, "%.12g,%.12g\n", v.cr, v.sr);
        out += line;
    }
    return out;
}

}  // namespace passisac
