#include "abqed/model.hpp"

#include <algorithm>
#include <cmath>

namespace abqed {

PathGeometry PathGeometry::open_path(std::vector<Vec2> v, double refinement) {
    if (v.size() < 2) throw ConfigError("PathGeometry: need at least 2 vertices");
    PathGeometry p;
    p.vertices = std::move(v);
    p.closed = false;
    p.refinement = refinement;
    return p;
}

PathGeometry PathGeometry::loop(std::vector<Vec2> v, double refinement) {
    if (v.size() < 3) throw ConfigError("PathGeometry: closed path needs at least 3 vertices");
    PathGeometry p;
    p.vertices = std::move(v);
    const Vec2 first = p.vertices.front();
    const Vec2 last = p.vertices.back();
    if ((first - last).norm() > 1e-12) p.vertices.push_back(first);
    p.closed = true;
    p.refinement = refinement;
    return p;
}

PathGeometry PathGeometry::reversed() const {
    PathGeometry p = *this;
    std::reverse(p.vertices.begin(), p.vertices.end());
    return p;
}

PathGeometry PathGeometry::concat(const PathGeometry& a, const PathGeometry& b) {
    if (a.closed || b.closed) throw ConfigError("PathGeometry::concat: operands must be open");
    if ((a.vertices.back() - b.vertices.front()).norm() > 1e-9)
        throw ConfigError("PathGeometry::concat: paths are not contiguous");
    PathGeometry p = a;
    p.vertices.insert(p.vertices.end(), b.vertices.begin() + 1, b.vertices.end());
    p.refinement = std::min(a.refinement, b.refinement);
    return p;
}

double PathGeometry::min_distance_to(const Vec2& point) const {
    double best = 1e300;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const Vec2 a = vertices[i], b = vertices[i + 1];
        const Vec2 ab = b - a;
        const double len2 = ab.norm2();
        double t = len2 > 0.0 ? std::clamp((point - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        best = std::min(best, (point - (a + ab * t)).norm());
    }
    return best;
}

double PathGeometry::length() const {
    double l = 0.0;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
        l += (vertices[i + 1] - vertices[i]).norm();
    return l;
}

namespace {

// Unwrapped azimuth increment of a straight segment seen from the fluxon.
// A chord never subtends >= pi from an off-segment point, so each atan2
// increment is unambiguous; near-pi segments are subdivided until it is.
double segment_angle(const Vec2& a, const Vec2& b, const Vec2& fluxon, int depth) {
    const Vec2 u = a - fluxon;
    const Vec2 v = b - fluxon;
    const double nu = u.norm(), nv = v.norm();
    if (nu < 1e-14 || nv < 1e-14)
        throw DomainError("subtended_angle: path vertex coincides with the fluxon");
    const double ang = std::atan2(u.cross(v), u.dot(v));
    if (std::abs(ang) < 0.9 * kPi) return ang;
    if (depth > 60) throw DomainError("subtended_angle: path passes through the fluxon");
    const Vec2 mid = (a + b) * 0.5;
    return segment_angle(a, mid, fluxon, depth + 1) + segment_angle(mid, b, fluxon, depth + 1);
}

}  // namespace

double subtended_angle(const PathGeometry& path, const Vec2& fluxon) {
    if (path.vertices.size() < 2) throw ConfigError("subtended_angle: degenerate path");
    double total = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        const double a = segment_angle(path.vertices[i], path.vertices[i + 1], fluxon, 0);
        // Kahan step keeps additivity at the 1e-12 level for long polylines
        const double y = a - comp;
        const double t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    return total;
}

int winding_number(const PathGeometry& path, const Vec2& fluxon) {
    if (!path.closed) throw DomainError("winding_number: path must be closed");
    const double w = subtended_angle(path, fluxon) / kTwoPi;
    const double n = std::round(w);
    if (std::abs(w - n) >= 1e-6)
        throw AccuracyError("winding_number: rounding residual too large", n, std::abs(w - n));
    return static_cast<int>(n);
}

}  // namespace abqed
