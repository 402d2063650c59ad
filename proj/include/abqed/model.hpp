#pragma once

#include <numbers>
#include <vector>

#include "abqed/errors.hpp"
#include "abqed/vec.hpp"

namespace abqed {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Natural Gaussian units by default (hbar = c = 1); every phase scales as
// 1/(hbar c) exactly.
struct UnitSystem {
    double hbar = 1.0;
    double c = 1.0;

    void validate() const {
        if (!(hbar > 0.0) || !(c > 0.0))
            throw ConfigError("UnitSystem: hbar and c must be strictly positive");
    }
};

// Physical parameters of the charge--fluxon pair.  The fluxon mass M is
// recorded but never enters the effective coupling.
struct ChargeFluxConfig {
    double e = 1.0;        // probe charge
    double e_star = 2.0;   // interferometer effective charge (Cooper pair)
    double m = 1.0;        // charge mass
    double M = 1.0;        // fluxon mass
    double phi = kTwoPi;   // flux, sign meaningful
    Vec2 x_a{1.0, 0.0};    // charge position
    Vec2 x_b{0.0, 0.0};    // fluxon position

    void validate() const {
        if (!(m > 0.0) || !(M > 0.0))
            throw ConfigError("ChargeFluxConfig: masses must be strictly positive");
    }
    double flux_quantum(const UnitSystem& u) const { return kTwoPi * u.hbar * u.c / e_star; }
};

// Polygonal path, open or closed.  A closed path stores the closing vertex
// explicitly (first == last).
struct PathGeometry {
    std::vector<Vec2> vertices;
    bool closed = false;
    double refinement = 0.25;  // max segment length for adaptive subdivision

    static PathGeometry open_path(std::vector<Vec2> v, double refinement = 0.25);
    static PathGeometry loop(std::vector<Vec2> v, double refinement = 0.25);

    PathGeometry reversed() const;
    static PathGeometry concat(const PathGeometry& a, const PathGeometry& b);

    std::size_t segment_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    double min_distance_to(const Vec2& point) const;
    double length() const;
};

struct CurrentLoop {
    double current = 1.0;
    PathGeometry loop;

    void validate() const {
        if (!loop.closed) throw DomainError("CurrentLoop: loop must be closed");
    }
};

// Continuous (unwrapped) change of the azimuthal coordinate of path points
// measured from the fluxon, in radians.  Additive under concatenation.
double subtended_angle(const PathGeometry& path, const Vec2& fluxon);

// subtended_angle / 2pi rounded to the nearest integer for a closed path;
// throws AccuracyError if the rounding residual exceeds 1e-6.
int winding_number(const PathGeometry& path, const Vec2& fluxon);

}  // namespace abqed
