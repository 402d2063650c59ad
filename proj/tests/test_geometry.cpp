#include <doctest.h>

#include <cmath>
#include <random>

#include "abqed/model.hpp"

using namespace abqed;

namespace {

PathGeometry regular_loop(const Vec2& center, double radius, int n, int winding = 1) {
    std::vector<Vec2> v;
    for (int i = 0; i < n * std::abs(winding); ++i) {
        const double th = (winding > 0 ? 1.0 : -1.0) * kTwoPi * i / n;
        v.push_back(center + Vec2{radius * std::cos(th), radius * std::sin(th)});
    }
    return PathGeometry::loop(std::move(v));
}

}  // namespace

TEST_CASE("loop factory closes the polygon") {
    PathGeometry p = PathGeometry::loop({{0, 0}, {1, 0}, {1, 1}});
    CHECK(p.closed);
    CHECK(p.vertices.size() == 4);
    CHECK(p.vertices.front().x == doctest::Approx(p.vertices.back().x));
    CHECK(p.vertices.front().y == doctest::Approx(p.vertices.back().y));
    CHECK(p.segment_count() == 3);
}

TEST_CASE("path length and min distance") {
    PathGeometry p = PathGeometry::open_path({{0, 0}, {3, 0}, {3, 4}});
    CHECK(p.length() == doctest::Approx(7.0));
    // closest approach to (1, 1) is the perpendicular foot on the first segment
    CHECK(p.min_distance_to({1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(p.min_distance_to({5.0, 0.0}) == doctest::Approx(2.0));
}

TEST_CASE("reversed flips the subtended angle") {
    PathGeometry p = PathGeometry::open_path({{1, 0}, {0, 1}, {-1, 0}});
    const double a = subtended_angle(p, {0, 0});
    const double b = subtended_angle(p.reversed(), {0, 0});
    CHECK(a == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(b == doctest::Approx(-a).epsilon(1e-12));
}

TEST_CASE("concat is additive for the subtended angle") {
    PathGeometry a = PathGeometry::open_path({{1, 0}, {0, 1}});
    PathGeometry b = PathGeometry::open_path({{0, 1}, {-1, 0}, {0, -1}});
    PathGeometry ab = PathGeometry::concat(a, b);
    const Vec2 f{0.05, -0.1};
    CHECK(subtended_angle(ab, f) ==
          doctest::Approx(subtended_angle(a, f) + subtended_angle(b, f)).epsilon(1e-13));
    CHECK_THROWS_AS(PathGeometry::concat(b, a), ConfigError);
}

TEST_CASE("subtended angle: quarter arc oracle") {
    // direct atan2 difference for a path staying in one half plane
    PathGeometry p = PathGeometry::open_path({{2, 0}, {2, 2}});
    CHECK(subtended_angle(p, {0, 0}) == doctest::Approx(kPi / 4.0).epsilon(1e-14));
}

TEST_CASE("subtended angle: unwrapping beyond pi") {
    // three-quarter turn CCW; naive atan2 difference would wrap to -pi/2
    PathGeometry p = PathGeometry::open_path(
        {{1, 0}, {0.8, 0.8}, {0, 1}, {-0.8, 0.8}, {-1, 0}, {-0.8, -0.8}, {0, -1}});
    CHECK(subtended_angle(p, {0, 0}) == doctest::Approx(1.5 * kPi).epsilon(1e-12));
}

TEST_CASE("winding numbers for seeded loops") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> off(-0.3, 0.3), rad(0.6, 1.4);
    std::uniform_int_distribution<int> wind(-3, 3);
    for (int c = 0; c < 50; ++c) {
        int w = wind(rng);
        if (w == 0) w = 1;
        const Vec2 center{off(rng), off(rng)};
        PathGeometry loop = regular_loop(center, rad(rng), 17, w);
        CHECK(winding_number(loop, center) == w);
        // fluxon outside the loop: zero winding
        CHECK(winding_number(loop, center + Vec2{5.0, 0.1}) == 0);
    }
}

TEST_CASE("winding requires a closed path") {
    PathGeometry p = PathGeometry::open_path({{1, 0}, {0, 1}});
    CHECK_THROWS_AS(winding_number(p, {0, 0}), DomainError);
}

TEST_CASE("path through the fluxon is rejected") {
    PathGeometry p = PathGeometry::open_path({{-1, 0}, {1, 0}});
    CHECK_THROWS_AS(subtended_angle(p, {0, 0}), DomainError);
    // vertex exactly on the fluxon
    PathGeometry q = PathGeometry::open_path({{0, 0}, {1, 0}});
    CHECK_THROWS_AS(subtended_angle(q, {0, 0}), DomainError);
}

TEST_CASE("flux quantum scaling") {
    ChargeFluxConfig cfg;
    UnitSystem u;
    CHECK(cfg.flux_quantum(u) == doctest::Approx(kTwoPi / cfg.e_star));
    u.hbar = 2.0;
    u.c = 3.0;
    CHECK(cfg.flux_quantum(u) == doctest::Approx(kTwoPi * 6.0 / cfg.e_star));
}
