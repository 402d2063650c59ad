#include <doctest.h>

#include <cmath>
#include <random>

#include "abqed/phases.hpp"

using namespace abqed;

namespace {

PathGeometry random_open_path(std::mt19937_64& rng, int n_vertices) {
    // vertices on an annulus around the origin so no segment crosses it
    std::uniform_real_distribution<double> rad(0.7, 1.6), jitter(-0.25, 0.25);
    std::uniform_real_distribution<double> start(0.0, kTwoPi), span(0.5, 2.5 * kPi);
    const double th0 = start(rng), dth = span(rng);
    std::vector<Vec2> v;
    for (int i = 0; i < n_vertices; ++i) {
        const double th = th0 + dth * i / (n_vertices - 1) + (i % (n_vertices - 1) ? jitter(rng) / n_vertices : 0.0);
        const double r = rad(rng);
        v.push_back({r * std::cos(th), r * std::sin(th)});
    }
    return PathGeometry::open_path(std::move(v));
}

PathGeometry circle_loop(const Vec2& c, double radius, int n, bool ccw = true) {
    std::vector<Vec2> v;
    for (int i = 0; i < n; ++i) {
        const double th = (ccw ? 1.0 : -1.0) * kTwoPi * i / n;
        v.push_back(c + Vec2{radius * std::cos(th), radius * std::sin(th)});
    }
    return PathGeometry::loop(std::move(v));
}

}  // namespace

TEST_CASE("line integral of a uniform field") {
    PathGeometry p = PathGeometry::open_path({{0, 0}, {2, 0}, {2, 3}});
    auto f = [](const Vec2&) { return Vec2{1.0, -2.0}; };
    PhaseResult r = line_integral(f, p);
    CHECK(r.phase == doctest::Approx(2.0 * 1.0 + 3.0 * -2.0).epsilon(1e-14));
}

TEST_CASE("gradient theorem for chi fields") {
    ChiPrimitive c;
    c.kind = ChiPrimitive::Kind::GaussianBump;
    c.amplitude = 1.4;
    c.center = {0.5, -0.3};
    c.sigma = 0.8;
    PathGeometry p = PathGeometry::open_path({{-1, -1}, {0.2, 0.9}, {1.5, 0.1}, {0.4, -1.2}});
    auto grad = [&](const Vec2& x) { return c.grad(x); };
    PhaseResult r = line_integral(grad, p);
    CHECK(r.phase ==
          doctest::Approx(c.eval(p.vertices.back()) - c.eval(p.vertices.front())).epsilon(1e-10));
    // closed version integrates to zero
    PathGeometry loop = circle_loop({0.1, 0.1}, 1.1, 12);
    CHECK(std::abs(line_integral(grad, loop).phase) < 1e-10);
}

TEST_CASE("open-path phase equals the subtended-angle formula") {
    const ChargeFluxConfig cfg;
    const UnitSystem units;
    std::mt19937_64 rng(101);
    for (int c = 0; c < 20; ++c) {
        PathGeometry p = random_open_path(rng, 7);
        auto field = [&](const Vec2& x) { return analytic_a(x, {0, 0}, cfg.phi); };
        const double phase = phase_along_path(field, p, cfg.e_star, units, 1e-13).phase;
        const double expect =
            cfg.e_star * cfg.phi / (kTwoPi * units.hbar * units.c) * subtended_angle(p, {0, 0});
        CHECK(phase == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("closed loops give winding times the flux phase") {
    const ChargeFluxConfig cfg;
    const UnitSystem units;
    auto field = [&](const Vec2& x) { return analytic_a(x, {0, 0}, cfg.phi); };
    for (bool ccw : {true, false}) {
        PathGeometry loop = circle_loop({0.2, -0.1}, 1.0, 24, ccw);
        const double phase = phase_along_path(field, loop, cfg.e_star, units).phase;
        const int w = winding_number(loop, {0, 0});
        CHECK(phase == doctest::Approx(w * cfg.e_star * cfg.phi).epsilon(1e-10));
    }
}

TEST_CASE("numeric effective potential gives the same phase") {
    const ChargeFluxConfig cfg;
    const UnitSystem units;
    const QuadratureSpec spec;
    PathGeometry p = PathGeometry::open_path({{1.2, 0.0}, {0.9, 0.9}, {-0.3, 1.1}});
    auto numeric = [&](const Vec2& x) { return effective_a(x, cfg, spec, units).value; };
    auto exact = [&](const Vec2& x) { return analytic_a(x, {0, 0}, cfg.phi); };
    const double pn = phase_along_path(numeric, p, cfg.e_star, units, 1e-10).phase;
    const double pe = phase_along_path(exact, p, cfg.e_star, units, 1e-12).phase;
    CHECK(pn == doctest::Approx(pe).epsilon(1e-9));
}

TEST_CASE("semiclassical field carries the flux constraint") {
    SemiclassicalField f;
    f.fluxon = {0.0, 0.0};
    f.phi = kTwoPi;
    PathGeometry loop = circle_loop({0.0, 0.0}, 1.3, 32);
    const double circ = line_integral([&](const Vec2& x) { return f.eval(x); }, loop).phase;
    CHECK(circ == doctest::Approx(f.phi).epsilon(1e-10));
}

TEST_CASE("semiclassical gauge shift follows the endpoint formula") {
    SemiclassicalField f;
    f.phi = kTwoPi;
    ChiPrimitive c;
    c.kind = ChiPrimitive::Kind::Polynomial;
    c.amplitude = 0.6;
    c.px = 1;
    c.py = 2;
    f.chi = {c};
    const double e_star = 2.0;
    const UnitSystem units;

    PathGeometry open = PathGeometry::open_path({{1.0, 0.2}, {0.4, 1.1}, {-0.9, 0.6}});
    GaugeShiftResult r = semiclassical_gauge_shift(f, open, e_star, units);
    CHECK(r.difference == doctest::Approx(r.predicted_difference).epsilon(1e-10));
    CHECK(std::abs(r.difference) > 1e-3);  // genuinely non-invariant

    PathGeometry loop = circle_loop({0.1, 0.0}, 1.0, 24);
    GaugeShiftResult rc = semiclassical_gauge_shift(f, loop, e_star, units);
    CHECK(std::abs(rc.difference) < 1e-9);
}

TEST_CASE("interferometer local phase identity") {
    const ChargeFluxConfig cfg;
    const QuadratureSpec spec;
    InterferometerGeometry g =
        InterferometerGeometry::make({-1.0, 0.8}, {1.0, 0.8}, {0.0, 1.4}, {0.0, 0.0});
    g.validate(spec.r_min);
    AndreevResult res = andreev_local_phase(g, cfg, spec);
    const double expect =
        cfg.e_star * cfg.phi / kTwoPi * res.delta_theta;  // hbar = c = 1
    CHECK(res.phi_loc == doctest::Approx(expect).epsilon(1e-12));
    CHECK(res.phi_loc_numeric == doctest::Approx(res.phi_loc).epsilon(1e-6));
    CHECK(interference_signal(res.phi_loc, 0.25) ==
          doctest::Approx(std::cos(0.25 + res.phi_loc)));
}

TEST_CASE("interferometer rejects a fluxon on the path") {
    InterferometerGeometry g =
        InterferometerGeometry::make({-1.0, 0.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0});
    CHECK_THROWS_AS(g.validate(1e-3), DomainError);
}

TEST_CASE("qed vs semiclassical contrast report") {
    const ChargeFluxConfig cfg;
    const UnitSystem units;
    const QuadratureSpec spec;
    InterferometerGeometry g =
        InterferometerGeometry::make({-1.0, 0.8}, {1.0, 0.8}, {0.0, 1.4}, {0.0, 0.0});
    g.validate(spec.r_min);

    std::vector<GaugeSpec> gauges(2);
    gauges[0].family = GaugeSpec::Family::RealIsotropic;
    gauges[0].amplitude = 0.9;
    gauges[1].family = GaugeSpec::Family::ComplexIsotropic;
    gauges[1].amplitude = 0.5;
    gauges[1].amplitude_imag = 0.8;

    CompareReport rep = qed_vs_semiclassical_report(g, gauges, cfg, spec, units);
    CHECK(rep.phi_loc_reference ==
          doctest::Approx(cfg.e_star * cfg.phi / kTwoPi * rep.delta_theta).epsilon(1e-12));
    CHECK(rep.closed_loop_phase == doctest::Approx(cfg.e_star * cfg.phi).epsilon(1e-8));
    REQUIRE(rep.qed.size() == 2);
    for (const auto& row : rep.qed) CHECK(std::abs(row.closed_loop_residual) < 1e-8);
    // real-isotropic delta a vanishes: its open-path phase is the reference
    CHECK(rep.qed[0].phi_loc == doctest::Approx(rep.phi_loc_reference).epsilon(1e-6));
    // the semiclassical picture spreads under chi while staying exactly on
    // the endpoint formula
    CHECK(rep.semiclassical_spread > 1e-3);
    for (const auto& row : rep.semiclassical)
        CHECK(row.difference == doctest::Approx(row.predicted_difference).epsilon(1e-8));
}
