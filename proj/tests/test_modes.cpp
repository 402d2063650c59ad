#include <doctest.h>

#include <cmath>
#include <random>

#include "abqed/modes.hpp"

using namespace abqed;

namespace {

// central-difference curl (z component) of the real part of a mode amplitude
template <typename FieldXY>
double fd_curl_z(FieldXY f, const Vec2& x, double h = 1e-5) {
    const double dady_x = (f({x.x, x.y + h}).x - f({x.x, x.y - h}).x) / (2.0 * h);
    const double dadx_y = (f({x.x + h, x.y}).y - f({x.x - h, x.y}).y) / (2.0 * h);
    return dadx_y - dady_x;
}

PathGeometry square_loop(const Vec2& c, double half) {
    return PathGeometry::loop({c + Vec2{-half, -half}, c + Vec2{half, -half},
                               c + Vec2{half, half}, c + Vec2{-half, half}});
}

}  // namespace

TEST_CASE("phi_hat is the CCW azimuthal direction") {
    Vec2 p = phi_hat({2.0, 0.0});
    CHECK(p.x == doctest::Approx(0.0));
    CHECK(p.y == doctest::Approx(1.0));
    Vec2 q = phi_hat({0.0, -3.0});
    CHECK(q.x == doctest::Approx(1.0));
    CHECK(q.y == doctest::Approx(0.0));
}

TEST_CASE("photon mode construction invariants") {
    const Vec2 k{0.7, -0.4};
    for (Polarization lam : {Polarization::InPlaneTransverse, Polarization::OutOfPlaneTransverse}) {
        PhotonMode m(k, lam);
        CHECK(m.omega == doctest::Approx(k.norm()));
        CHECK(m.alpha == doctest::Approx(std::sqrt(kTwoPi / k.norm())));
        // Coulomb-gauge constraint and the n = k_hat x e triad
        CHECK(std::abs(m.e_hat.dot(Vec3(k))) < 1e-14);
        const Vec3 n = Vec3(k.normalized()).cross(m.e_hat);
        CHECK(std::abs((n - m.n_hat).norm()) < 1e-14);
        CHECK(m.transverse());
    }
    PhotonMode lng(k, Polarization::Longitudinal);
    CHECK(std::abs(lng.e_hat.dot(Vec3(k)) - k.norm()) < 1e-14);
    CHECK(lng.n_hat.norm() == doctest::Approx(0.0));
    CHECK_FALSE(lng.transverse());
    CHECK_THROWS_AS(PhotonMode({0.0, 0.0}, Polarization::InPlaneTransverse), DomainError);
}

TEST_CASE("mode_B is the curl of mode_A") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int c = 0; c < 20; ++c) {
        const Vec2 k{1.5 * u(rng), 1.5 * u(rng) + 2.0};
        const Polarization lam =
            c % 2 ? Polarization::InPlaneTransverse : Polarization::OutOfPlaneTransverse;
        const PhotonMode mode(k, lam);
        const Vec2 x{u(rng), u(rng)};
        const double t = 0.3 * u(rng);
        const ModeAmplitude b = mode_B(mode, x, t);
        if (lam == Polarization::InPlaneTransverse) {
            // in-plane A: compare z components of curl
            auto a_re = [&](const Vec2& y) { return mode_A(mode, y, t).annihilation.real(); };
            CHECK(fd_curl_z(a_re, x) ==
                  doctest::Approx(b.annihilation.z.real()).epsilon(1e-7));
        } else {
            // A = z_hat A_z: curl = (dA/dy, -dA/dx, 0)
            auto az = [&](const Vec2& y) { return mode_A(mode, y, t).annihilation.z.real(); };
            const double h = 1e-5;
            const double dy = (az({x.x, x.y + h}) - az({x.x, x.y - h})) / (2.0 * h);
            const double dx = (az({x.x + h, x.y}) - az({x.x - h, x.y})) / (2.0 * h);
            CHECK(dy == doctest::Approx(b.annihilation.x.real()).epsilon(1e-7));
            CHECK(-dx == doctest::Approx(b.annihilation.y.real()).epsilon(1e-7));
        }
        // hermiticity: creation coefficients are conjugates for both A and B
        const ModeAmplitude a = mode_A(mode, x, t);
        CHECK(std::abs(a.creation.x - std::conj(a.annihilation.x)) < 1e-15);
        CHECK(std::abs(b.creation.z - std::conj(b.annihilation.z)) < 1e-15);
    }
    CHECK_THROWS_AS(mode_A(PhotonMode({1.0, 0.0}, Polarization::Scalar), {0, 0}, 0.0),
                    DomainError);
}

TEST_CASE("polarization identity at 1e-14") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi), mag(0.1, 5.0);
    for (int c = 0; c < 1000; ++c) {
        const double a = ang(rng);
        const Vec2 k_hat{std::cos(a), std::sin(a)};
        const double pa = ang(rng), pm = mag(rng);
        const Vec2 p{pm * std::cos(pa), pm * std::sin(pa)};
        const double lhs = polarization_identity_sum(k_hat, p);
        const double rhs = phi_hat(k_hat).dot(p);
        CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, pm));
    }
}

TEST_CASE("chi primitives: gradient vs finite differences") {
    std::vector<ChiPrimitive> prims(3);
    prims[0].kind = ChiPrimitive::Kind::Polynomial;
    prims[0].amplitude = 0.7;
    prims[0].px = 2;
    prims[0].py = 1;
    prims[1].kind = ChiPrimitive::Kind::GaussianBump;
    prims[1].amplitude = -1.3;
    prims[1].center = {0.4, -0.2};
    prims[1].sigma = 0.9;
    prims[2].kind = ChiPrimitive::Kind::AzimuthalHarmonic;
    prims[2].amplitude = 0.5;
    prims[2].center = {-0.1, 0.3};
    prims[2].m = 3;
    const double h = 1e-6;
    for (const ChiPrimitive& c : prims) {
        for (const Vec2& x : {Vec2{0.9, 0.4}, Vec2{-0.6, 1.1}, Vec2{0.2, -0.8}}) {
            const Vec2 g = c.grad(x);
            const double gx = (c.eval({x.x + h, x.y}) - c.eval({x.x - h, x.y})) / (2.0 * h);
            const double gy = (c.eval({x.x, x.y + h}) - c.eval({x.x, x.y - h})) / (2.0 * h);
            CHECK(g.x == doctest::Approx(gx).epsilon(1e-7));
            CHECK(g.y == doctest::Approx(gy).epsilon(1e-7));
        }
    }
}

TEST_CASE("azimuthal harmonic is single-valued") {
    ChiPrimitive c;
    c.kind = ChiPrimitive::Kind::AzimuthalHarmonic;
    c.amplitude = 1.0;
    c.m = 2;
    // r^2 cos(2 theta) = x^2 - y^2
    CHECK(c.eval({1.2, -0.7}) == doctest::Approx(1.2 * 1.2 - 0.7 * 0.7).epsilon(1e-13));
}

TEST_CASE("gauge family coefficients") {
    GaugeSpec g;
    g.family = GaugeSpec::Family::Anisotropic;
    g.amplitude = 0.8;
    g.amplitude_imag = -0.3;
    g.k0 = 1.5;
    g.harmonic = 2;
    g.validate();
    const Vec2 k{1.0, 1.0};
    const Complex expect = Complex(0.8, -0.3) * std::exp(-k.norm() / 1.5) *
                           std::cos(2.0 * std::atan2(k.y, k.x));
    CHECK(std::abs(g.gamma(k) - expect) < 1e-15);

    GaugeSpec bad;
    bad.k0 = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("grad_lambda is the gradient of gamma u_k") {
    GaugeSpec g;
    g.family = GaugeSpec::Family::ComplexIsotropic;
    g.amplitude = 0.6;
    g.amplitude_imag = 0.2;
    const Vec2 k{0.9, -0.5};
    const Vec2 x{0.3, 0.7};
    const double t = 0.0;
    auto lambda_re = [&](const Vec2& y) {
        return (g.gamma(k) * std::exp(Complex(0.0, k.dot(y)))).real();
    };
    const double h = 1e-6;
    const ModeAmplitude gl = grad_lambda(k, g, x, t);
    CHECK(gl.annihilation.x.real() ==
          doctest::Approx((lambda_re({x.x + h, x.y}) - lambda_re({x.x - h, x.y})) / (2 * h))
              .epsilon(1e-8));
    CHECK(gl.annihilation.y.real() ==
          doctest::Approx((lambda_re({x.x, x.y + h}) - lambda_re({x.x, x.y - h})) / (2 * h))
              .epsilon(1e-8));
    // longitudinal: no z component
    CHECK(std::abs(gl.annihilation.z) == 0.0);
}

TEST_CASE("stokes check on a hand-built field") {
    // F = (-y, x, 0)/2 has curl_z = 1: line and surface both give the area
    auto field = [](Vec2 x) { return Vec3{-0.5 * x.y, 0.5 * x.x, 0.0}; };
    auto curl = [](Vec2) { return 1.0; };
    CurrentLoop loop{1.0, square_loop({0.3, -0.2}, 0.5)};
    StokesReport rep = stokes_check(field, curl, loop, 0.01);
    CHECK(rep.line_integral == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.surface_integral == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.rel_error < 1e-9);
}

TEST_CASE("stokes check for a photon mode converges at second order") {
    const PhotonMode mode({1.1, 0.6}, Polarization::InPlaneTransverse);
    CurrentLoop loop{1.0, square_loop({0.1, 0.2}, 0.7)};
    StokesReport coarse = stokes_check(mode, loop, 0.04);
    StokesReport fine = stokes_check(mode, loop, 0.01);
    CHECK(fine.rel_error < 1e-6);
    // 4x step reduction: error should drop by roughly 16 (allow slack)
    CHECK(coarse.rel_error / std::max(fine.rel_error, 1e-14) > 6.0);
}

TEST_CASE("grad_lambda closed-loop line integral vanishes") {
    GaugeSpec g;
    g.family = GaugeSpec::Family::Anisotropic;
    g.amplitude = 0.9;
    g.amplitude_imag = 0.4;
    g.harmonic = 1;
    CurrentLoop loop{1.0, square_loop({-0.2, 0.4}, 0.6)};
    StokesReport rep = stokes_check_grad_lambda({0.8, 0.3}, g, loop, 0.005);
    CHECK(rep.rel_error < 1e-6);
    CHECK(rep.surface_integral == 0.0);
}

TEST_CASE("stokes check rejects an open loop") {
    CurrentLoop bad{1.0, PathGeometry::open_path({{0, 0}, {1, 0}})};
    auto field = [](Vec2) { return Vec3{0, 0, 0}; };
    auto curl = [](Vec2) { return 0.0; };
    CHECK_THROWS_AS(stokes_check(field, curl, bad, 0.1), DomainError);
}
