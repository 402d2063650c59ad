#pragma once

#include <utility>
#include <vector>

#include "abqed/modes.hpp"
#include "abqed/quadrature.hpp"

namespace abqed {

// One first-order matrix element <0|X|gamma> or <gamma|X|0>.  The amplitude
// includes the e^{-+ i omega t} factor at the given t, so the cancellation of
// time phases in paired products is an executable check rather than an
// assumption.
struct MatrixElement {
    Complex amplitude{0.0, 0.0};
    int time_phase_sign = -1;  // exponent sign of e^{sign * i omega t}
    Vec3 coupling_vector;      // direction contracted with p (zero for scalar)
};

// <0|V_a|gamma> = -(e/mc) alpha_k u_k(x_a) (e_hat . p) e^{-i omega t}
MatrixElement me_va(const PhotonMode& mode, const Vec2& p, const Vec2& x_a,
                    const ChargeFluxConfig& cfg, const UnitSystem& units = {},
                    double t = 0.0);

// <gamma|V_b|0> = i (Phi/4pi) k alpha_k u_k*(x_b) (z_hat . n_hat) e^{+i omega t}
MatrixElement me_vb(const PhotonMode& mode, const Vec2& x_b,
                    const ChargeFluxConfig& cfg, const UnitSystem& units = {},
                    double t = 0.0);

// Gauge-variation element <0|dV_a|gamma> = -(ie/mc) k gamma_k u_k(x_a)
// (k_hat . p) e^{-i omega t}; coupling direction k_hat.
MatrixElement me_delta_va(const Vec2& k, const GaugeSpec& gauge, const Vec2& p,
                          const Vec2& x_a, const ChargeFluxConfig& cfg,
                          const UnitSystem& units = {}, double t = 0.0);

struct EffectiveFieldResult {
    Vec2 value;
    double error_estimate = 0.0;
    QuadratureSpec spec_echo;
};

// Numeric effective vector potential a(x) from the continuum second-order
// mode sum (both Hermitian orderings, denominator -hbar omega), with the
// angular sector reduced through the polarization identity to a J1 radial
// integral.  Converges to Phi theta_hat / (2 pi |x|).
EffectiveFieldResult effective_a(const Vec2& x, const ChargeFluxConfig& cfg,
                                 const QuadratureSpec& spec,
                                 const UnitSystem& units = {});

// Analytic limit, for oracles and the phase module.
Vec2 effective_a_analytic(const Vec2& x, const ChargeFluxConfig& cfg);

// Brute-force cross-check route: the same mode sum on an explicit polar
// k-grid at a fixed regulator epsilon, no polarization-identity shortcut.
// Compare against the regulated closed form (Phi/2pi r)(1 - eps/sqrt(r^2+eps^2)).
Vec2 effective_a_grid(const Vec2& x, const ChargeFluxConfig& cfg, double epsilon,
                      double k_max, int n_radial_panels, int n_angular,
                      const UnitSystem& units = {});

// Gauge-variation field delta_a(x): the cross-term mode sum
// [<0|dV_a|gamma><gamma|V_b|0> + h.c.]/(-hbar omega) factored against
// -(e/mc) p.  Discretization nodes are frozen at construction, so the field
// is exactly a finite sum of gradients (closed-loop integrals vanish to
// line-quadrature tolerance at any resolution).
class DeltaAField {
public:
    DeltaAField(const GaugeSpec& gauge, const ChargeFluxConfig& cfg,
                const QuadratureSpec& spec, const UnitSystem& units = {},
                double r_max = 2.0);

    Vec2 eval(const Vec2& x) const;        // x relative to the fluxon
    Vec2 eval_coarse(const Vec2& x) const; // half-resolution node subset
    double field_scale() const { return scale_; }

private:
    struct Node {
        Vec2 k;
        double weight;    // radial*angular weight times all constant factors
        Complex gamma;
    };
    std::vector<Node> nodes_;
    std::vector<Node> coarse_;
    double scale_ = 0.0;
    double r_min_ = 1e-3;
};

EffectiveFieldResult delta_a(const Vec2& x, const GaugeSpec& gauge,
                             const ChargeFluxConfig& cfg, const QuadratureSpec& spec,
                             const UnitSystem& units = {});

// Second-order energy -(e/mc) p . a_numeric(x) (factored route).
double h2_assemble(const Vec2& p, const Vec2& x, const ChargeFluxConfig& cfg,
                   const QuadratureSpec& spec, const UnitSystem& units = {});

// Direct mode-sum route without the factoring step: per-mode me_va, me_vb
// products over both orderings and both transverse polarizations, angular
// trapezoid + regulated radial integral.  Must agree with h2_assemble.
double h2_direct_sum(const Vec2& p, const Vec2& x, const ChargeFluxConfig& cfg,
                     const QuadratureSpec& spec, const UnitSystem& units = {},
                     double t = 0.0);

// Scalar-photon exchange kernel K(r) for the 3D Coulomb problem; with the
// indefinite-metric sign applied, K(r) r -> 1.
struct ScalarKernelResult {
    double value = 0.0;
    double error_estimate = 0.0;
};
ScalarKernelResult coulomb_kernel(double r, const QuadratureSpec& spec);

// Lorenz-mode kernel vs the Coulomb-gauge branch (identically zero: the
// scalar mode is absent there).
struct CoulombComparison {
    double lorenz_mode_kernel = 0.0;
    double coulomb_gauge_kernel = 0.0;
    double error_estimate = 0.0;
};
CoulombComparison coulomb_gauge_comparison(double r, const QuadratureSpec& spec);

// External charge distribution for the scalar problem.
struct ChargeDistribution {
    std::vector<std::pair<double, Vec3>> point_charges;  // (q_i, position)
};

// e * sum_i q_i K(|x - x_i|)
double coulomb_energy(const ChargeDistribution& rho, const Vec3& probe, double e,
                      const QuadratureSpec& spec);

}  // namespace abqed
