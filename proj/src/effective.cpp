#include "abqed/effective.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace abqed {

MatrixElement me_va(const PhotonMode& mode, const Vec2& p, const Vec2& x_a,
                    const ChargeFluxConfig& cfg, const UnitSystem& units, double t) {
    if (mode.lambda == Polarization::Scalar)
        throw DomainError("me_va: scalar mode does not couple through the vector potential");
    cfg.validate();
    const Complex u = std::polar(1.0, mode.k.dot(x_a));
    MatrixElement me;
    me.amplitude = -(cfg.e / (cfg.m * units.c)) * mode.alpha * u *
                   mode.e_hat.xy().dot(p) * std::polar(1.0, -mode.omega * t);
    me.time_phase_sign = -1;
    me.coupling_vector = mode.e_hat;
    return me;
}

MatrixElement me_vb(const PhotonMode& mode, const Vec2& x_b,
                    const ChargeFluxConfig& cfg, const UnitSystem& units, double t) {
    if (mode.lambda == Polarization::Scalar)
        throw DomainError("me_vb: scalar mode carries no magnetic field");
    (void)units;
    const Complex i{0.0, 1.0};
    const Complex u_conj = std::polar(1.0, -mode.k.dot(x_b));
    MatrixElement me;
    me.amplitude = i * (cfg.phi / (4.0 * kPi)) * mode.k_norm * mode.alpha * u_conj *
                   z_hat().dot(mode.n_hat) * std::polar(1.0, mode.omega * t);
    me.time_phase_sign = +1;
    me.coupling_vector = {0.0, 0.0, 0.0};
    return me;
}

MatrixElement me_delta_va(const Vec2& k, const GaugeSpec& gauge, const Vec2& p,
                          const Vec2& x_a, const ChargeFluxConfig& cfg,
                          const UnitSystem& units, double t) {
    const double k_norm = k.norm();
    if (!(k_norm > 0.0)) throw DomainError("me_delta_va: zero wavevector");
    const double omega = units.c * k_norm;
    const Vec2 k_hat = k.normalized();
    const Complex i{0.0, 1.0};
    const Complex u = std::polar(1.0, k.dot(x_a));
    MatrixElement me;
    me.amplitude = -i * (cfg.e / (cfg.m * units.c)) * k_norm * gauge.gamma(k) * u *
                   k_hat.dot(p) * std::polar(1.0, -omega * t);
    me.time_phase_sign = -1;
    me.coupling_vector = Vec3(k_hat);
    return me;
}

namespace {

// Scale-free radial integral int_0^inf J1(q) dq for the given schedule,
// memoized: the numeric effective potential at every r reuses it.
RadialResult scaled_j1_integral(const QuadratureSpec& spec) {
    using Key = std::tuple<std::vector<double>, int, double>;
    static std::mutex mu;
    static std::map<Key, RadialResult> cache;
    Key key{spec.epsilon_over_r, spec.panel_points, spec.tail_tol};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    RadialResult res = regulated_radial(RadialKernel::J1, 1.0, spec);
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::move(key), res);
    return res;
}

}  // namespace

Vec2 effective_a_analytic(const Vec2& x, const ChargeFluxConfig& cfg) {
    const double r = x.norm();
    if (!(r > 0.0)) throw DomainError("effective_a_analytic: zero separation");
    return (cfg.phi / (kTwoPi * r)) * x.azimuthal();
}

EffectiveFieldResult effective_a(const Vec2& x, const ChargeFluxConfig& cfg,
                                 const QuadratureSpec& spec, const UnitSystem& units) {
    units.validate();
    cfg.validate();
    spec.validate();
    const double r = x.norm();
    if (r < spec.r_min)
        throw DomainError("effective_a: separation below r_min (1/|x| kernel diverges)");

    // Angular sector analytic (polarization identity -> phi_hat . p, Bessel
    // reduction); radial sector numeric and regulated.  The azimuthal
    // component carries the whole J1 integral, the radial one vanishes
    // identically in this reduction.
    const RadialResult radial = scaled_j1_integral(spec);
    EffectiveFieldResult out;
    out.value = (cfg.phi / kTwoPi) * (radial.value / r) * x.azimuthal();
    out.error_estimate = std::abs(cfg.phi / kTwoPi) * radial.error_estimate / r;
    out.spec_echo = spec;
    return out;
}

Vec2 effective_a_grid(const Vec2& x, const ChargeFluxConfig& cfg, double epsilon,
                      double k_max, int n_radial_panels, int n_angular,
                      const UnitSystem& units) {
    // Explicit polar k-grid route with per-node polarization vectors; no
    // polarization-identity shortcut, fixed regulator epsilon.
    units.validate();
    if (!(epsilon > 0.0) || !(k_max > 0.0)) throw ConfigError("effective_a_grid: bad cutoffs");
    const GaussRule& rule = gauss_legendre(16);
    const double panel = k_max / n_radial_panels;
    CompensatedSum ax, ay;
    for (int pidx = 0; pidx < n_radial_panels; ++pidx) {
        const double mid = (pidx + 0.5) * panel;
        const double hw = 0.5 * panel;
        for (int g = 0; g < 16; ++g) {
            const double k = mid + hw * rule.nodes[g];
            const double wk = hw * rule.weights[g] * k * std::exp(-epsilon * k);
            for (int j = 0; j < n_angular; ++j) {
                const double ph = kTwoPi * j / n_angular;
                const Vec2 kv{k * std::cos(ph), k * std::sin(ph)};
                // sum over transverse polarizations of (z.n_hat) e_hat
                Vec2 pol;
                for (Polarization lam :
                     {Polarization::InPlaneTransverse, Polarization::OutOfPlaneTransverse}) {
                    const PhotonMode mode(kv, lam, units);
                    pol += z_hat().dot(mode.n_hat) * mode.e_hat.xy();
                }
                const double w = wk * (kTwoPi / n_angular) / k * std::sin(kv.dot(x));
                ax.add(w * pol.x);
                ay.add(w * pol.y);
            }
        }
    }
    const double pref = cfg.phi / (4.0 * kPi * kPi);
    return {pref * ax.value(), pref * ay.value()};
}

DeltaAField::DeltaAField(const GaugeSpec& gauge, const ChargeFluxConfig& cfg,
                         const QuadratureSpec& spec, const UnitSystem& units,
                         double r_max) {
    gauge.validate();
    cfg.validate();
    spec.validate();
    units.validate();
    r_min_ = spec.r_min;

    const double hbar_c = units.hbar * units.c;
    const double k_max = spec.k_max_over_k0 * gauge.k0;
    const double panel = std::min(gauge.k0, 0.5 * kPi / std::max(r_max, 0.5));
    const int n_panels = std::max(4, static_cast<int>(std::ceil(k_max / panel)));
    const double z_max = k_max * r_max;
    int n_ang = std::max(spec.n_angular, static_cast<int>(std::ceil(1.15 * z_max + 40.0)));
    if (n_ang % 2 != 0) ++n_ang;

    const double pref = cfg.phi / (4.0 * kPi * hbar_c) / (4.0 * kPi * kPi) *
                        std::sqrt(kTwoPi * hbar_c);

    auto build = [&](int gl_points, int na, std::vector<Node>& out) {
        const GaussRule& rule = gauss_legendre(gl_points);
        out.clear();
        out.reserve(static_cast<std::size_t>(n_panels) * gl_points * na);
        for (int pidx = 0; pidx < n_panels; ++pidx) {
            const double mid = (pidx + 0.5) * (k_max / n_panels);
            const double hw = 0.5 * (k_max / n_panels);
            for (int g = 0; g < gl_points; ++g) {
                const double k = mid + hw * rule.nodes[g];
                // d^2k = k dk dphi; integrand carries k alpha(k) = k sqrt(2 pi hbar c / k)
                const double wk = hw * rule.weights[g] * k * k * std::sqrt(1.0 / k) *
                                  (kTwoPi / na) * pref;
                const Complex env = gauge.gamma_radial(k);
                for (int j = 0; j < na; ++j) {
                    const double ph = kTwoPi * j / na;
                    Node node;
                    node.k = {k * std::cos(ph), k * std::sin(ph)};
                    node.weight = wk;
                    node.gamma = env;
                    if (gauge.family == GaugeSpec::Family::Anisotropic)
                        node.gamma *= std::cos(gauge.harmonic * ph);
                    out.push_back(node);
                }
            }
        }
    };

    build(8, n_ang, nodes_);
    // coarse set shares the panels but halves rule order and angular
    // resolution; it exists only for the error estimate
    int n_ang_coarse = n_ang / 2;
    if (n_ang_coarse % 2 != 0) ++n_ang_coarse;
    build(4, n_ang_coarse, coarse_);

    double sc = 0.0;
    for (const Node& n : nodes_) sc += std::abs(n.weight) * 2.0 * std::abs(n.gamma);
    scale_ = sc;
}

Vec2 DeltaAField::eval(const Vec2& x) const {
    if (x.norm() < r_min_) throw DomainError("delta_a: separation below r_min");
    CompensatedSum ax, ay;
    for (const Node& n : nodes_) {
        const double phase = n.k.dot(x);
        const double re = n.gamma.real() * std::cos(phase) - n.gamma.imag() * std::sin(phase);
        const double w = 2.0 * n.weight * re / n.k.norm();
        ax.add(w * n.k.x);
        ay.add(w * n.k.y);
    }
    return {ax.value(), ay.value()};
}

Vec2 DeltaAField::eval_coarse(const Vec2& x) const {
    if (x.norm() < r_min_) throw DomainError("delta_a: separation below r_min");
    CompensatedSum ax, ay;
    for (const Node& n : coarse_) {
        const double phase = n.k.dot(x);
        const double re = n.gamma.real() * std::cos(phase) - n.gamma.imag() * std::sin(phase);
        const double w = 2.0 * n.weight * re / n.k.norm();
        ax.add(w * n.k.x);
        ay.add(w * n.k.y);
    }
    return {ax.value(), ay.value()};
}

EffectiveFieldResult delta_a(const Vec2& x, const GaugeSpec& gauge,
                             const ChargeFluxConfig& cfg, const QuadratureSpec& spec,
                             const UnitSystem& units) {
    const double r_max = std::max(2.0, 1.25 * x.norm());
    DeltaAField field(gauge, cfg, spec, units, r_max);
    const Vec2 fine = field.eval(x);
    const Vec2 coarse = field.eval_coarse(x);
    EffectiveFieldResult out;
    out.value = fine;
    out.error_estimate = (fine - coarse).norm() + 1e-15 * field.field_scale();
    out.spec_echo = spec;
    return out;
}

double h2_assemble(const Vec2& p, const Vec2& x, const ChargeFluxConfig& cfg,
                   const QuadratureSpec& spec, const UnitSystem& units) {
    const EffectiveFieldResult a = effective_a(x, cfg, spec, units);
    return -(cfg.e / (cfg.m * units.c)) * p.dot(a.value);
}

double h2_direct_sum(const Vec2& p, const Vec2& x, const ChargeFluxConfig& cfg,
                     const QuadratureSpec& spec, const UnitSystem& units, double t) {
    units.validate();
    cfg.validate();
    spec.validate();
    const double r = x.norm();
    if (r < spec.r_min) throw DomainError("h2_direct_sum: separation below r_min");

    const Vec2 x_b = cfg.x_b;
    const Vec2 x_a = x_b + x;
    const double hbar = units.hbar;
    const GaussRule& rule = gauss_legendre(spec.panel_points);

    // I(eps) = int dk [angular lambda-sum]/(2pi)^2 e^{-eps k}, literal
    // per-mode me_va me_vb products over both Hermitian orderings; then the
    // same Richardson extrapolation as the factored route.
    std::vector<double> epsilons, values;
    for (double eor : spec.epsilon_over_r) {
        const double eps = eor * r;
        const double k_stop = (std::log(1.0 / spec.tail_tol) + 5.0) / eps;
        const double panel = kPi / r;
        const int n_panels = std::max(4, static_cast<int>(std::ceil(k_stop / panel)));
        CompensatedSum acc;
        for (int pidx = 0; pidx < n_panels; ++pidx) {
            const double mid = (pidx + 0.5) * panel;
            const double hw = 0.5 * panel;
            for (int g = 0; g < spec.panel_points; ++g) {
                const double k = mid + hw * rule.nodes[g];
                // angular node count adapted to the plane-wave bandwidth kr
                int na = std::max(64, static_cast<int>(std::ceil(1.15 * k * r + 40.0)));
                if (na % 2 != 0) ++na;
                CompensatedSum ang;
                for (int j = 0; j < na; ++j) {
                    const double ph = kTwoPi * j / na;
                    const Vec2 kv{k * std::cos(ph), k * std::sin(ph)};
                    Complex pair{0.0, 0.0};
                    for (Polarization lam :
                         {Polarization::InPlaneTransverse, Polarization::OutOfPlaneTransverse}) {
                        const PhotonMode mode(kv, lam, units);
                        const Complex prod = me_va(mode, p, x_a, cfg, units, t).amplitude *
                                             me_vb(mode, x_b, cfg, units, t).amplitude;
                        pair += prod + std::conj(prod);  // both orderings
                    }
                    ang.add(pair.real() / (-hbar * units.c * k));
                }
                const double angular = ang.value() * (kTwoPi / na);
                acc.add(hw * rule.weights[g] * k * angular * std::exp(-eps * k));
            }
        }
        epsilons.push_back(eps);
        values.push_back(acc.value() / (kTwoPi * kTwoPi));
    }
    Extrapolation ex = extrapolate_to_zero(epsilons, values);
    return ex.value;
}

ScalarKernelResult coulomb_kernel(double r, const QuadratureSpec& spec) {
    if (!(r > 0.0)) throw DomainError("coulomb_kernel: r must be positive");
    // Indefinite-metric (negative-norm) scalar-mode sign applied: the raw
    // -hbar omega denominator would make like charges attract; the flip
    // restores the repulsive 1/r.
    const RadialResult radial = regulated_radial(RadialKernel::OneOverK2_3d, r, spec);
    return {(2.0 / kPi) * radial.value, (2.0 / kPi) * radial.error_estimate};
}

CoulombComparison coulomb_gauge_comparison(double r, const QuadratureSpec& spec) {
    const ScalarKernelResult lorenz = coulomb_kernel(r, spec);
    CoulombComparison out;
    out.lorenz_mode_kernel = lorenz.value;
    out.coulomb_gauge_kernel = 0.0;  // scalar modes absent in the Coulomb gauge
    out.error_estimate = lorenz.error_estimate;
    return out;
}

double coulomb_energy(const ChargeDistribution& rho, const Vec3& probe, double e,
                      const QuadratureSpec& spec) {
    CompensatedSum acc;
    for (const auto& [q, pos] : rho.point_charges) {
        const double r = (probe - pos).norm();
        if (!(r > 0.0)) throw DomainError("coulomb_energy: charge coincides with the probe");
        acc.add(e * q * coulomb_kernel(r, spec).value);
    }
    return acc.value();
}

}  // namespace abqed
