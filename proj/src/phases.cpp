#include "abqed/phases.hpp"

#include <cmath>

namespace abqed {

namespace {

struct SegmentIntegrand {
    const VectorField& field;
    Vec2 a;
    Vec2 dir;  // b - a
    double operator()(double s) const { return field(a + dir * s).dot(dir); }
};

double gauss_on(const SegmentIntegrand& f, double s0, double s1) {
    const GaussRule& rule = gauss_legendre(16);
    const double mid = 0.5 * (s0 + s1), hw = 0.5 * (s1 - s0);
    CompensatedSum acc;
    for (int i = 0; i < 16; ++i) acc.add(hw * rule.weights[i] * f(mid + hw * rule.nodes[i]));
    return acc.value();
}

void adaptive(const SegmentIntegrand& f, double s0, double s1, double whole, double tol,
              int depth, double& value, double& err) {
    const double mid = 0.5 * (s0 + s1);
    const double left = gauss_on(f, s0, mid);
    const double right = gauss_on(f, mid, s1);
    const double diff = std::abs(left + right - whole);
    if (diff < tol || depth >= 30) {
        if (depth >= 30 && diff >= tol)
            throw AccuracyError("line_integral: adaptive refinement stalled", left + right, diff);
        value += left + right;
        err += diff;
        return;
    }
    adaptive(f, s0, mid, left, 0.5 * tol, depth + 1, value, err);
    adaptive(f, mid, s1, right, 0.5 * tol, depth + 1, value, err);
}

}  // namespace

PhaseResult line_integral(const VectorField& field, const PathGeometry& path, double tol) {
    if (path.vertices.size() < 2) throw ConfigError("line_integral: degenerate path");
    const double total_len = path.length();
    double value = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        const Vec2 a = path.vertices[i], b = path.vertices[i + 1];
        const double len = (b - a).norm();
        if (len == 0.0) continue;
        SegmentIntegrand f{field, a, b - a};
        const double seg_tol = tol * std::max(len / total_len, 1e-3);
        adaptive(f, 0.0, 1.0, gauss_on(f, 0.0, 1.0), seg_tol, 0, value, err);
    }
    return {value, err};
}

PhaseResult phase_along_path(const VectorField& field, const PathGeometry& path,
                             double charge, const UnitSystem& units, double tol) {
    units.validate();
    const double scale = charge / (units.hbar * units.c);
    PhaseResult li = line_integral(field, path, tol / std::max(std::abs(scale), 1e-300));
    return {scale * li.phase, std::abs(scale) * li.error_estimate};
}

Vec2 analytic_a(const Vec2& x, const Vec2& fluxon, double phi) {
    const Vec2 d = x - fluxon;
    const double r = d.norm();
    if (r < 1e-9) throw DomainError("analytic_a: evaluation at the fluxon");
    return (phi / (kTwoPi * r)) * d.azimuthal();
}

Vec2 SemiclassicalField::eval(const Vec2& x) const {
    const Vec2 d = x - fluxon;
    if (d.norm() < r_min) throw DomainError("SemiclassicalField: evaluation at the fluxon");
    Vec2 v = (phi / (kTwoPi * d.norm())) * d.azimuthal();
    if (gauged)
        for (const auto& c : chi) v += c.grad(x);
    return v;
}

double SemiclassicalField::chi_eval(const Vec2& x) const {
    double s = 0.0;
    for (const auto& c : chi) s += c.eval(x);
    return s;
}

InterferometerGeometry InterferometerGeometry::make(const Vec2& s1, const Vec2& s2,
                                                    const Vec2& n, const Vec2& fluxon,
                                                    double refinement) {
    InterferometerGeometry g;
    g.s1 = s1;
    g.s2 = s2;
    g.n = n;
    g.fluxon = fluxon;
    g.path_c = PathGeometry::open_path({s1, n, s2}, refinement);
    return g;
}

void InterferometerGeometry::validate(double r_min) const {
    if (path_c.min_distance_to(fluxon) <= r_min)
        throw DomainError("InterferometerGeometry: fluxon lies on (or too close to) path C");
}

AndreevResult andreev_local_phase(const InterferometerGeometry& geom,
                                  const ChargeFluxConfig& cfg, const QuadratureSpec& spec,
                                  const UnitSystem& units) {
    geom.validate(spec.r_min);
    AndreevResult out;
    out.delta_theta = subtended_angle(geom.path_c, geom.fluxon);
    out.phi_loc = cfg.e_star * cfg.phi * out.delta_theta / (kTwoPi * units.hbar * units.c);

    const EffectiveFieldResult probe = effective_a({1.0, 0.0}, cfg, spec, units);
    VectorField numeric = [&](const Vec2& x) {
        return effective_a(x - geom.fluxon, cfg, spec, units).value;
    };
    PhaseResult ph = phase_along_path(numeric, geom.path_c, cfg.e_star, units, 1e-12);
    out.phi_loc_numeric = ph.phase;
    // field error is a pure scale factor on the memoized radial integral
    const double field_rel = probe.error_estimate / std::max(probe.value.norm(), 1e-300);
    out.error_estimate = ph.error_estimate + field_rel * std::abs(ph.phase);
    return out;
}

double interference_signal(double phi_loc, double phi0) { return std::cos(phi0 + phi_loc); }

GaugeShiftResult semiclassical_gauge_shift(const SemiclassicalField& field,
                                           const PathGeometry& path, double charge,
                                           const UnitSystem& units, double tol) {
    SemiclassicalField base = field;
    base.gauged = false;
    SemiclassicalField gauged = field;
    gauged.gauged = true;

    GaugeShiftResult out;
    out.phase_base =
        phase_along_path([&](const Vec2& x) { return base.eval(x); }, path, charge, units, tol).phase;
    out.phase_gauged =
        phase_along_path([&](const Vec2& x) { return gauged.eval(x); }, path, charge, units, tol).phase;
    out.difference = out.phase_gauged - out.phase_base;
    const double scale = charge / (units.hbar * units.c);
    out.predicted_difference =
        path.closed ? 0.0
                    : scale * (field.chi_eval(path.vertices.back()) -
                               field.chi_eval(path.vertices.front()));
    return out;
}

namespace {

PathGeometry circle_loop(const Vec2& center, double radius, int n = 48) {
    std::vector<Vec2> v;
    v.reserve(n + 1);
    for (int i = 0; i < n; ++i) {
        const double th = kTwoPi * i / n;
        v.push_back(center + Vec2{radius * std::cos(th), radius * std::sin(th)});
    }
    return PathGeometry::loop(std::move(v));
}

}  // namespace

CompareReport qed_vs_semiclassical_report(const InterferometerGeometry& geom,
                                          const std::vector<GaugeSpec>& gauges,
                                          const ChargeFluxConfig& cfg,
                                          const QuadratureSpec& spec,
                                          const UnitSystem& units) {
    geom.validate(spec.r_min);
    CompareReport rep;
    rep.delta_theta = subtended_angle(geom.path_c, geom.fluxon);
    const double hbar_c = units.hbar * units.c;
    rep.phi_loc_reference = cfg.e_star * cfg.phi * rep.delta_theta / (kTwoPi * hbar_c);

    // reference loop around the fluxon, clear of the singularity guard
    double loop_r = 0.5 * std::max({(geom.s1 - geom.fluxon).norm(),
                                    (geom.s2 - geom.fluxon).norm(), 10.0 * spec.r_min});
    const PathGeometry loop = circle_loop(geom.fluxon, loop_r);
    VectorField base_field = [&](const Vec2& x) { return analytic_a(x, geom.fluxon, cfg.phi); };
    rep.closed_loop_phase = phase_along_path(base_field, loop, cfg.e_star, units, 1e-11).phase;

    double r_max = loop_r;
    for (const Vec2& v : geom.path_c.vertices)
        r_max = std::max(r_max, (v - geom.fluxon).norm());

    for (const GaugeSpec& gauge : gauges) {
        DeltaAField dfield(gauge, cfg, spec, units, 1.25 * r_max);
        VectorField shifted = [&](const Vec2& x) {
            return effective_a(x - geom.fluxon, cfg, spec, units).value +
                   dfield.eval(x - geom.fluxon);
        };
        CompareReport::QedRow row;
        row.gauge = gauge;
        PhaseResult open_phase = phase_along_path(shifted, geom.path_c, cfg.e_star, units, 1e-10);
        row.phi_loc = open_phase.phase;
        row.delta_a_open =
            phase_along_path([&](const Vec2& x) { return dfield.eval(x - geom.fluxon); },
                             geom.path_c, cfg.e_star, units, 1e-10)
                .phase;
        row.closed_loop_residual =
            std::abs(phase_along_path([&](const Vec2& x) { return dfield.eval(x - geom.fluxon); },
                                      loop, cfg.e_star, units, 1e-10)
                         .phase);
        row.error_estimate = open_phase.error_estimate;
        rep.qed.push_back(std::move(row));
    }

    // canonical chi set for the semiclassical contrast
    std::vector<std::vector<ChiPrimitive>> chi_sets;
    chi_sets.push_back({});  // ungauged baseline
    {
        ChiPrimitive poly;
        poly.kind = ChiPrimitive::Kind::Polynomial;
        poly.amplitude = 0.3;
        poly.px = 1;
        poly.py = 1;
        chi_sets.push_back({poly});
    }
    {
        ChiPrimitive bump;
        bump.kind = ChiPrimitive::Kind::GaussianBump;
        bump.amplitude = 0.7;
        bump.center = geom.s2;
        bump.sigma = 0.8;
        chi_sets.push_back({bump});
    }
    {
        ChiPrimitive harm;
        harm.kind = ChiPrimitive::Kind::AzimuthalHarmonic;
        harm.amplitude = 0.2;
        harm.center = geom.fluxon + Vec2{0.1, -0.2};
        harm.m = 2;
        chi_sets.push_back({harm});
    }

    for (const auto& chi : chi_sets) {
        SemiclassicalField sf;
        sf.fluxon = geom.fluxon;
        sf.phi = cfg.phi;
        sf.chi = chi;
        sf.r_min = spec.r_min;
        GaugeShiftResult shift =
            semiclassical_gauge_shift(sf, geom.path_c, cfg.e_star, units, 1e-11);
        CompareReport::SemiclassicalRow row;
        row.chi = chi;
        row.phi_loc = shift.phase_gauged;
        row.difference = shift.difference;
        row.predicted_difference = shift.predicted_difference;
        rep.semiclassical_spread = std::max(rep.semiclassical_spread, std::abs(shift.difference));
        rep.semiclassical.push_back(std::move(row));
    }
    return rep;
}

}  // namespace abqed
