#pragma once

#include <functional>
#include <vector>

#include "abqed/effective.hpp"
#include "abqed/model.hpp"
#include "abqed/modes.hpp"

namespace abqed {

using VectorField = std::function<Vec2(const Vec2&)>;

struct PhaseResult {
    double phase = 0.0;
    double error_estimate = 0.0;
};

// Adaptive per-segment Gauss-Legendre line integral of `field` along `path`.
PhaseResult line_integral(const VectorField& field, const PathGeometry& path,
                          double tol = 1e-12);

// (charge / hbar c) * int_path field . dx
PhaseResult phase_along_path(const VectorField& field, const PathGeometry& path,
                             double charge, const UnitSystem& units = {},
                             double tol = 1e-12);

// The azimuthal field Phi theta_hat / (2 pi |x - fluxon|).
Vec2 analytic_a(const Vec2& x, const Vec2& fluxon, double phi);

// Semiclassical vector potential with its nonlocal constraint
// (loop integral = Phi for unit winding) and residual gauge freedom grad chi.
struct SemiclassicalField {
    Vec2 fluxon{0.0, 0.0};
    double phi = kTwoPi;
    std::vector<ChiPrimitive> chi;  // applied when gauged = true
    bool gauged = false;
    double r_min = 1e-3;

    Vec2 eval(const Vec2& x) const;
    double chi_eval(const Vec2& x) const;
};

// Andreev interferometer: two superconducting contacts, a normal electrode,
// and the readout path C running s1 -> n -> s2.
struct InterferometerGeometry {
    Vec2 s1, s2, n, fluxon;
    PathGeometry path_c;

    static InterferometerGeometry make(const Vec2& s1, const Vec2& s2, const Vec2& n,
                                       const Vec2& fluxon, double refinement = 0.25);
    void validate(double r_min) const;
};

struct AndreevResult {
    double delta_theta = 0.0;       // unwrapped fluxon-relative angle along C
    double phi_loc = 0.0;           // e* Phi delta_theta / (2 pi hbar c)
    double phi_loc_numeric = 0.0;   // path integral over numeric effective_a
    double error_estimate = 0.0;
};

AndreevResult andreev_local_phase(const InterferometerGeometry& geom,
                                  const ChargeFluxConfig& cfg,
                                  const QuadratureSpec& spec,
                                  const UnitSystem& units = {});

// cos fringe, plot emission only
double interference_signal(double phi_loc, double phi0);

struct GaugeShiftResult {
    double phase_base = 0.0;
    double phase_gauged = 0.0;
    double difference = 0.0;
    double predicted_difference = 0.0;  // (charge/hbar c)(chi(end) - chi(start))
};

// Path phase of the semiclassical field with and without grad chi.  For open
// paths the difference is the endpoint formula; for closed paths it vanishes.
GaugeShiftResult semiclassical_gauge_shift(const SemiclassicalField& field,
                                           const PathGeometry& path, double charge,
                                           const UnitSystem& units = {},
                                           double tol = 1e-12);

// The QED-vs-semiclassical contrast for one geometry: open-path phi_loc under
// several QED gauge families (agreeing where delta_a vanishes), open-path
// semiclassical phases under several chi (disagreeing by the endpoint
// formula), and closed-loop phases for both (all equal to winding * e*Phi/hbar c).
struct CompareReport {
    double delta_theta = 0.0;
    double phi_loc_reference = 0.0;  // (e* Phi / 2 pi hbar c) * delta_theta

    struct QedRow {
        GaugeSpec gauge;
        double phi_loc = 0.0;
        double delta_a_open = 0.0;   // open-path phase contribution of delta_a
        double closed_loop_residual = 0.0;
        double error_estimate = 0.0;
    };
    struct SemiclassicalRow {
        std::vector<ChiPrimitive> chi;
        double phi_loc = 0.0;
        double difference = 0.0;
        double predicted_difference = 0.0;
    };

    std::vector<QedRow> qed;
    std::vector<SemiclassicalRow> semiclassical;
    double closed_loop_phase = 0.0;       // analytic a, unit winding loop
    double semiclassical_spread = 0.0;    // max open-path deviation over chi set
};

CompareReport qed_vs_semiclassical_report(const InterferometerGeometry& geom,
                                          const std::vector<GaugeSpec>& gauges,
                                          const ChargeFluxConfig& cfg,
                                          const QuadratureSpec& spec,
                                          const UnitSystem& units = {});

}  // namespace abqed
