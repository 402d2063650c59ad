#pragma once

#include <functional>
#include <vector>

#include "abqed/model.hpp"
#include "abqed/vec.hpp"

namespace abqed {

enum class Polarization {
    InPlaneTransverse,    // e_hat = phi_hat(k), n_hat = z_hat
    OutOfPlaneTransverse, // e_hat = z_hat,      n_hat = k_hat x z_hat
    Longitudinal,         // e_hat = k_hat,      n_hat = 0
    Scalar,               // A^0 component; no spatial polarization
};

// azimuthal unit vector of k (z_hat x k_hat)
Vec2 phi_hat(const Vec2& k);

// Plane-wave photon mode.  The 2D problem is embedded in 3D vectors so that
// cross products and z_hat . n_hat are literal.  Construction checks the
// Coulomb-gauge constraint k . e_hat = 0 and n_hat = k_hat x e_hat.
struct PhotonMode {
    Vec2 k;
    Polarization lambda = Polarization::InPlaneTransverse;

    // derived at construction
    double k_norm = 0.0;
    double omega = 0.0;    // c |k|
    double alpha = 0.0;    // sqrt(2 pi hbar c^2 / omega)
    Vec3 e_hat;
    Vec3 n_hat;

    PhotonMode(const Vec2& k_, Polarization lambda_, const UnitSystem& units = {});
    bool transverse() const {
        return lambda == Polarization::InPlaneTransverse ||
               lambda == Polarization::OutOfPlaneTransverse;
    }
};

// Coefficients of the annihilation and creation operators in a mode
// expansion, at a given (x, t).  Box normalization volume V is carried
// symbolically with the convention V = 1; the continuum factor 1/(2pi)^2
// per d^2k is applied by the mode-sum engine, never here.
struct ModeAmplitude {
    CVec3 annihilation;
    CVec3 creation;
};

// Vector potential coefficients: alpha_k u_k(x) e^{-i omega t} e_hat and the
// conjugate creation part.  Scalar label is a contract violation.
ModeAmplitude mode_A(const PhotonMode& mode, const Vec2& x, double t);

// Magnetic field coefficients i k alpha_k u_k(x) e^{-i omega t} n_hat with
// the relative minus sign on the creation part; equals the curl of mode_A.
ModeAmplitude mode_B(const PhotonMode& mode, const Vec2& x, double t);

// Single-valued scalar-field primitives for the semiclassical gauge freedom
// chi(x).  Never a multivalued angle function.
struct ChiPrimitive {
    enum class Kind { Polynomial, GaussianBump, AzimuthalHarmonic };
    Kind kind = Kind::Polynomial;
    double amplitude = 0.0;
    // Polynomial: amplitude * x^px * y^py
    int px = 1, py = 1;
    // GaussianBump: amplitude * exp(-|x-center|^2 / (2 sigma^2))
    Vec2 center{0.0, 0.0};
    double sigma = 1.0;
    // AzimuthalHarmonic: amplitude * r^m cos(m theta) about `center`
    // (harmonic polynomial, single-valued for integer m >= 1)
    int m = 1;

    double eval(const Vec2& x) const;
    Vec2 grad(const Vec2& x) const;
};

// Family of gauge-mode coefficients gamma(k) of the quantized gauge function,
// with a decaying radial envelope so every gauge-variation integral is
// absolutely convergent, plus an optional semiclassical chi(x).
struct GaugeSpec {
    enum class Family { RealIsotropic, ComplexIsotropic, Anisotropic };
    Family family = Family::RealIsotropic;
    double amplitude = 1.0;       // g
    double amplitude_imag = 0.0;  // g' (complex families)
    double k0 = 1.0;              // envelope width: gamma ~ e^{-k/k0}
    int harmonic = 0;             // angular index n for cos(n phi_k)
    std::vector<ChiPrimitive> chi;

    void validate() const;
    Complex gamma(const Vec2& k) const;
    Complex gamma_radial(double k_norm) const;  // envelope part (g+ig')e^{-k/k0}
    double chi_eval(const Vec2& x) const;
    Vec2 chi_grad(const Vec2& x) const;

    static const char* family_name(Family f);
};

// Gradient of the quantized gauge function for wavevector k: purely
// longitudinal, i k gamma_k u_k(x) e^{-i omega t} k_hat and the conjugate
// creation part with the opposite sign of i.
ModeAmplitude grad_lambda(const Vec2& k, const GaugeSpec& gauge, const Vec2& x,
                          double t, const UnitSystem& units = {});

// Sum over the two transverse polarizations of (e_lambda . p)(z_hat . n_lambda);
// equals phi_hat(k) . p identically in the Coulomb gauge.
double polarization_identity_sum(const Vec2& k_hat, const Vec2& p);

// Line-vs-surface certification of the current-loop form of the fluxon
// coupling.  The loop polygon must be star-shaped about its vertex centroid.
struct StokesReport {
    double line_integral = 0.0;
    double surface_integral = 0.0;
    double rel_error = 0.0;
};

// Generic check for a real planar vector field with known analytic curl
// (z component).  `step` bounds both the sub-segment length of the midpoint
// line rule and the cell size of the centroid surface rule (both O(step^2)).
StokesReport stokes_check(const std::function<Vec3(Vec2)>& field,
                          const std::function<double(Vec2)>& curl_z,
                          const CurrentLoop& loop, double step,
                          double scale_hint = 0.0);

// Real part of the annihilation coefficient of mode_A against the analytic
// curl from mode_B.
StokesReport stokes_check(const PhotonMode& mode, const CurrentLoop& loop,
                          double step, double t = 0.0);

// grad_lambda field: curl is identically zero, so the certified statement is
// that the closed-loop line integral vanishes.
StokesReport stokes_check_grad_lambda(const Vec2& k, const GaugeSpec& gauge,
                                      const CurrentLoop& loop, double step,
                                      double t = 0.0,
                                      const UnitSystem& units = {});

}  // namespace abqed
