#include "abqed/modes.hpp"

#include <cmath>

#include "abqed/quadrature.hpp"

namespace abqed {

Vec2 phi_hat(const Vec2& k) {
    if (k.norm2() == 0.0) throw DomainError("phi_hat: zero wavevector");
    return k.azimuthal();
}

PhotonMode::PhotonMode(const Vec2& k_, Polarization lambda_, const UnitSystem& units)
    : k(k_), lambda(lambda_) {
    units.validate();
    k_norm = k.norm();
    if (!(k_norm > 0.0)) throw DomainError("PhotonMode: zero wavevector");
    omega = units.c * k_norm;
    alpha = std::sqrt(kTwoPi * units.hbar * units.c * units.c / omega);

    const Vec3 k_hat(k.normalized());
    switch (lambda) {
        case Polarization::InPlaneTransverse:
            e_hat = Vec3(phi_hat(k));
            break;
        case Polarization::OutOfPlaneTransverse:
            e_hat = z_hat();
            break;
        case Polarization::Longitudinal:
            e_hat = k_hat;
            break;
        case Polarization::Scalar:
            e_hat = {0.0, 0.0, 0.0};
            break;
    }
    n_hat = (lambda == Polarization::Scalar) ? Vec3{0.0, 0.0, 0.0} : k_hat.cross(e_hat);

    // Coulomb-gauge constraint, exact by construction
    if (transverse() && std::abs(e_hat.dot(k_hat)) > 1e-15)
        throw DomainError("PhotonMode: transverse polarization not orthogonal to k");
}

namespace {

Complex u_k(const Vec2& k, const Vec2& x) {
    return std::polar(1.0, k.dot(x));  // box volume carried symbolically, V = 1
}

}  // namespace

ModeAmplitude mode_A(const PhotonMode& mode, const Vec2& x, double t) {
    if (mode.lambda == Polarization::Scalar)
        throw DomainError("mode_A: scalar label has no spatial vector potential");
    const Complex ann = mode.alpha * u_k(mode.k, x) * std::polar(1.0, -mode.omega * t);
    return {CVec3(mode.e_hat, ann), CVec3(mode.e_hat, std::conj(ann))};
}

ModeAmplitude mode_B(const PhotonMode& mode, const Vec2& x, double t) {
    if (mode.lambda == Polarization::Scalar)
        throw DomainError("mode_B: scalar label has no magnetic field");
    const Complex i{0.0, 1.0};
    const Complex ann = i * mode.k_norm * mode.alpha * u_k(mode.k, x) *
                        std::polar(1.0, -mode.omega * t);
    // relative minus sign on the creation part
    return {CVec3(mode.n_hat, ann), CVec3(mode.n_hat, std::conj(ann))};
}

double ChiPrimitive::eval(const Vec2& x) const {
    switch (kind) {
        case Kind::Polynomial: {
            return amplitude * std::pow(x.x, px) * std::pow(x.y, py);
        }
        case Kind::GaussianBump: {
            const Vec2 d = x - center;
            return amplitude * std::exp(-d.norm2() / (2.0 * sigma * sigma));
        }
        case Kind::AzimuthalHarmonic: {
            const Vec2 d = x - center;
            const double r = d.norm();
            if (r == 0.0) return 0.0;
            return amplitude * std::pow(r, m) * std::cos(m * std::atan2(d.y, d.x));
        }
    }
    return 0.0;
}

Vec2 ChiPrimitive::grad(const Vec2& x) const {
    switch (kind) {
        case Kind::Polynomial: {
            const double gx = px > 0 ? amplitude * px * std::pow(x.x, px - 1) * std::pow(x.y, py) : 0.0;
            const double gy = py > 0 ? amplitude * py * std::pow(x.x, px) * std::pow(x.y, py - 1) : 0.0;
            return {gx, gy};
        }
        case Kind::GaussianBump: {
            const Vec2 d = x - center;
            const double s2 = sigma * sigma;
            return d * (-eval(x) / s2);
        }
        case Kind::AzimuthalHarmonic: {
            // grad(r^m cos(m theta)) = m r^{m-1} (cos((m-1)theta), -sin((m-1)theta))
            const Vec2 d = x - center;
            const double r = d.norm();
            if (r == 0.0 && m > 1) return {0.0, 0.0};
            const double th = std::atan2(d.y, d.x);
            const double f = amplitude * m * std::pow(r, m - 1);
            return {f * std::cos((m - 1) * th), -f * std::sin((m - 1) * th)};
        }
    }
    return {0.0, 0.0};
}

void GaugeSpec::validate() const {
    if (!(k0 > 0.0)) throw ConfigError("GaugeSpec: envelope width k0 must be positive");
    if (harmonic < 0) throw ConfigError("GaugeSpec: harmonic index must be nonnegative");
    switch (family) {
        case Family::RealIsotropic:
            if (amplitude_imag != 0.0)
                throw ConfigError("GaugeSpec: real-isotropic family must have zero imaginary amplitude");
            if (harmonic != 0)
                throw ConfigError("GaugeSpec: isotropic family must have harmonic 0");
            break;
        case Family::ComplexIsotropic:
            if (harmonic != 0)
                throw ConfigError("GaugeSpec: isotropic family must have harmonic 0");
            break;
        case Family::Anisotropic:
            if (harmonic < 1)
                throw ConfigError("GaugeSpec: anisotropic family needs harmonic >= 1");
            break;
    }
    for (const auto& c : chi) {
        if (c.kind == ChiPrimitive::Kind::GaussianBump && !(c.sigma > 0.0))
            throw ConfigError("GaugeSpec: Gaussian chi primitive needs sigma > 0");
        if (c.kind == ChiPrimitive::Kind::AzimuthalHarmonic && c.m < 1)
            throw ConfigError("GaugeSpec: azimuthal-harmonic chi primitive needs m >= 1");
        if (c.kind == ChiPrimitive::Kind::Polynomial && (c.px < 0 || c.py < 0))
            throw ConfigError("GaugeSpec: polynomial chi primitive needs nonnegative powers");
    }
}

Complex GaugeSpec::gamma_radial(double k_norm) const {
    return Complex{amplitude, amplitude_imag} * std::exp(-k_norm / k0);
}

Complex GaugeSpec::gamma(const Vec2& k) const {
    Complex g = gamma_radial(k.norm());
    if (family == Family::Anisotropic)
        g *= std::cos(harmonic * std::atan2(k.y, k.x));
    return g;
}

double GaugeSpec::chi_eval(const Vec2& x) const {
    double v = 0.0;
    for (const auto& c : chi) v += c.eval(x);
    return v;
}

Vec2 GaugeSpec::chi_grad(const Vec2& x) const {
    Vec2 g;
    for (const auto& c : chi) g += c.grad(x);
    return g;
}

const char* GaugeSpec::family_name(Family f) {
    switch (f) {
        case Family::RealIsotropic: return "real-isotropic";
        case Family::ComplexIsotropic: return "complex-isotropic";
        case Family::Anisotropic: return "anisotropic";
    }
    return "?";
}

ModeAmplitude grad_lambda(const Vec2& k, const GaugeSpec& gauge, const Vec2& x,
                          double t, const UnitSystem& units) {
    const double k_norm = k.norm();
    if (!(k_norm > 0.0)) throw DomainError("grad_lambda: zero wavevector");
    const double omega = units.c * k_norm;
    const Vec3 k_hat(k.normalized());
    const Complex i{0.0, 1.0};
    const Complex ann = i * k_norm * gauge.gamma(k) * u_k(k, x) * std::polar(1.0, -omega * t);
    // creation part is the conjugate: -i k gamma* u* e^{+i omega t}
    return {CVec3(k_hat, ann), CVec3(k_hat, std::conj(ann))};
}

double polarization_identity_sum(const Vec2& k_hat, const Vec2& p) {
    if (k_hat.norm2() == 0.0) throw DomainError("polarization_identity_sum: zero wavevector");
    double sum = 0.0;
    for (Polarization lam : {Polarization::InPlaneTransverse, Polarization::OutOfPlaneTransverse}) {
        const PhotonMode mode(k_hat, lam);
        sum += mode.e_hat.xy().dot(p) * z_hat().dot(mode.n_hat);
    }
    return sum;
}

namespace {

double fan_surface_integral(const std::function<double(Vec2)>& curl_z,
                            const std::vector<Vec2>& poly, const Vec2& centroid,
                            double step) {
    CompensatedSum acc;
    for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
        const Vec2 A = centroid, B = poly[s], C = poly[s + 1];
        const double area = 0.5 * (B - A).cross(C - A);  // signed
        if (area == 0.0) continue;
        const double diam = std::max({(B - A).norm(), (C - A).norm(), (C - B).norm()});
        const int n = std::max(1, static_cast<int>(std::ceil(diam / step)));
        const double sub_area = area / (n * n);
        const Vec2 eb = (B - A) / n, ec = (C - A) / n;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n - i; ++j) {
                // upward lattice triangle centroid
                Vec2 cen = A + eb * (i + 1.0 / 3.0) + ec * (j + 1.0 / 3.0);
                acc.add(curl_z(cen) * sub_area);
                if (j < n - 1 - i) {
                    // companion downward triangle
                    cen = A + eb * (i + 2.0 / 3.0) + ec * (j + 2.0 / 3.0);
                    acc.add(curl_z(cen) * sub_area);
                }
            }
        }
    }
    return acc.value();
}

}  // namespace

StokesReport stokes_check(const std::function<Vec3(Vec2)>& field,
                          const std::function<double(Vec2)>& curl_z,
                          const CurrentLoop& loop, double step, double scale_hint) {
    loop.validate();
    if (!(step > 0.0)) throw ConfigError("stokes_check: step must be positive");
    const std::vector<Vec2>& poly = loop.loop.vertices;

    // midpoint rule per sub-segment (second order in step)
    CompensatedSum line;
    for (std::size_t s = 0; s + 1 < poly.size(); ++s) {
        const Vec2 a = poly[s], b = poly[s + 1];
        const double len = (b - a).norm();
        const int n = std::max(1, static_cast<int>(std::ceil(len / step)));
        const Vec2 dx = (b - a) / n;
        for (int i = 0; i < n; ++i) {
            const Vec2 mid = a + dx * (i + 0.5);
            line.add(field(mid).xy().dot(dx));
        }
    }

    Vec2 centroid;
    for (std::size_t s = 0; s + 1 < poly.size(); ++s) centroid += poly[s];
    centroid = centroid / static_cast<double>(poly.size() - 1);
    const double surface = fan_surface_integral(curl_z, poly, centroid, step);

    StokesReport rep;
    rep.line_integral = line.value();
    rep.surface_integral = surface;
    const double denom = std::max({std::abs(rep.line_integral), std::abs(rep.surface_integral),
                                   scale_hint, 1e-300});
    rep.rel_error = std::abs(rep.line_integral - rep.surface_integral) / denom;
    return rep;
}

StokesReport stokes_check(const PhotonMode& mode, const CurrentLoop& loop, double step,
                          double t) {
    auto field = [&](Vec2 x) { return mode_A(mode, x, t).annihilation.real(); };
    auto curl = [&](Vec2 x) { return z_hat().dot(mode_B(mode, x, t).annihilation.real()); };
    // natural magnitude of the surface term: curl amplitude x loop area
    double area = 0.0;
    const auto& poly = loop.loop.vertices;
    for (std::size_t s = 0; s + 1 < poly.size(); ++s)
        area += 0.5 * poly[s].cross(poly[s + 1]);
    const double scale = 0.1 * mode.k_norm * mode.alpha * std::abs(area);
    return stokes_check(field, curl, loop, step, scale);
}

StokesReport stokes_check_grad_lambda(const Vec2& k, const GaugeSpec& gauge,
                                      const CurrentLoop& loop, double step, double t,
                                      const UnitSystem& units) {
    auto field = [&](Vec2 x) { return grad_lambda(k, gauge, x, t, units).annihilation.real(); };
    auto curl = [](Vec2) { return 0.0; };  // curl grad = 0
    const double scale =
        0.1 * k.norm() * k.norm() * std::abs(gauge.gamma_radial(k.norm())) * loop.loop.length();
    return stokes_check(field, curl, loop, step, scale);
}

}  // namespace abqed
