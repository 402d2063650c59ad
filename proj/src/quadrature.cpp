#include "abqed/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "abqed/model.hpp"

namespace abqed {

void QuadratureSpec::validate() const {
    if (epsilon_over_r.empty())
        throw ConfigError("QuadratureSpec: epsilon schedule must not be empty");
    double prev = 1e300;
    for (double e : epsilon_over_r) {
        if (!(e > 0.0) || e >= prev)
            throw ConfigError("QuadratureSpec: epsilon schedule must be strictly decreasing and positive");
        prev = e;
    }
    if (n_angular < 64 || n_angular % 2 != 0)
        throw ConfigError("QuadratureSpec: n_angular must be even and >= 64");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || !(tail_tol > 0.0))
        throw ConfigError("QuadratureSpec: tolerances must be positive");
    if (panel_points != 8 && panel_points != 16)
        throw ConfigError("QuadratureSpec: panel_points must be 8 or 16");
    if (!(r_min > 0.0)) throw ConfigError("QuadratureSpec: r_min must be positive");
    if (!(k_max_over_k0 > 0.0)) throw ConfigError("QuadratureSpec: k_max_over_k0 must be positive");
}

QuadratureSpec QuadratureSpec::refined() const {
    QuadratureSpec out = *this;
    out.abs_tol *= 0.5;
    out.rel_tol *= 0.5;
    out.epsilon_over_r.push_back(epsilon_over_r.back() * 0.5);
    out.n_angular *= 2;
    out.tail_tol *= 0.1;
    return out;
}

const GaussRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 2 || n > 64) throw ConfigError("gauss_legendre: unsupported node count");

    // Newton iteration on P_n from the Chebyshev-based initial guess.
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

Extrapolation extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n) throw ConfigError("extrapolate_to_zero: empty or mismatched samples");
    std::vector<double> t(y.begin(), y.end());
    double last = t[0];
    double correction = 0.0;
    // Neville tableau evaluated at 0
    for (std::size_t m = 1; m < n; ++m) {
        for (std::size_t i = 0; i + m < n; ++i) {
            t[i] = ((0.0 - x[i + m]) * t[i] + (x[i] - 0.0) * t[i + 1]) / (x[i] - x[i + m]);
        }
        correction = std::abs(t[0] - last);
        last = t[0];
    }
    return {t[0], n > 1 ? correction : std::abs(t[0])};
}

double enveloped_integral(const std::function<double(double)>& g, double beta,
                          double panel, int panel_points, double tail_tol,
                          double tail_amplitude) {
    if (!(beta > 0.0) || !(panel > 0.0))
        throw ConfigError("enveloped_integral: beta and panel length must be positive");
    const GaussRule& rule = gauss_legendre(panel_points);
    const double q_stop = (std::log(std::max(tail_amplitude, 1.0) / tail_tol) + 5.0) / beta;
    CompensatedSum acc;
    double q0 = 0.0;
    while (q0 < q_stop) {
        const double q1 = q0 + panel;
        const double mid = 0.5 * (q0 + q1);
        const double hw = 0.5 * (q1 - q0);
        for (int i = 0; i < panel_points; ++i) {
            const double q = mid + hw * rule.nodes[i];
            acc.add(hw * rule.weights[i] * g(q) * std::exp(-beta * q));
        }
        q0 = q1;
    }
    return acc.value();
}

std::complex<double> angular_average(const std::function<std::complex<double>(double)>& f,
                                     int n_angular) {
    if (n_angular < 2) throw ConfigError("angular_average: need at least 2 nodes");
    CompensatedSum re, im;
    const double h = kTwoPi / n_angular;
    for (int j = 0; j < n_angular; ++j) {
        const std::complex<double> v = f(h * j);
        re.add(v.real());
        im.add(v.imag());
    }
    return {re.value() * h, im.value() * h};
}

RadialResult regulated_radial(RadialKernel kernel, double r, const QuadratureSpec& spec) {
    if (!(r > 0.0)) throw DomainError("regulated_radial: r must be positive");
    spec.validate();

    // Scale-free form: substitute q = k r, integrate g(q) e^{-beta q} with
    // beta = eps/r, so the computation depends only on the schedule.
    std::function<double(double)> g;
    switch (kernel) {
        case RadialKernel::J1:
            g = [](double q) { return bessel_j1(q); };
            break;
        case RadialKernel::J0:
            g = [](double q) { return bessel_j0(q); };
            break;
        case RadialKernel::OneOverK2_3d:
            g = [](double q) { return q < 1e-8 ? 1.0 - q * q / 6.0 : std::sin(q) / q; };
            break;
    }

    std::vector<double> betas = spec.epsilon_over_r;
    if (spec.extrapolation_order > 0 &&
        static_cast<std::size_t>(spec.extrapolation_order) + 1 < betas.size())
        betas.resize(spec.extrapolation_order + 1);

    std::vector<double> values(betas.size());
    for (std::size_t i = 0; i < betas.size(); ++i)
        values[i] = enveloped_integral(g, betas[i], kPi, spec.panel_points, spec.tail_tol);

    Extrapolation ex = extrapolate_to_zero(betas, values);
    // quadrature rounding floor on top of the extrapolation residual
    const double panels = 40.0 / betas.back();
    double err_scaled = ex.error_estimate + panels * 1e-17 * std::abs(ex.value);

    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(ex.value));
    if (!(err_scaled < tol))
        throw AccuracyError("regulated_radial: extrapolation residual above tolerance",
                            ex.value / r, err_scaled / r);
    return {ex.value / r, err_scaled / r};
}

}  // namespace abqed
