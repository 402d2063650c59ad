#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "abqed/errors.hpp"

namespace abqed {

// Compensated (Neumaier) accumulator.  Gives a fixed, order-independent
// rounding behaviour for the long mode-sum reductions.
class CompensatedSum {
public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Bessel functions of the first kind, orders 0 and 1.
// Ascending series below x = 17 (long-double accumulation), Hankel
// asymptotic expansion beyond.  Absolute error <= 1e-12 for x <= 1e3.
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_j(int order, double x);

// Gauss-Legendre nodes/weights on [-1, 1], computed once and cached (n <= 64).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Cutoffs, regulator schedule and tolerances for the continuum mode sums.
// The regulator schedule is expressed in units of the probe distance r
// (epsilon_i = epsilon_over_r[i] * r), which makes every radial integral a
// single scale-free computation.
struct QuadratureSpec {
    std::vector<double> epsilon_over_r{0.4,    0.2,    0.1,     0.05,
                                       0.025,  0.0125, 0.00625, 0.003125};
    int n_angular = 128;       // even, >= 64
    double abs_tol = 1e-7;
    double rel_tol = 1e-7;
    int panel_points = 16;     // Gauss nodes per oscillation panel (8 or 16)
    int extrapolation_order = 0;  // 0 = use the full schedule
    double r_min = 1e-3;       // singularity guard for 1/r kernels
    double k_max_over_k0 = 30.0;  // radial cutoff for enveloped gauge sums
    double tail_tol = 1e-13;   // regulated-tail truncation target

    void validate() const;
    // halved tolerances and a deeper regulator schedule, for convergence checks
    QuadratureSpec refined() const;
};

struct RadialResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

enum class RadialKernel { J1, J0, OneOverK2_3d };

// Regulated oscillatory radial integral: int_0^inf f(k, r) e^{-eps k} dk
// evaluated on the regulator schedule and Richardson-extrapolated to
// eps -> 0.  Kernels: J1 -> J1(kr) (limit 1/r), J0 -> J0(kr) (limit 1/r),
// OneOverK2_3d -> sin(kr)/(kr) (limit pi/(2r)).
RadialResult regulated_radial(RadialKernel kernel, double r, const QuadratureSpec& spec);

// Trapezoidal rule for int_0^{2pi} f(phi) dphi on n uniform nodes
// (spectrally accurate for smooth periodic integrands).
std::complex<double> angular_average(const std::function<std::complex<double>(double)>& f,
                                     int n_angular);

// Neville polynomial extrapolation of (x_i, y_i) samples to x = 0.
// Returns the extrapolated value and the magnitude of the last correction.
struct Extrapolation {
    double value = 0.0;
    double error_estimate = 0.0;
};
Extrapolation extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

// int_0^inf g(q) e^{-beta q} dq by Gauss panels of length `panel` until the
// enveloped tail falls below tail_tol.  Building block of regulated_radial
// and of the gauge-variation mode sums.
double enveloped_integral(const std::function<double(double)>& g, double beta,
                          double panel, int panel_points, double tail_tol,
                          double tail_amplitude = 1.0);

}  // namespace abqed
