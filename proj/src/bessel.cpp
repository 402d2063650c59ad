#include <cmath>

#include "abqed/quadrature.hpp"

namespace abqed {

namespace {

// Ascending series sum_m (-1)^m (x^2/4)^m / (m! (m+nu)!), accumulated in
// long double: the alternating terms peak near m ~ x/2 and the extra
// mantissa bits absorb the cancellation up to the x = 17 crossover.
long double series_j(int nu, long double x) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L;
    for (int m = 1; m <= nu; ++m) term /= m;  // 1/nu!
    long double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<long double>(m) * (m + nu));
        sum += term;
        if (std::abs(term) < 1e-22L * std::abs(sum) + 1e-40L) break;
    }
    for (int i = 0; i < nu; ++i) sum *= 0.5L * x;
    return sum;
}

// Hankel asymptotic expansion, truncated at the smallest term.
long double asymptotic_j(int nu, long double x) {
    const long double mu = 4.0L * nu * nu;
    long double p = 1.0L;  // sum of even terms with alternating sign
    long double q = 0.0L;  // sum of odd terms with alternating sign
    long double term = 1.0L;
    long double prev = 1e30L;
    for (int k = 0; k < 200; ++k) {
        long double odd = 2.0L * k + 1.0L;
        long double next = term * (mu - odd * odd) / (8.0L * (k + 1) * x);
        if (std::abs(next) >= prev) break;  // divergence onset
        prev = std::abs(next);
        term = next;
        int kk = k + 1;  // term index in the series
        long double signed_term = ((kk / 2) % 2 == 0) ? term : -term;
        if (kk % 2 == 0)
            p += signed_term;
        else
            q += signed_term;
        if (std::abs(term) < 1e-20L) break;
    }
    const long double chi = x - (2 * nu + 1) * 0.25L * 3.14159265358979323846264338327950288L;
    return std::sqrt(2.0L / (3.14159265358979323846264338327950288L * x)) *
           (p * std::cos(chi) - q * std::sin(chi));
}

double bessel_impl(int nu, double x) {
    if (x < 0.0) throw DomainError("bessel_j: negative argument");
    if (x < 17.0) return static_cast<double>(series_j(nu, x));
    return static_cast<double>(asymptotic_j(nu, x));
}

}  // namespace

double bessel_j0(double x) { return bessel_impl(0, x); }
double bessel_j1(double x) { return bessel_impl(1, x); }

double bessel_j(int order, double x) {
    if (order != 0 && order != 1) throw DomainError("bessel_j: order must be 0 or 1");
    return bessel_impl(order, x);
}

}  // namespace abqed
