#include "mmlink/special.hpp"

#include <cmath>

namespace mmlink {

namespace {

// Power series sum_k (-1)^k (x^2/4)^k / (k!)^2, evaluated in 80-bit long double so the
// alternating-term cancellation near the upper end of its range still leaves ~1e-14
// absolute accuracy.
double j0_series(double x) {
    const long double q = (static_cast<long double>(x) * x) / 4.0L;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 400; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-25L * std::abs(sum)) break;
    }
    return static_cast<double>(sum);
}

// Hankel asymptotic expansion, optimally truncated. For |x| >= 17 the smallest term is
// far below 1e-15, so truncation error is negligible against the 1e-12 contract.
double j0_asymptotic(double x) {
    const long double xl = x;
    // Coefficient recurrence a_m = a_{m-1} * -(2m-1)^2 / (8m); the cosine sum takes the
    // even-index coefficients, the sine sum the odd ones, with alternating signs folded
    // into the recurrence already.
    long double p = 0.0L;
    long double q = 0.0L;
    long double coeff = 1.0L;
    long double inv = 1.0L;
    long double prev_mag = 2.0L; // first term is exactly 1
    for (int m = 0; m < 24; ++m) {
        const long double term = coeff * inv;
        if (std::abs(term) > prev_mag) break; // terms started growing: stop at optimum
        prev_mag = std::abs(term);
        if (m % 2 == 0) {
            p += ((m / 2) % 2 == 0) ? term : -term;
        } else {
            q += (((m - 1) / 2) % 2 == 0) ? term : -term;
        }
        coeff *= -static_cast<long double>((2 * m + 1) * (2 * m + 1)) / (8.0L * (m + 1));
        inv /= xl;
        // "coeff * inv" at the next m already carries (-1)^m a_m / x^m; the sign
        // selection above then applies the series' (-1)^k alternation per pair.
    }
    const long double pi = 3.14159265358979323846264338327950288L;
    const long double chi = xl - pi / 4.0L;
    const long double val = std::sqrt(2.0L / (pi * xl)) * (std::cos(chi) * p - std::sin(chi) * q);
    return static_cast<double>(val);
}

} // namespace

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel_j0: non-finite input");
    const double ax = std::abs(x);
    if (ax <= 17.0) return j0_series(ax);
    return j0_asymptotic(ax);
}

double sine_integral(double z) {
    if (!std::isfinite(z) || z < 0.0)
        throw DomainError("sine_integral: requires finite z >= 0");
    if (z == 0.0) return 0.0;
    if (z <= 16.0) {
        // sum_k (-1)^k z^{2k+1} / ((2k+1) (2k+1)!), in long double.
        const long double zl = z;
        long double power_over_fact = zl; // z^{2k+1}/(2k+1)! at k = 0
        long double sum = zl;
        long double sign = 1.0L;
        for (int k = 1; k < 200; ++k) {
            power_over_fact *= zl * zl / (static_cast<long double>(2 * k) * (2 * k + 1));
            sign = -sign;
            const long double term = sign * power_over_fact / (2 * k + 1);
            sum += term;
            if (std::abs(term) < 1e-26L * std::abs(sum)) break;
        }
        return static_cast<double>(sum);
    }
    static const double si_16 = sine_integral(16.0);
    QuadratureSpec tight;
    tight.abs_tol = 1e-12;
    tight.rel_tol = 1e-12;
    tight.max_subdivisions = 4000;
    const double tail = integrate([](double t) { return std::sin(t) / t; }, 16.0, z, tight);
    return si_16 + tail;
}

double sinc(double x) {
    if (!std::isfinite(x)) throw DomainError("sinc: non-finite input");
    const double px = 3.14159265358979323846 * x;
    if (std::abs(px) < 1e-4) {
        const double p2 = px * px;
        return 1.0 - p2 / 6.0 + p2 * p2 / 120.0;
    }
    return std::sin(px) / px;
}

} // namespace mmlink
