#ifndef ARNOLDWAVE_SPECIAL_FUNCTIONS_HPP
#define ARNOLDWAVE_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

namespace aw {

/// Physicists' Hermite polynomial H_n(q) by upward three-term recurrence:
/// H_0 = 1, H_1 = 2q, H_{n+1} = 2q H_n - 2n H_{n-1}.
inline double hermite(int n, double q) {
    if (n < 0) throw std::domain_error("hermite: n must be non-negative");
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = 2.0 * q;
    for (int k = 1; k < n; ++k) {
        const double p2 = 2.0 * q * p1 - 2.0 * k * p0;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Generalized Laguerre polynomial L_n^l(x), recurrence
/// (k+1) L_{k+1}^l = (2k+l+1-x) L_k^l - (k+l) L_{k-1}^l.
inline double laguerre(int n, int l, double x) {
    if (n < 0 || l < 0) throw std::domain_error("laguerre: indices must be non-negative");
    if (x < 0.0) throw std::domain_error("laguerre: x must be non-negative");
    double p0 = 1.0;
    if (n == 0) return p0;
    double p1 = 1.0 + l - x;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + l + 1.0 - x) * p1 - (k + l) * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

/// Confluent hypergeometric M(a, b; x) = 1F1(a; b; x) as a terminating series.
/// Only the polynomial case a = -k (k a non-negative integer) is validated;
/// other values are summed until the terms fall below machine precision.
inline double confluent_m(double a, double b, double x) {
    if (b <= 0.0 && b == std::floor(b))
        throw std::domain_error("confluent_m: b must not be a non-positive integer");
    const bool polynomial = (a <= 0.0 && a == std::floor(a));
    double term = 1.0;
    double sum = 1.0;
    const int kmax = polynomial ? static_cast<int>(-a) : 500;
    for (int k = 0; k < kmax; ++k) {
        term *= (a + k) * x / ((b + k) * (k + 1.0));
        sum += term;
        if (!polynomial && std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

/// Associated Legendre P_l^m(x) for m >= 0, Condon-Shortley phase included.
inline double assoc_legendre(int l, int m, double x) {
    if (l < 0 || m < 0 || m > l) throw std::domain_error("assoc_legendre: need 0 <= m <= l");
    // P_m^m = (-1)^m (2m-1)!! (1-x^2)^{m/2}
    double pmm = 1.0;
    if (m > 0) {
        const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
        double fact = 1.0;
        for (int i = 0; i < m; ++i) {
            pmm *= -fact * somx2;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

/// Orthonormal spherical harmonic Y_l^m(theta, phi), Condon-Shortley phase.
inline std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
    if (l < 0 || std::abs(m) > l)
        throw std::domain_error("spherical_harmonic: need l >= 0 and |m| <= l");
    const int am = std::abs(m);
    double lnfac = 0.0;  // log((l-|m|)!/(l+|m|)!)
    for (int k = l - am + 1; k <= l + am; ++k) lnfac -= std::log(static_cast<double>(k));
    const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) * std::exp(lnfac));
    const double plm = assoc_legendre(l, am, std::cos(theta));
    std::complex<double> y =
        norm * plm * std::exp(std::complex<double>(0.0, am * phi));
    if (m < 0) {
        // Y_l^{-m} = (-1)^m conj(Y_l^m)
        y = std::conj(y);
        if (am % 2 != 0) y = -y;
    }
    return y;
}

}  // namespace aw

#endif
