#pragma once

// Special functions needed by the telegraph-process laws: modified Bessel
// functions I0/I1 (plain and exponentially scaled), Pochhammer symbols,
// double factorials, and terminating hypergeometric sums 2F1 / 3F2 with a
// unit-argument closed form for each.
//
// The terminating hypergeometric sums alternate in sign and cancel
// catastrophically for large k near z = 1 (the k = 40, z = 1 case loses ten
// decimal digits in plain double).  They are therefore accumulated in
// extended precision (__float128 where available); see hyp2f1_term.  Stable
// double-precision forward recurrences for the two parameter patterns used
// by the distribution functions are provided alongside (hyp2f1_half,
// hyp3f2_half) and cross-checked against the extended-precision sums in the
// test suite.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "telesum/errors.hpp"

namespace telesum {

namespace detail {

#if defined(__SIZEOF_FLOAT128__)
using wide_real = __float128;
#else
using wide_real = long double;
#endif

inline void require_finite(double x, const char* what) {
    if (!std::isfinite(x))
        throw std::domain_error(std::string(what) + ": non-finite argument");
}

// Power-series sum for I_nu, nu in {0,1}; all terms positive so plain
// compensated accumulation is exact enough.  Valid for moderate z.
inline double bessel_series(double z, int nu) {
    const double q = 0.25 * z * z;
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int k = 1; k < 400; ++k) {
        term *= q / (static_cast<double>(k) * (k + nu));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (term < sum * 1e-17) break;
    }
    return sum; // I0 = sum, I1 = (z/2)*sum for nu = 1
}

// Asymptotic expansion of e^{-z} I_nu(z) sqrt(2 pi z); the series is
// divergent, so stop at the smallest term.  Accurate to ~1e-15 for z >= 30.
inline double bessel_asymptotic_scaled(double z, int nu) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    double prev = std::numeric_limits<double>::max();
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (8.0 * k * z);
        if (std::fabs(term) >= prev) break;
        sum += term;
        prev = std::fabs(term);
        if (prev < 1e-17) break;
    }
    return sum / std::sqrt(2.0 * M_PI * z);
}

constexpr double bessel_series_cut = 30.0;

} // namespace detail

// e^{-z} I0(z); never overflows.
inline double bessel_i0_scaled(double z) {
    detail::require_finite(z, "bessel_i0_scaled");
    if (z < 0.0) throw std::domain_error("bessel_i0_scaled: z must be >= 0");
    if (z <= detail::bessel_series_cut)
        return detail::bessel_series(z, 0) * std::exp(-z);
    return detail::bessel_asymptotic_scaled(z, 0);
}

// e^{-z} I1(z); never overflows.
inline double bessel_i1_scaled(double z) {
    detail::require_finite(z, "bessel_i1_scaled");
    if (z < 0.0) throw std::domain_error("bessel_i1_scaled: z must be >= 0");
    if (z <= detail::bessel_series_cut)
        return 0.5 * z * detail::bessel_series(z, 1) * std::exp(-z);
    return detail::bessel_asymptotic_scaled(z, 1);
}

// I0(z); overflows to +inf for z beyond ~713.
inline double bessel_i0(double z) {
    detail::require_finite(z, "bessel_i0");
    if (z < 0.0) throw std::domain_error("bessel_i0: z must be >= 0");
    if (z <= detail::bessel_series_cut) return detail::bessel_series(z, 0);
    return detail::bessel_asymptotic_scaled(z, 0) * std::exp(z);
}

// I1(z); overflows to +inf for z beyond ~714.
inline double bessel_i1(double z) {
    detail::require_finite(z, "bessel_i1");
    if (z < 0.0) throw std::domain_error("bessel_i1: z must be >= 0");
    if (z <= detail::bessel_series_cut) return 0.5 * z * detail::bessel_series(z, 1);
    return detail::bessel_asymptotic_scaled(z, 1) * std::exp(z);
}

// I1(z)/z, finite at z = 0 (value 1/2).  The densities need I1 divided by a
// vanishing arc length at the support edge; routing that quotient through
// this function removes the 0/0.
inline double bessel_i1_over_z(double z) {
    detail::require_finite(z, "bessel_i1_over_z");
    if (z < 0.0) throw std::domain_error("bessel_i1_over_z: z must be >= 0");
    if (z <= detail::bessel_series_cut) return 0.5 * detail::bessel_series(z, 1);
    return detail::bessel_asymptotic_scaled(z, 1) * std::exp(z) / z;
}

// e^{-z} I1(z)/z, finite at z = 0 (value 1/2); scaled companion of
// bessel_i1_over_z for use where the exponential is folded elsewhere.
inline double bessel_i1_over_z_scaled(double z) {
    detail::require_finite(z, "bessel_i1_over_z_scaled");
    if (z < 0.0) throw std::domain_error("bessel_i1_over_z_scaled: z must be >= 0");
    if (z <= detail::bessel_series_cut)
        return 0.5 * detail::bessel_series(z, 1) * std::exp(-z);
    return detail::bessel_asymptotic_scaled(z, 1) / z;
}

// n!! with the empty-product conventions (-1)!! = 0!! = 1.
inline double double_factorial(int n) {
    if (n < -1) throw std::domain_error("double_factorial: n must be >= -1");
    double p = 1.0;
    for (int k = n; k >= 2; k -= 2) p *= k;
    return p;
}

// Pochhammer (rising factorial) (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
inline double pochhammer(double a, int n) {
    detail::require_finite(a, "pochhammer");
    if (n < 0) throw std::domain_error("pochhammer: n must be >= 0");
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= a + k;
    return p;
}

namespace detail {

inline void check_hyp_args(int k, double z, const char* what) {
    if (k < 0) throw std::domain_error(std::string(what) + ": k must be >= 0");
    if (k > 100000) throw std::domain_error(std::string(what) + ": k too large");
    require_finite(z, what);
}

} // namespace detail

// Terminating Gauss series F(-k, b; c; z) = sum_{s=0}^{k} (-k)_s (b)_s /
// ((c)_s s!) z^s.  The parameters met here are half-integers, so every term
// factor is exact in binary; the alternating sum is accumulated in extended
// precision, which keeps the absolute error near 1e-20 even at k = 40,
// z = 1 where the terms reach 1e10.  Throws if (c)_s hits a pole before the
// series terminates.
inline double hyp2f1_term(int k, double b, double c, double z) {
    detail::check_hyp_args(k, z, "hyp2f1_term");
    detail::require_finite(b, "hyp2f1_term");
    detail::require_finite(c, "hyp2f1_term");
    detail::wide_real term = 1.0, sum = 1.0;
    for (int s = 0; s < k; ++s) {
        const double cs = c + s;
        if (cs == 0.0)
            throw std::domain_error("hyp2f1_term: pole in denominator parameter at s=" +
                                    std::to_string(s));
        term *= detail::wide_real(-k + s) * detail::wide_real(b + s) * detail::wide_real(z);
        term /= detail::wide_real(cs) * detail::wide_real(s + 1);
        sum += term;
    }
    return static_cast<double>(sum);
}

// Terminating 3F2(-k, b1, b2; c1, c2; z); same accumulation strategy as
// hyp2f1_term.
inline double hyp3f2_terminating(int k, double b1, double b2, double c1, double c2,
                                 double z) {
    detail::check_hyp_args(k, z, "hyp3f2_terminating");
    detail::wide_real term = 1.0, sum = 1.0;
    for (int s = 0; s < k; ++s) {
        const double c1s = c1 + s, c2s = c2 + s;
        if (c1s == 0.0 || c2s == 0.0)
            throw std::domain_error("hyp3f2_terminating: pole in denominator parameter at s=" +
                                    std::to_string(s));
        term *= detail::wide_real(-k + s) * detail::wide_real(b1 + s) *
                detail::wide_real(b2 + s) * detail::wide_real(z);
        term /= detail::wide_real(c1s) * detail::wide_real(c2s) * detail::wide_real(s + 1);
        sum += term;
    }
    return static_cast<double>(sum);
}

// 3F2(-k, -k-1/2, 1/2; -k+1/2, 3/2; z), the pattern appearing in the sum
// distribution function.  The denominator parameter -k+1/2 is never a
// non-positive integer, so no pole can occur.
inline double hyp3f2_term(int k, double z) {
    detail::check_hyp_args(k, z, "hyp3f2_term");
    return hyp3f2_terminating(k, -k - 0.5, 0.5, -k + 0.5, 1.5, z);
}

// F(-k, 1/2; 3/2; 1) = (2k)!! / (2k+1)!!, evaluated as a stable product.
inline double hyp2f1_at_one(int k) {
    if (k < 0) throw std::domain_error("hyp2f1_at_one: k must be >= 0");
    double p = 1.0;
    for (int j = 1; j <= k; ++j) p *= (2.0 * j) / (2.0 * j + 1.0);
    return p;
}

// 3F2(-k, -k-1/2, 1/2; -k+1/2, 3/2; 1): zero for odd k, and
// 2^k k! / ((k+1) (2k-1)!!) for even k.
inline double hyp3f2_at_one(int k) {
    if (k < 0) throw std::domain_error("hyp3f2_at_one: k must be >= 0");
    if (k % 2 == 1) return 0.0;
    double p = 1.0;
    for (int j = 1; j <= k; ++j) p *= (2.0 * j) / (2.0 * j - 1.0);
    return p / (k + 1.0);
}

// F(-k, 1/2; 3/2; z) via the integral representation J_k(z) =
// int_0^1 (1 - z u^2)^k du and its forward recurrence
//   J_k = (2k J_{k-1} + (1-z)^k) / (2k+1),  J_0 = 1,
// which has positive terms for z <= 1 and contracts error for all z in
// [0,1].  O(k) double operations; used on the distribution-function hot
// path where the extended-precision sum would be too slow.
inline double hyp2f1_half(int k, double z) {
    detail::check_hyp_args(k, z, "hyp2f1_half");
    double J = 1.0, pw = 1.0;
    const double omz = 1.0 - z;
    for (int s = 1; s <= k; ++s) {
        pw *= omz;
        J = (2.0 * s * J + pw) / (2.0 * s + 1.0);
    }
    return J;
}

// hyp3f2_term(k, z) through the partial-fraction split
//   term_s = (-1)^s C(k,s) (2k+1) z^s / ((2k+1-2s)(2s+1))
//          = (2k+1)/(2k+2) [ (-1)^s C(k,s) z^s (1/(2s+1) + 1/(2k+1-2s)) ],
// whose two halves are J_k(z) and (-1)^k z^k J_k(1/z).  The scaled second
// recurrence K_s = (2 s z K_{s-1} + (z-1)^s) / (2s+1) stays bounded for
// z in [0,1].  At z = 1 both recurrences coincide, so odd k cancels to
// exactly zero.
inline double hyp3f2_half(int k, double z) {
    detail::check_hyp_args(k, z, "hyp3f2_half");
    double J = 1.0, K = 1.0, pj = 1.0, pk = 1.0;
    const double omz = 1.0 - z;
    for (int s = 1; s <= k; ++s) {
        pj *= omz;
        pk *= -omz;
        J = (2.0 * s * J + pj) / (2.0 * s + 1.0);
        K = (2.0 * s * z * K + pk) / (2.0 * s + 1.0);
    }
    const double signedK = (k % 2 == 0) ? K : -K;
    return (2.0 * k + 1.0) / (2.0 * k + 2.0) * (J + signedK);
}

} // namespace telesum
