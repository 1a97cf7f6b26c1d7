#pragma once

// The Bessel arc kernel I0(b sqrt(a^2 - x^2)) and the integral identities it
// satisfies.  These are the analytic backbone of the sum density: its tail
// term integrates the kernel along the time direction, and the closed-form
// Fourier transforms below provide independent oracles for the tests.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "telesum/quadrature.hpp"
#include "telesum/specfun.hpp"
#include "telesum/telegraph.hpp"

namespace telesum {

namespace detail {

// e^{-2 lambda t} * Integral_{|x|}^{2ct} I0((lambda/c) sqrt(tau^2 - x^2)) dtau.
// The damping is folded into the integrand through the scaled Bessel
// function (the exponent eta - 2 lambda t is always <= 0), so the result is
// finite for any lambda t.  The integrand is smooth: I0 depends on tau^2 -
// x^2 analytically, so the sqrt introduces no kink at tau = |x|.
inline double arc_integral_damped(const TelegraphParams& p, double x, double t,
                                  double abs_tol) {
    const double a = std::fabs(x);
    const double hi = 2.0 * p.c * t;
    if (a >= hi) return 0.0;
    const double two_lt = 2.0 * p.lambda * t;
    auto f = [&](double tau) {
        const double eta = p.lambda / p.c * std::sqrt((tau - x) * (tau + x));
        return std::exp(eta - two_lt) * bessel_i0_scaled(eta);
    };
    return integrate(f, a, hi, abs_tol).value;
}

} // namespace detail

// Integral_{|x|}^{2ct} I0((lambda/c) sqrt(tau^2 - x^2)) dtau, the tail term
// of the sum density.  Zero when |x| >= 2ct.  Overflows with the Bessel
// function itself once lambda t exceeds ~350.
inline double arc_integral(const TelegraphParams& p, double x, double t,
                           double abs_tol = 0.0) {
    p.validate();
    detail::require_time(t, "arc_integral");
    detail::require_finite(x, "arc_integral");
    const double scale = std::exp(2.0 * p.lambda * t);
    if (abs_tol <= 0.0) abs_tol = 1e-12 * (1.0 + 2.0 * p.c * t);
    return scale * detail::arc_integral_damped(p, x, t, abs_tol / scale);
}

// Closed-form Fourier transform of the arc kernel:
//   Integral_{-a}^{a} e^{i xi x} I0(b sqrt(a^2 - x^2)) dx
//     = 2 sinh(a sqrt(b^2 - xi^2)) / sqrt(b^2 - xi^2)
// with the trigonometric continuation for |xi| > b and value 2a on the
// cone; all three cases collapse to 2a * sinhc(sqrt(a^2(b^2 - xi^2))).
inline double arc_bessel_transform(double a, double b, double xi) {
    detail::require_finite(a, "arc_bessel_transform");
    detail::require_finite(b, "arc_bessel_transform");
    detail::require_finite(xi, "arc_bessel_transform");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("arc_bessel_transform: a and b must be positive");
    return 2.0 * a * detail::sinhc_sqrt(a * a * (b - xi) * (b + xi));
}

// Transform pair for the squared kernel: returns
//   first  = sinh^2(q sqrt(p^2 - xi^2)) / (p^2 - xi^2)   (closed form),
//   second = Integral_{-2q}^{2q} e^{i xi x} (1/4) Integral_{|x|}^{2q}
//            I0(p sqrt(tau^2 - x^2)) dtau dx              (quadrature),
// which agree because the inner integral is the inverse transform of the
// closed form.  Used as a test oracle; the quadrature side costs one nested
// integral per call.
inline std::pair<double, double> arc_transform_identity(double pcoef, double q,
                                                        double xi,
                                                        double abs_tol = 1e-9) {
    detail::require_finite(pcoef, "arc_transform_identity");
    detail::require_finite(q, "arc_transform_identity");
    detail::require_finite(xi, "arc_transform_identity");
    if (!(pcoef > 0.0) || !(q > 0.0))
        throw std::domain_error("arc_transform_identity: p and q must be positive");

    const double v = q * q * (pcoef - xi) * (pcoef + xi);
    const double s = detail::sinhc_sqrt(v);
    const double lhs = q * q * s * s;

    // arc kernel integral reused through arc_integral with c=1, t=q,
    // lambda=pcoef: the integrand and limits coincide.
    const TelegraphParams pq{1.0, pcoef};
    auto inner = [&](double x) { return arc_integral(pq, x, q, abs_tol * 1e-2); };
    // even integrand: 2 * (1/4) * int_0^{2q} cos(xi x) arc(x) dx
    QuadratureOptions opts;
    opts.max_panel_width = (std::fabs(xi) > 1.0) ? M_PI / (2.0 * std::fabs(xi)) : 0.0;
    const double rhs =
        0.5 * integrate([&](double x) { return std::cos(xi * x) * inner(x); }, 0.0,
                        2.0 * q, abs_tol, opts)
                  .value;
    return {lhs, rhs};
}

// Antiderivative identity for the weighted hypergeometric kernel:
//   Integral z^n F(-k, 1/2; 3/2; x^2/z^2) dz
//     = z^{n+1}/(n+1) * 3F2(-k, -(n+1)/2, 1/2; (1-n)/2, 3/2; x^2/z^2),
// valid for n >= 2k so the 3F2 terminates before its denominator parameter
// can vanish.  Differentiating the right side in z reproduces the
// integrand; the tests verify exactly that.
inline double power_hyp2f1_antiderivative(int n, int k, double x, double z) {
    if (k < 0) throw std::domain_error("power_hyp2f1_antiderivative: k must be >= 0");
    if (n < 2 * k)
        throw std::domain_error("power_hyp2f1_antiderivative: requires n >= 2k");
    detail::require_finite(x, "power_hyp2f1_antiderivative");
    detail::require_finite(z, "power_hyp2f1_antiderivative");
    if (!(z > 0.0) || std::fabs(x) > z)
        throw std::domain_error("power_hyp2f1_antiderivative: requires 0 < |x| <= z");
    const double ratio = (x / z) * (x / z);
    const double f = hyp3f2_terminating(k, -0.5 * (n + 1.0), 0.5, 0.5 * (1.0 - n), 1.5,
                                        ratio);
    return std::pow(z, n + 1) / (n + 1.0) * f;
}

} // namespace telesum
