#pragma once

// Centered finite differences and the differential identities they verify.
//
// The sum characteristic function Psi(xi,.) is annihilated by the
// third-order operator (d/dt + 2 lambda)(d^2/dt^2 + 4 lambda d/dt +
// 4 c^2 xi^2), and the auxiliary function w_hat = d/dt[e^{2 lambda t} Psi]
// solves w_tt = 4 (lambda^2 - c^2 xi^2) w.  Both residuals are formed with
// 7-point centered stencils: third derivatives amplify roundoff, and the
// wide stencil keeps the truncation error at O(h^4) or better.

#include <cmath>
#include <stdexcept>

#include "telesum/sumdist.hpp"
#include "telesum/telegraph.hpp"

namespace telesum {

// First derivative, 7-point centered, truncation O(h^6).
template <class F>
double fd_d1(F&& f, double t, double h) {
    return (-f(t - 3 * h) + 9 * f(t - 2 * h) - 45 * f(t - h) + 45 * f(t + h) -
            9 * f(t + 2 * h) + f(t + 3 * h)) /
           (60.0 * h);
}

// Second derivative, 7-point centered, truncation O(h^6).
template <class F>
double fd_d2(F&& f, double t, double h) {
    return (2 * f(t - 3 * h) - 27 * f(t - 2 * h) + 270 * f(t - h) - 490 * f(t) +
            270 * f(t + h) - 27 * f(t + 2 * h) + 2 * f(t + 3 * h)) /
           (180.0 * h * h);
}

// Third derivative, 7-point centered, truncation O(h^4).
template <class F>
double fd_d3(F&& f, double t, double h) {
    return (f(t - 3 * h) - 8 * f(t - 2 * h) + 13 * f(t - h) - 13 * f(t + h) +
            8 * f(t + 2 * h) - f(t + 3 * h)) /
           (8.0 * h * h * h);
}

// Default step for the residual checks: small against both the time scale
// and the reversal scale, large enough to stay out of pure roundoff.
inline double default_fd_step(const TelegraphParams& p, double t) {
    return 1e-3 * std::min(t, 1.0 / p.lambda);
}

namespace detail {

inline void require_stencil(double t, double h, const char* what) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw std::domain_error(std::string(what) + ": step h must be > 0 and finite");
    if (!(t > 3.0 * h))
        throw std::domain_error(std::string(what) +
                                ": need t > 3h for the centered 7-point stencil");
}

} // namespace detail

// Residual of the third-order equation satisfied by the sum characteristic
// function,
//   Psi''' + 6 lambda Psi'' + (8 lambda^2 + 4 c^2 xi^2) Psi'
//          + 8 lambda c^2 xi^2 Psi = 0,
// with all time derivatives taken by finite differences.  Returns the
// magnitude normalized by max(1, |Psi| lambda^3); h <= 0 selects the
// default step.
inline double pde_residual_order3(const TelegraphParams& p, double xi, double t,
                                  double h = 0.0) {
    p.validate();
    detail::require_finite(xi, "pde_residual_order3");
    if (h <= 0.0) h = default_fd_step(p, t);
    detail::require_stencil(t, h, "pde_residual_order3");
    auto psi = [&p, xi](double s) { return sum_charfn(p, xi, s); };
    const double lam = p.lambda;
    const double cx2 = p.c * p.c * xi * xi;
    const double v = psi(t);
    const double r = fd_d3(psi, t, h) + 6.0 * lam * fd_d2(psi, t, h) +
                     (8.0 * lam * lam + 4.0 * cx2) * fd_d1(psi, t, h) +
                     8.0 * lam * cx2 * v;
    return std::fabs(r) / std::max(1.0, std::fabs(v) * lam * lam * lam);
}

// Residual of the wave-type equation w_tt = 4 (lambda^2 - c^2 xi^2) w for
// the closed-form wave_charfn, second derivative by finite differences.
// Returns the magnitude normalized by max(1, lambda^2 |w|); h <= 0 selects
// the default step.
inline double wave_charfn_residual(const TelegraphParams& p, double xi, double t,
                                   double h = 0.0) {
    p.validate();
    detail::require_finite(xi, "wave_charfn_residual");
    if (h <= 0.0) h = default_fd_step(p, t);
    detail::require_stencil(t, h, "wave_charfn_residual");
    auto w = [&p, xi](double s) { return wave_charfn(p, xi, s); };
    const double d = 4.0 * ((p.lambda - p.c * xi) * (p.lambda + p.c * xi));
    const double v = w(t);
    const double r = fd_d2(w, t, h) - d * v;
    return std::fabs(r) / std::max(1.0, p.lambda * p.lambda * std::fabs(v));
}

} // namespace telesum
