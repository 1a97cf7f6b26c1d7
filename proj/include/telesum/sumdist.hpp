#pragma once

// Law of S(t) = X1(t) + X2(t) for two independent telegraph processes.
//
// Equal parameters, both started at the origin (the closed-form case):
//   atoms   e^{-2 lambda t}/4 at +-2ct and e^{-2 lambda t}/2 at 0;
//   density (e^{-2 lambda t}/2c) [ lambda I0(w) + (1/4) dI0/dt
//             + (lambda^2/2c) Integral_{|x|}^{2ct} I0(...) dtau ],
//   with w = (lambda/c) sqrt(4 c^2 t^2 - x^2) and the time derivative of
//   I0(w) available in closed form as 4 lambda c t I1(w) / sqrt(4c^2t^2-x^2);
//   distribution function piecewise in x <= 0 / x > 0 with a cosine jump
//   term and two hypergeometric series.
//
// General parameters and starting points: the characteristic function is
// still a product of shifted single-process factors, but the density is
// obtained by numeric Fourier inversion only.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "telesum/distribution.hpp"
#include "telesum/errors.hpp"
#include "telesum/fourier.hpp"
#include "telesum/identities.hpp"
#include "telesum/quadrature.hpp"
#include "telesum/series.hpp"
#include "telesum/specfun.hpp"
#include "telesum/telegraph.hpp"

namespace telesum {

// Two independent telegraph processes with their starting points.
struct SumParams {
    TelegraphParams p1, p2;
    double x01 = 0.0, x02 = 0.0;

    void validate() const {
        p1.validate();
        p2.validate();
        if (!std::isfinite(x01) || !std::isfinite(x02))
            throw std::domain_error("SumParams: starting points must be finite");
    }
    double shift() const { return x01 + x02; }
    bool closed_form() const {
        return p1.c == p2.c && p1.lambda == p2.lambda && x01 == 0.0 && x02 == 0.0;
    }
};

// ---------------------------------------------------------------------------
// equal-parameter case
// ---------------------------------------------------------------------------

// Atoms of the sum law: both processes event-free by time t.
inline std::vector<Atom> sum_atoms(const TelegraphParams& p, double t) {
    p.validate();
    detail::require_time(t, "sum_atoms");
    const double m = std::exp(-2.0 * p.lambda * t);
    const double ct2 = 2.0 * p.c * t;
    return {{-ct2, 0.25 * m}, {0.0, 0.5 * m}, {ct2, 0.25 * m}};
}

// Characteristic function of the sum: the single-process factor squared.
inline double sum_charfn(const TelegraphParams& p, double xi, double t) {
    const double h = tele_charfn(p, xi, t);
    return h * h;
}

// Time derivative of e^{2 lambda t} sum_charfn, in branch-free form
//   2 lambda cosh(2 t omega) + 2 t (2 lambda^2 - c^2 xi^2) sinhc(2 t omega)
// with omega^2 = lambda^2 - c^2 xi^2 continued through the cone.  This is
// the Fourier-side solution of the doubled-parameter wave equation
// u_tt = 4 (lambda^2 - c^2 xi^2) u; it grows like e^{2 lambda t}.
inline double wave_charfn(const TelegraphParams& p, double xi, double t) {
    p.validate();
    detail::require_finite(xi, "wave_charfn");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::domain_error("wave_charfn: t must be >= 0 and finite");
    const double d = (p.lambda - p.c * xi) * (p.lambda + p.c * xi);
    const double v4 = 4.0 * t * t * d;
    return 2.0 * p.lambda * detail::cosh_sqrt(v4) +
           2.0 * t * (2.0 * p.lambda * p.lambda - p.c * p.c * xi * xi) *
               detail::sinhc_sqrt(v4);
}

// Absolutely continuous density of the sum on (-2ct, 2ct), zero outside and
// at the edges.  The (1/4) dI0/dt term is evaluated through its closed
// form, whose edge-singular quotient I1(w)/sqrt(4c^2t^2-x^2) is routed as
// lambda^2 t I1(w)/w; the tail term integrates the arc kernel numerically.
inline double sum_pdf_ac(const TelegraphParams& p, double x, double t) {
    p.validate();
    detail::require_time(t, "sum_pdf_ac");
    detail::require_finite(x, "sum_pdf_ac");
    const double edge = 2.0 * p.c * t;
    if (std::fabs(x) >= edge) return 0.0;
    const double w = p.lambda / p.c * std::sqrt((edge - x) * (edge + x));
    const double lam = p.lambda;
    // (1/4) dI0/dt = lambda c t I1(w)/sqrt(4c^2t^2 - x^2) = lambda^2 t I1(w)/w
    const double dt_term =
        std::exp(w - 2.0 * lam * t) * lam * lam * t * bessel_i1_over_z_scaled(w);
    const double bessel =
        std::exp(w - 2.0 * lam * t) * lam * bessel_i0_scaled(w) + dt_term;
    const double tail = 0.5 * lam * lam / p.c *
                        detail::arc_integral_damped(p, x, t, 1e-14 * (1.0 + edge));
    return 0.5 / p.c * (bessel + tail);
}

// Same density written without the time-derivative substitution:
//   (lambda e^{-2 lambda t}/2c) [ I0(w) + c t I1(w)/sqrt(4c^2t^2 - x^2)
//                                 + (lambda/2c) Integral ... ].
// Algebraically identical to sum_pdf_ac; kept as a separately coded route
// so the tests can confirm the identity numerically.
inline double sum_pdf_ac_alt(const TelegraphParams& p, double x, double t) {
    p.validate();
    detail::require_time(t, "sum_pdf_ac_alt");
    detail::require_finite(x, "sum_pdf_ac_alt");
    const double edge = 2.0 * p.c * t;
    if (std::fabs(x) >= edge) return 0.0;
    const double r = std::sqrt((edge - x) * (edge + x));
    const double w = p.lambda / p.c * r;
    const double lam = p.lambda;
    const double expf = std::exp(w - 2.0 * lam * t);
    // guard the 0/0 at the support edge: c t I1(w)/r == lambda t I1(w)/w
    const double mid = (r > 1e-8 * edge)
                           ? p.c * t * bessel_i1_scaled(w) / r
                           : lam * t * bessel_i1_over_z_scaled(w);
    const double arc = detail::arc_integral_damped(p, x, t, 1e-14 * (1.0 + edge));
    return 0.5 * lam / p.c * (expf * (bessel_i0_scaled(w) + mid) + 0.5 * lam / p.c * arc);
}

namespace detail {

// Shared series engine for the two distribution-function forms.  Both are
//   1/2 +- (e^{-2 lambda t}/4) cos(lambda x / c)
//       + (lambda x e^{-2 lambda t}/2c) [S1 + S2]
// and differ only in the series S1, S2.  Terms are bounded by their
// hypergeometric envelopes (|F| <= 1, |3F2 pattern| < 2 on [0,1]), so the
// convergence check below cannot stop early.
template <class Term>
double sum_cdf_series(const TelegraphParams& p, double x, double t,
                      const SeriesControl& ctl, const char* what, Term term) {
    const double edge = 2.0 * p.c * t;
    if (x <= -edge) return 0.0;
    if (x > edge) return 1.0;
    const double lt = p.lambda * t;
    const double z = (x / edge) * (x / edge);
    double sum = 0.0;
    double fact = 1.0; // (lambda t)^{2k} / (k!)^2
    bool converged = false;
    for (int k = 0; k < ctl.max_terms; ++k) {
        double bound = 0.0;
        sum += term(k, z, lt, fact, bound);
        if (bound < ctl.rel_tol * (std::fabs(sum) + 1.0)) {
            converged = true;
            break;
        }
        fact *= (lt * lt) / ((k + 1.0) * (k + 1.0));
    }
    if (!converged)
        throw truncation_error(std::string(what) + ": series not converged within " +
                               std::to_string(ctl.max_terms) +
                               " terms; raise SeriesControl.max_terms");
    const double e2 = std::exp(-2.0 * lt);
    const double sign = (x <= 0.0) ? -1.0 : 1.0;
    const double v = 0.5 + sign * 0.25 * e2 * std::cos(p.lambda * x / p.c) +
                     0.5 * p.lambda * x * e2 / p.c * sum;
    return std::min(1.0, std::max(0.0, v));
}

} // namespace detail

// Left-continuous distribution function Pr{S < x} of the sum law.  The two
// hypergeometric families are evaluated by their stable forward
// recurrences; see specfun.hpp.
inline double sum_cdf(const TelegraphParams& p, double x, double t,
                      const SeriesControl& ctl = {}) {
    p.validate();
    detail::require_time(t, "sum_cdf");
    detail::require_finite(x, "sum_cdf");
    ctl.validate();
    return detail::sum_cdf_series(
        p, x, t, ctl, "sum_cdf",
        [](int k, double z, double lt, double fact, double& bound) {
            const double w1 = fact * (1.0 + lt / (2.0 * k + 2.0));
            const double w2 = fact * lt / (2.0 * k + 1.0);
            bound = w1 + 2.0 * w2;
            return w1 * hyp2f1_half(k, z) + w2 * hyp3f2_half(k, z);
        });
}

// The same distribution function through the Gauss-only rearrangement: the
// 3F2 series is replaced by F(-k, -k-1/2; -k+1/2; z) with adjusted weights.
// Separately coded route for the identity tests; evaluated through the
// extended-precision terminating sums.
inline double sum_cdf_alt(const TelegraphParams& p, double x, double t,
                          const SeriesControl& ctl = {}) {
    p.validate();
    detail::require_time(t, "sum_cdf_alt");
    detail::require_finite(x, "sum_cdf_alt");
    ctl.validate();
    return detail::sum_cdf_series(
        p, x, t, ctl, "sum_cdf_alt",
        [](int k, double z, double lt, double fact, double& bound) {
            const double w1 = fact * (1.0 + lt / (k + 1.0));
            const double w2 = fact * lt / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
            // crude but rigorous: |F(-k,-k-1/2;-k+1/2;z)| <= (2k+1) 2^k on [0,1]
            bound = w1 + w2 * (2.0 * k + 1.0) * std::ldexp(1.0, std::min(k, 1000));
            return w1 * hyp2f1_term(k, 0.5, 1.5, z) +
                   w2 * hyp2f1_term(k, -k - 0.5, -k + 0.5, z);
        });
}

// Full mixed law of the equal-parameter sum.
inline MixedDistribution sum_law(const TelegraphParams& p, double t,
                                 const SeriesControl& ctl = {}) {
    p.validate();
    detail::require_time(t, "sum_law");
    ctl.validate();
    MixedDistribution law;
    law.atoms = sum_atoms(p, t);
    law.support = {-2.0 * p.c * t, 2.0 * p.c * t};
    law.pdf_ac = [p, t](double x) { return sum_pdf_ac(p, x, t); };
    law.cdf = [p, t, ctl](double x) { return sum_cdf(p, x, t, ctl); };
    return law;
}

// ---------------------------------------------------------------------------
// general case
// ---------------------------------------------------------------------------

// Characteristic function e^{i xi (x01+x02)} H1(xi) H2(xi); real when the
// combined start is 0.
inline std::complex<double> general_charfn(const SumParams& sp, double xi, double t) {
    sp.validate();
    const double h = tele_charfn(sp.p1, xi, t) * tele_charfn(sp.p2, xi, t);
    return std::polar(1.0, xi * sp.shift()) * h;
}

// Principal atoms of the general sum law: the extreme no-event points
// (x01+x02) +- (c1+c2) t with mass e^{-(l1+l2) t}/4 each, plus the central
// atom of mass e^{-(l1+l2)t}/2 when the speeds coincide (the two opposed
// no-event paths land on the same point).
inline std::vector<Atom> general_atoms(const SumParams& sp, double t) {
    sp.validate();
    detail::require_time(t, "general_atoms");
    const double m = 0.25 * std::exp(-(sp.p1.lambda + sp.p2.lambda) * t);
    const double s = sp.shift();
    const double span = (sp.p1.c + sp.p2.c) * t;
    if (sp.p1.c == sp.p2.c) return {{s - span, m}, {s, 2.0 * m}, {s + span, m}};
    return {{s - span, m}, {s + span, m}};
}

// Complete no-event singular set.  When c1 != c2 the opposed-direction
// no-event paths do not cancel; they sit at (x01+x02) +- (c1-c2) t with the
// same mass e^{-(l1+l2)t}/4 as the extremes.  general_atoms reports only
// the principal atoms; inversion and mass accounting need all of them.
inline std::vector<Atom> general_atoms_full(const SumParams& sp, double t) {
    sp.validate();
    detail::require_time(t, "general_atoms_full");
    if (sp.p1.c == sp.p2.c) return general_atoms(sp, t);
    const double m = 0.25 * std::exp(-(sp.p1.lambda + sp.p2.lambda) * t);
    const double s = sp.shift();
    const double span = (sp.p1.c + sp.p2.c) * t;
    const double inner = std::fabs(sp.p1.c - sp.p2.c) * t;
    return {{s - span, m}, {s - inner, m}, {s + inner, m}, {s + span, m}};
}

// Support interval of the general sum law.
inline Interval general_support(const SumParams& sp, double t) {
    sp.validate();
    detail::require_time(t, "general_support");
    const double span = (sp.p1.c + sp.p2.c) * t;
    return {sp.shift() - span, sp.shift() + span};
}

// Absolutely continuous density of the general sum law by numeric Fourier
// inversion of the characteristic function with the complete singular set
// removed.  x must stay strictly inside the support and at least delta away
// from every atom (default delta = 1e-3 (c1+c2) t); the density value is
// resolved to about 1e-5 absolute by default.
inline double general_pdf_ac(const SumParams& sp, double x, double t,
                             double delta = 0.0, InversionConfig cfg = {}) {
    sp.validate();
    detail::require_time(t, "general_pdf_ac");
    detail::require_finite(x, "general_pdf_ac");
    const Interval sup = general_support(sp, t);
    const double span = (sp.p1.c + sp.p2.c) * t;
    if (delta <= 0.0) delta = 1e-3 * span;
    if (!(x > sup.lo + delta) || !(x < sup.hi - delta))
        throw std::domain_error("general_pdf_ac: x must lie strictly inside the support");
    cfg.atom_list = general_atoms_full(sp, t);
    for (const auto& a : cfg.atom_list)
        if (std::fabs(x - a.location) <= delta)
            throw std::domain_error(
                "general_pdf_ac: x within the exclusion radius of an atom at " +
                std::to_string(a.location));
    if (cfg.abs_tol == InversionConfig{}.abs_tol) cfg.abs_tol = 2e-6;
    auto phi = [&sp, t](double xi) { return general_charfn(sp, xi, t); };
    return invert_charfn(phi, x, cfg);
}

} // namespace telesum
