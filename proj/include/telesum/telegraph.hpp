#pragma once

// Law of a single telegraph process at time t: a particle starts at the
// origin with speed c in a random direction (+-1 with probability 1/2) and
// reverses direction at Poisson(lambda) event times.  The law is mixed: two
// atoms of mass e^{-lambda t}/2 at +-ct (no event by time t) and a Bessel
// density on (-ct, ct).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "telesum/distribution.hpp"
#include "telesum/errors.hpp"
#include "telesum/series.hpp"
#include "telesum/specfun.hpp"

namespace telesum {

struct TelegraphParams {
    double c = 1.0;      // propagation speed
    double lambda = 1.0; // direction-switch rate

    void validate() const {
        if (!(c > 0.0) || !std::isfinite(c))
            throw std::domain_error("TelegraphParams: c must be positive and finite");
        if (!(lambda > 0.0) || !std::isfinite(lambda))
            throw std::domain_error("TelegraphParams: lambda must be positive and finite");
    }
};

namespace detail {

inline void require_time(double t, const char* what) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw std::domain_error(std::string(what) + ": t must be positive and finite");
}

// cosh(sqrt(v)) continued through v < 0 as cos(sqrt(-v)); entire in v.
inline double cosh_sqrt(double v) {
    if (std::fabs(v) < 1e-12)
        return 1.0 + v * (1.0 / 2.0 + v * (1.0 / 24.0 + v / 720.0));
    if (v > 0.0) return std::cosh(std::sqrt(v));
    return std::cos(std::sqrt(-v));
}

// sinh(sqrt(v))/sqrt(v) continued through v < 0 as sin(sqrt(-v))/sqrt(-v);
// entire in v with value 1 at v = 0.
inline double sinhc_sqrt(double v) {
    if (std::fabs(v) < 1e-12)
        return 1.0 + v * (1.0 / 6.0 + v * (1.0 / 120.0 + v / 5040.0));
    if (v > 0.0) {
        const double s = std::sqrt(v);
        return std::sinh(s) / s;
    }
    const double s = std::sqrt(-v);
    return std::sin(s) / s;
}

} // namespace detail

// Atoms of the single-process law: mass e^{-lambda t}/2 at each of +-ct.
inline std::vector<Atom> tele_atoms(const TelegraphParams& p, double t) {
    p.validate();
    detail::require_time(t, "tele_atoms");
    const double m = 0.5 * std::exp(-p.lambda * t);
    return {{-p.c * t, m}, {p.c * t, m}};
}

// Absolutely continuous density on (-ct, ct), zero outside and at the
// edges.  With eta = (lambda/c) sqrt(c^2 t^2 - x^2),
//   f_ac = (lambda e^{-lambda t} / 2c) [ I0(eta) + c t I1(eta)/sqrt(...) ],
// where the second term is evaluated as lambda t * I1(eta)/eta to stay
// finite at the support edge.  The exponential is folded into the scaled
// Bessel functions (eta <= lambda t), so nothing overflows at large
// lambda t.
inline double tele_pdf_ac(const TelegraphParams& p, double x, double t) {
    p.validate();
    detail::require_time(t, "tele_pdf_ac");
    detail::require_finite(x, "tele_pdf_ac");
    const double ct = p.c * t;
    if (std::fabs(x) >= ct) return 0.0;
    const double eta = p.lambda / p.c * std::sqrt((ct - x) * (ct + x));
    const double lt = p.lambda * t;
    const double scaled = bessel_i0_scaled(eta) + lt * bessel_i1_over_z_scaled(eta);
    return 0.5 * p.lambda / p.c * std::exp(eta - lt) * scaled;
}

// Left-continuous distribution function Pr{X < x}.  On (-ct, ct] it is
//   1/2 + (lambda x e^{-lambda t} / 2c) Sum_k (lambda t/2)^{2k} / (k!)^2
//         (1 + lambda t/(2k+2)) F(-k, 1/2; 3/2; x^2/(c^2 t^2)),
// summed until the term bound (|F| <= 1 on [0,1]) drops below rel_tol.
inline double tele_cdf(const TelegraphParams& p, double x, double t,
                       const SeriesControl& ctl = {}) {
    p.validate();
    detail::require_time(t, "tele_cdf");
    detail::require_finite(x, "tele_cdf");
    ctl.validate();
    const double ct = p.c * t;
    if (x <= -ct) return 0.0;
    if (x > ct) return 1.0;

    const double lt = p.lambda * t;
    const double z = (x / ct) * (x / ct);
    const double q = 0.25 * lt * lt; // (lambda t / 2)^2
    double weight = 1.0, sum = 0.0;
    bool converged = false;
    for (int k = 0; k < ctl.max_terms; ++k) {
        const double coef = weight * (1.0 + lt / (2.0 * k + 2.0));
        sum += coef * hyp2f1_half(k, z);
        if (coef < ctl.rel_tol * (std::fabs(sum) + 1.0)) {
            converged = true;
            break;
        }
        weight *= q / ((k + 1.0) * (k + 1.0));
    }
    if (!converged)
        throw truncation_error("tele_cdf: series not converged within " +
                               std::to_string(ctl.max_terms) + " terms");
    const double v = 0.5 + 0.5 * p.lambda * x * std::exp(-lt) / p.c * sum;
    return std::min(1.0, std::max(0.0, v));
}

// Characteristic function: with omega^2 = lambda^2 - c^2 xi^2,
//   H = e^{-lambda t} [ cosh(t omega) + lambda sinh(t omega)/omega ]
// on the hyperbolic branch |xi| <= lambda/c, the trigonometric analogue
// outside, both meeting at e^{-lambda t}(1 + lambda t) on the cone
// |xi| = lambda/c.  The hyperbolic branch is computed in scaled form
// e^{t omega - lambda t}(...) so large lambda t cannot overflow; near the
// branch point the shared Taylor polynomial in v = t^2(lambda^2 - c^2 xi^2)
// is used.
inline double tele_charfn(const TelegraphParams& p, double xi, double t) {
    p.validate();
    detail::require_finite(xi, "tele_charfn");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::domain_error("tele_charfn: t must be >= 0 and finite");
    const double lt = p.lambda * t;
    const double d = (p.lambda - p.c * xi) * (p.lambda + p.c * xi);
    const double v = t * t * d;
    if (std::fabs(v) < 1e-12) {
        const double ch = 1.0 + v * (1.0 / 2.0 + v * (1.0 / 24.0 + v / 720.0));
        const double sh = 1.0 + v * (1.0 / 6.0 + v * (1.0 / 120.0 + v / 5040.0));
        return std::exp(-lt) * (ch + lt * sh);
    }
    if (v > 0.0) {
        const double s = std::sqrt(v); // = t omega <= lambda t
        const double em = std::exp(-2.0 * s);
        return std::exp(s - lt) * (0.5 * (1.0 + em) - 0.5 * std::expm1(-2.0 * s) * lt / s);
    }
    const double s = std::sqrt(-v);
    return std::exp(-lt) * (std::cos(s) + lt * std::sin(s) / s);
}

// Characteristic function of the process started at x0 instead of the
// origin: e^{i xi x0} H(xi, t).
inline std::complex<double> tele_charfn_shifted(const TelegraphParams& p, double x0,
                                                double xi, double t) {
    detail::require_finite(x0, "tele_charfn_shifted");
    const double h = tele_charfn(p, xi, t);
    return std::polar(1.0, xi * x0) * h;
}

// Full mixed law at time t as one object.
inline MixedDistribution tele_law(const TelegraphParams& p, double t,
                                  const SeriesControl& ctl = {}) {
    p.validate();
    detail::require_time(t, "tele_law");
    ctl.validate();
    MixedDistribution law;
    law.atoms = tele_atoms(p, t);
    law.support = {-p.c * t, p.c * t};
    law.pdf_ac = [p, t](double x) { return tele_pdf_ac(p, x, t); };
    law.cdf = [p, t, ctl](double x) { return tele_cdf(p, x, t, ctl); };
    return law;
}

} // namespace telesum
