#pragma once

// Single-point inverse Fourier transform of a characteristic function.
// Convention: phi(xi) = Integral e^{i xi x} dF(x), so the density is
// p(x) = (1/2 pi) Integral e^{-i xi x} phi(xi) dxi.  Atoms are removed
// analytically before quadrature (their non-decaying oscillation would
// otherwise dominate the tail), and phi(-xi) = conj(phi(xi)) reduces the
// integral to [0, inf).
//
// The truncated integral uses a cos^2 taper over the outer half of the
// truncation window, which upgrades the tail error of the oscillatory
// 1/xi integrand from O(1/Xi) to O(1/Xi^2).  The window is doubled until
// two successive results agree within the tolerance; that difference is an
// honest convergence estimate.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "telesum/distribution.hpp"
#include "telesum/errors.hpp"
#include "telesum/quadrature.hpp"

namespace telesum {

struct InversionConfig {
    // Initial truncation of the xi integral; doubled adaptively. 0 = auto.
    double xi_cutoff = 0.0;
    // Minimum number of quadrature panels across the window (>= 64).
    int grid_points = 256;
    // Atoms subtracted from phi before inversion.
    std::vector<Atom> atom_list;
    // Absolute tolerance on the returned density value.
    double abs_tol = 1e-7;
    // Window doublings before giving up.
    int max_doublings = 18;

    void validate() const {
        if (grid_points < 64)
            throw std::domain_error("InversionConfig: grid_points must be >= 64");
        if (!(abs_tol > 0.0))
            throw std::domain_error("InversionConfig: abs_tol must be > 0");
        if (xi_cutoff < 0.0 || !std::isfinite(xi_cutoff))
            throw std::domain_error("InversionConfig: xi_cutoff must be finite and >= 0");
        if (max_doublings < 1)
            throw std::domain_error("InversionConfig: max_doublings must be >= 1");
    }
};

namespace fdetail {

struct TailIntegrand {
    const std::function<std::complex<double>(double)>* phi;
    const std::vector<Atom>* atoms;
    double x;

    double operator()(double xi) const {
        std::complex<double> v = (*phi)(xi);
        for (const auto& a : *atoms)
            v -= std::complex<double>(a.mass * std::cos(a.location * xi),
                                      a.mass * std::sin(a.location * xi));
        // Re[e^{-i xi x} v]
        return v.real() * std::cos(xi * x) + v.imag() * std::sin(xi * x);
    }
};

} // namespace fdetail

// Density of the absolutely continuous part at x.  phi must be the
// characteristic function of a real-valued law whose atoms are exactly
// cfg.atom_list; the remainder must be integrable.  Throws numeric_error
// when the window doublings are exhausted before two successive windows
// agree (the message suggests raising xi_cutoff or abs_tol).
inline double invert_charfn(const std::function<std::complex<double>(double)>& phi,
                            double x, const InversionConfig& cfg = {}) {
    cfg.validate();
    if (!std::isfinite(x)) throw std::domain_error("invert_charfn: x must be finite");

    fdetail::TailIntegrand f{&phi, &cfg.atom_list, x};

    // Highest oscillation frequency present: the target point, the atom
    // locations, and the support radius they imply.
    double freq = std::fabs(x) + 1.0;
    for (const auto& a : cfg.atom_list)
        freq = std::max(freq, std::fabs(a.location) + std::fabs(x) + 1.0);

    const double xi0 = (cfg.xi_cutoff > 0.0) ? cfg.xi_cutoff : 64.0;
    const double quad_tol = 0.2 * cfg.abs_tol;

    auto window_integral = [&](double cut) {
        const double half = 0.5 * cut;
        QuadratureOptions opts;
        // half a period of the fastest oscillation per panel; the 31-point
        // rule is exact far beyond that, and adaptivity bisects if not
        opts.max_panel_width = M_PI / freq;
        opts.max_panels = 400000;
        const int min_panels = cfg.grid_points;
        opts.max_panel_width = std::min(opts.max_panel_width, cut / min_panels);
        const double head = integrate(f, 0.0, half, quad_tol, opts).value;
        auto tapered = [&](double xi) {
            const double u = (xi - half) / half; // 0..1 over the taper
            const double w = 0.5 * (1.0 + std::cos(M_PI * u));
            return f(xi) * w;
        };
        const double tail = integrate(tapered, half, cut, quad_tol, opts).value;
        return (head + tail) / M_PI;
    };

    double cut = xi0;
    double prev = window_integral(cut);
    for (int i = 0; i < cfg.max_doublings; ++i) {
        cut *= 2.0;
        const double curr = window_integral(cut);
        if (std::fabs(curr - prev) < 0.6 * cfg.abs_tol) return curr;
        prev = curr;
    }
    throw numeric_error(
        "invert_charfn: window grew to " + std::to_string(cut) +
        " without convergence at abs_tol " + std::to_string(cfg.abs_tol) +
        "; raise xi_cutoff/max_doublings or loosen abs_tol");
}

// Forward transform of a mixed law by direct quadrature: the atom sum is
// exact, the density integrated numerically.  Test/verify oracle for the
// closed-form characteristic functions.
inline std::complex<double> charfn_of_law(const MixedDistribution& law, double xi,
                                          double abs_tol = 1e-10) {
    if (!law.pdf_ac) throw std::domain_error("charfn_of_law: law has no density");
    std::complex<double> v = 0.0;
    for (const auto& a : law.atoms)
        v += a.mass * std::complex<double>(std::cos(a.location * xi),
                                           std::sin(a.location * xi));
    QuadratureOptions opts;
    if (std::fabs(xi) > 1.0) opts.max_panel_width = M_PI / std::fabs(xi);
    const double re = integrate([&](double x) { return law.pdf_ac(x) * std::cos(xi * x); },
                                law.support.lo, law.support.hi, abs_tol, opts)
                          .value;
    const double im = integrate([&](double x) { return law.pdf_ac(x) * std::sin(xi * x); },
                                law.support.lo, law.support.hi, abs_tol, opts)
                          .value;
    return v + std::complex<double>(re, im);
}

} // namespace telesum
