#pragma once

// Adaptive Gauss-Kronrod quadrature on a finite interval.  Panels are
// evaluated with the 31-point Kronrod rule and its embedded 15-point Gauss
// rule; the worst panel is bisected until the summed error estimate meets
// the request.  Node/weight data and the error heuristic follow the
// classical QUADPACK qk31 rule.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "telesum/errors.hpp"

namespace telesum {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int panels_used = 0;
};

struct QuadratureOptions {
    int max_panels = 20000;
    // Panels wider than this are split before their error is trusted;
    // needed for oscillatory integrands.  0 disables the limit.
    double max_panel_width = 0.0;
};

namespace detail {

// 31-point Kronrod abscissae/weights and embedded 15-point Gauss weights
// (positive half; the rule is symmetric).
struct K31 {
    static constexpr double xgk[16] = {
        0.998002298693397060285172840152271, 0.987992518020485428489565718586613,
        0.967739075679139134257347978784337, 0.937273392400705904307758947710209,
        0.897264532344081900882509656454496, 0.848206583410427216200648320774217,
        0.790418501442465932967649294817947, 0.724417731360170047416186054613938,
        0.650996741297416970533735895313275, 0.570972172608538847537226737253911,
        0.485081863640239680693655740232351, 0.394151347077563369897207370981045,
        0.299180007153168812166780024266389, 0.201194093997434522300628303394596,
        0.101142066918717499027074231447392, 0.0};
    static constexpr double wgk[16] = {
        0.005377479872923348987792051430128, 0.015007947329316122538374763075807,
        0.025460847326715320186874001019653, 0.035346360791375846222037948478360,
        0.044589751324764876608227299373280, 0.053481524690928087265343147239430,
        0.062009567800670640285139230960803, 0.069854121318728258709520077099147,
        0.076849680757720378894432777482659, 0.083080502823133021038289247286104,
        0.088564443056211770647275443693774, 0.093126598170825321225486872747346,
        0.096642726983623678505179907627589, 0.099173598721791959332393173484603,
        0.100769845523875595044946662617570, 0.101330007014791549017374792767493};
    static constexpr double wg[8] = {
        0.030753241996117268354628393577204, 0.070366047488108124709267416450667,
        0.107159220467171935011869546685869, 0.139570677926154314447804794511028,
        0.166269205816993933553200860481209, 0.186161000015562211026800561866423,
        0.198431485327111576456118326443839, 0.202578241925561272880620199967519};
};

struct Panel {
    double a = 0.0, b = 0.0;
    double value = 0.0, err = 0.0;

    bool operator<(const Panel& o) const { return err < o.err; }
};

// One qk31 evaluation with the QUADPACK error heuristic: the raw |K31-G15|
// difference is deflated through resasc (integral of |f - mean|), which
// models how much of the difference is genuine structure, then floored at
// 50 eps |f|_1 so an exactly-integrated panel still reports roundoff.
template <class F>
Panel qk31(const F& f, double a, double b) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double centr = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    double fv1[15], fv2[15];
    const double fc = f(centr);
    double resg = K31::wg[7] * fc;
    double resk = K31::wgk[15] * fc;
    double resabs = std::fabs(resk);
    for (int j = 1; j <= 7; ++j) {
        const int jtw = 2 * j - 1;
        const double absc = hlgth * K31::xgk[jtw];
        const double f1 = f(centr - absc), f2 = f(centr + absc);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += K31::wg[j - 1] * (f1 + f2);
        resk += K31::wgk[jtw] * (f1 + f2);
        resabs += K31::wgk[jtw] * (std::fabs(f1) + std::fabs(f2));
    }
    for (int j = 1; j <= 8; ++j) {
        const int jtwm1 = 2 * j - 2;
        const double absc = hlgth * K31::xgk[jtwm1];
        const double f1 = f(centr - absc), f2 = f(centr + absc);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += K31::wgk[jtwm1] * (f1 + f2);
        resabs += K31::wgk[jtwm1] * (std::fabs(f1) + std::fabs(f2));
    }
    const double reskh = 0.5 * resk;
    double resasc = K31::wgk[15] * std::fabs(fc - reskh);
    for (int j = 0; j < 15; ++j)
        resasc += K31::wgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));

    Panel p;
    p.a = a;
    p.b = b;
    p.value = resk * hlgth;
    resabs *= std::fabs(hlgth);
    resasc *= std::fabs(hlgth);
    double abserr = std::fabs((resk - resg) * hlgth);
    if (resasc != 0.0 && abserr != 0.0)
        abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
    abserr = std::max(abserr, eps * 50.0 * resabs);
    p.err = abserr;
    return p;
}

} // namespace detail

// Integrate f over [a, b] to absolute tolerance abs_tol.  Throws
// numeric_error if the panel budget is exhausted first (the message carries
// the achieved estimate), domain_error on invalid bounds or tolerance.
inline QuadratureResult integrate(const std::function<double(double)>& f, double a,
                                  double b, double abs_tol,
                                  QuadratureOptions opts = {}) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::domain_error("integrate: bounds must be finite");
    if (!(abs_tol > 0.0)) throw std::domain_error("integrate: abs_tol must be > 0");
    if (opts.max_panels < 1) throw std::domain_error("integrate: max_panels must be >= 1");

    QuadratureResult res;
    if (a == b) return res;

    const double sign = (b >= a) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);

    std::priority_queue<detail::Panel> heap;
    // Seed with enough panels to respect the width limit.
    int n0 = 1;
    if (opts.max_panel_width > 0.0)
        n0 = std::max(
            1, std::min(opts.max_panels,
                        static_cast<int>(std::ceil((hi - lo) / opts.max_panel_width))));
    double total = 0.0, toterr = 0.0;
    for (int i = 0; i < n0; ++i) {
        const double pa = lo + (hi - lo) * i / n0;
        const double pb = (i + 1 == n0) ? hi : lo + (hi - lo) * (i + 1) / n0;
        auto p = detail::qk31(f, pa, pb);
        total += p.value;
        toterr += p.err;
        heap.push(p);
    }
    int panels = n0;
    while (toterr > abs_tol && panels < opts.max_panels) {
        const detail::Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at floating-point resolution; cannot split further
            heap.push(worst);
            break;
        }
        auto p1 = detail::qk31(f, worst.a, mid);
        auto p2 = detail::qk31(f, mid, worst.b);
        total += p1.value + p2.value - worst.value;
        toterr += p1.err + p2.err - worst.err;
        heap.push(p1);
        heap.push(p2);
        ++panels;
    }
    if (toterr > abs_tol)
        throw numeric_error("integrate: panel budget " + std::to_string(opts.max_panels) +
                            " exhausted; achieved error estimate " +
                            std::to_string(toterr) + " > requested " +
                            std::to_string(abs_tol));
    res.value = sign * total;
    res.abs_error_estimate = toterr;
    res.panels_used = panels;
    return res;
}

} // namespace telesum
