#pragma once

// Seedable Monte Carlo simulation of telegraph paths and their sums.
//
// Randomness is counter-based: every path owns a generator keyed by
// (seed, path index, sub-stream), so draws are independent of execution
// order and the same SimConfig yields bit-identical samples for any number
// of worker threads.  Zero-event paths are placed at +-ct exactly (not via
// summed increments); atom bookkeeping rides on the event count, never on
// floating-point comparisons.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "telesum/distribution.hpp"
#include "telesum/sumdist.hpp"
#include "telesum/telegraph.hpp"

namespace telesum {

// Counter-based generator: splitmix64 finalizer over key + counter stride.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t path, std::uint64_t stream)
        : key_(mix(mix(seed + golden * path) + golden * stream)) {}

    std::uint64_t next() { return mix(key_ + (++ctr_) * golden); }

    // uniform on [0, 1), 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

struct SimConfig {
    std::uint64_t seed = 0;
    std::int64_t n_paths = 1;
    double t = 1.0;
    int n_threads = 0; // 0: hardware concurrency

    void validate() const {
        if (n_paths < 1) throw std::domain_error("SimConfig: n_paths must be >= 1");
        if (!(t >= 0.0) || !std::isfinite(t))
            throw std::domain_error("SimConfig: t must be >= 0 and finite");
    }
};

struct PathSample {
    double position = 0.0;
    std::uint64_t event_count = 0; // direction reversals up to t
};

namespace detail {

// One telegraph path from the origin: initial direction +-1 with equal
// probability, exponential(lambda) inter-event times, reversal at events.
inline PathSample telegraph_path(const TelegraphParams& p, double t, CounterRng& rng) {
    double dir = (rng.uniform01() < 0.5) ? 1.0 : -1.0;
    const double ct = p.c * t;
    double pos = 0.0, clock = 0.0;
    std::uint64_t events = 0;
    for (;;) {
        const double gap = -std::log1p(-rng.uniform01()) / p.lambda;
        if (clock + gap >= t) break;
        clock += gap;
        pos += dir * p.c * gap;
        dir = -dir;
        ++events;
    }
    if (events == 0) return {dir * ct, 0};
    pos += dir * p.c * (t - clock);
    // keep event-bearing paths strictly off the atoms at +-ct
    if (pos >= ct) pos = std::nextafter(ct, 0.0);
    if (pos <= -ct) pos = std::nextafter(-ct, 0.0);
    return {pos, events};
}

template <class Body>
void parallel_paths(std::int64_t n, int n_threads, Body body) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::int64_t workers =
        std::max<std::int64_t>(1, std::min<std::int64_t>(n, n_threads > 0 ? n_threads : hw));
    if (workers == 1) {
        body(0, n);
        return;
    }
    const std::int64_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (std::int64_t w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([=] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace detail

// Terminal positions of n_paths independent telegraph paths at time t.
inline std::vector<PathSample> simulate_telegraph(const TelegraphParams& p,
                                                  const SimConfig& cfg) {
    p.validate();
    cfg.validate();
    std::vector<PathSample> out(static_cast<std::size_t>(cfg.n_paths));
    detail::parallel_paths(cfg.n_paths, cfg.n_threads, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i), 0);
            out[static_cast<std::size_t>(i)] = detail::telegraph_path(p, cfg.t, rng);
        }
    });
    return out;
}

// Terminal positions of the sum of two independent telegraph paths; each
// summand draws from its own sub-stream.  event_count is the joint count,
// so zero identifies the singular set exactly.
inline std::vector<PathSample> simulate_sum(const SumParams& sp, const SimConfig& cfg) {
    sp.validate();
    cfg.validate();
    std::vector<PathSample> out(static_cast<std::size_t>(cfg.n_paths));
    detail::parallel_paths(cfg.n_paths, cfg.n_threads, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) {
            CounterRng r1(cfg.seed, static_cast<std::uint64_t>(i), 1);
            CounterRng r2(cfg.seed, static_cast<std::uint64_t>(i), 2);
            const PathSample a = detail::telegraph_path(sp.p1, cfg.t, r1);
            const PathSample b = detail::telegraph_path(sp.p2, cfg.t, r2);
            out[static_cast<std::size_t>(i)] = {sp.x01 + a.position + sp.x02 + b.position,
                                                a.event_count + b.event_count};
        }
    });
    return out;
}

// Equal-parameter convenience overload.
inline std::vector<PathSample> simulate_sum(const TelegraphParams& p, const SimConfig& cfg) {
    return simulate_sum(SumParams{p, p, 0.0, 0.0}, cfg);
}

// Supremum distance between the empirical CDF of the samples and a mixed
// model law, taking both one-sided limits at every sample point and atom
// location (the model CDF is the left-continuous Pr{S < x}; its right
// limit adds the atom mass).
inline double ks_distance(const std::vector<PathSample>& samples,
                          const MixedDistribution& law) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
    if (!law.cdf) throw std::invalid_argument("ks_distance: law has no cdf");
    std::vector<double> xs;
    xs.reserve(samples.size());
    for (const auto& s : samples) xs.push_back(s.position);
    std::sort(xs.begin(), xs.end());

    std::vector<double> points(xs);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (const auto& a : law.atoms) points.push_back(a.location);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    const double n = static_cast<double>(xs.size());
    double dist = 0.0;
    for (double v : points) {
        const double emp_lo =
            static_cast<double>(std::lower_bound(xs.begin(), xs.end(), v) - xs.begin()) / n;
        const double emp_hi =
            static_cast<double>(std::upper_bound(xs.begin(), xs.end(), v) - xs.begin()) / n;
        const double mod_lo = law.cdf(v);
        const double mod_hi = mod_lo + law.atom_mass_at(v);
        dist = std::max(dist, std::max(std::fabs(emp_lo - mod_lo), std::fabs(emp_hi - mod_hi)));
    }
    return dist;
}

} // namespace telesum
