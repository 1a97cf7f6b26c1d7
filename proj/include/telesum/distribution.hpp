#pragma once

// Value types describing a mixed (atomic + absolutely continuous) law on the
// real line, the universal return shape of the distribution constructors.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace telesum {

struct Atom {
    double location = 0.0;
    double mass = 0.0;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return x >= lo && x <= hi; }
    double length() const { return hi - lo; }
};

// Atoms plus a density for the absolutely continuous part, supported on a
// bounded interval.  Invariants: atom masses are positive and sum with the
// integrated density to 1; pdf_ac vanishes outside (and at the edges of)
// the support; cdf, when present, is the left-continuous distribution
// function Pr{X < x} of the whole mixture.
struct MixedDistribution {
    std::vector<Atom> atoms;
    std::function<double(double)> pdf_ac;
    Interval support;
    std::function<double(double)> cdf;

    double atom_mass_total() const {
        double m = 0.0;
        for (const auto& a : atoms) m += a.mass;
        return m;
    }

    // Total mass sitting exactly at x, 0 if no atom lives there.
    double atom_mass_at(double x) const {
        double m = 0.0;
        for (const auto& a : atoms)
            if (a.location == x) m += a.mass;
        return m;
    }

    void validate() const {
        double m = 0.0;
        for (const auto& a : atoms) {
            if (!(a.mass > 0.0) || !std::isfinite(a.mass))
                throw std::domain_error("MixedDistribution: atom masses must be positive");
            if (!support.contains(a.location))
                throw std::domain_error("MixedDistribution: atom outside support");
            m += a.mass;
        }
        if (m > 1.0 + 1e-12)
            throw std::domain_error("MixedDistribution: atom masses exceed 1");
        if (!(support.lo <= support.hi))
            throw std::domain_error("MixedDistribution: empty support interval");
    }
};

} // namespace telesum
