#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace telesum {

// Convergence budget shared by all series evaluators.  A series either
// converges (successive term bound below rel_tol times the partial sum)
// or throws truncation_error; it never silently returns a partial sum.
struct SeriesControl {
    double rel_tol = 1e-14;
    int max_terms = 500;

    void validate() const {
        if (!(rel_tol > 0.0) || rel_tol >= 1.0)
            throw std::domain_error("SeriesControl: rel_tol must be in (0,1)");
        if (max_terms < 1)
            throw std::domain_error("SeriesControl: max_terms must be >= 1");
    }

    // TELEGRAPH_MAX_TERMS overrides max_terms; used by the CLI entry points.
    static SeriesControl from_env() {
        SeriesControl ctl;
        if (const char* s = std::getenv("TELEGRAPH_MAX_TERMS")) {
            char* end = nullptr;
            long v = std::strtol(s, &end, 10);
            if (end == s || *end != '\0' || v < 1)
                throw std::domain_error(
                    "TELEGRAPH_MAX_TERMS must be a positive integer, got '" +
                    std::string(s) + "'");
            ctl.max_terms = static_cast<int>(v);
        }
        return ctl;
    }
};

} // namespace telesum
