#pragma once

#include <cstdint>

#include "deformed/errors.hpp"

namespace deformed {

/// Convergence controls for series evaluation.
struct EvalPolicy {
    double rel_tol = 1e-12;
    std::int64_t max_terms = 1'000'000;

    void validate() const {
        if (!(rel_tol > 0.0)) throw PreconditionError("rel_tol must be positive");
        if (max_terms < 1) throw PreconditionError("max_terms must be at least 1");
    }
};

struct SeriesDiagnostics {
    std::int64_t terms_used = 0;
    bool converged = false;
    double last_term_magnitude = 0.0;
    /// sum |term| / |sum|; large values flag cancellation.
    double cancellation = 1.0;
};

template <class Scalar>
struct SeriesResult {
    Scalar value;
    SeriesDiagnostics diagnostics;
};

}  // namespace deformed
