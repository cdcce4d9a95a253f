#pragma once

#include <functional>

#include "mmlink/errors.hpp"

namespace mmlink {

// Tolerances for adaptive integration. Downstream accuracy requirements are >= 1e-3,
// so the defaults leave a wide margin.
struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;

    void validate() const {
        if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be > 0");
        if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
        if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

// Globally adaptive Gauss-Kronrod (7-15) integration of f over [a, b].
// Splits the segment with the largest error estimate until the accumulated error is
// within tolerance; throws QuadratureError (carrying the best estimate and its error
// bound) if max_subdivisions is exhausted first. Requires a <= b and finite f.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

} // namespace mmlink
