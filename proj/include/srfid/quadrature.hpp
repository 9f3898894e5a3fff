#pragma once

#include <functional>

#include "srfid/errors.hpp"

namespace srfid::quad {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

// Adaptive Gauss-Kronrod (G30, K61) integration of f over the finite
// interval [a, b]. Throws ConvergenceError (carrying the achieved error
// estimate) if the result cannot be trusted to max(abs_tol, rel_tol |I|)
// beyond the 1e-12 * L1 cancellation floor.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-10, double abs_tol = 0.0, int max_depth = 15);

} // namespace srfid::quad
