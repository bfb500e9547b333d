#pragma once

#include <functional>

namespace nashbound {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int intervals = 0;
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f on [a,b] to the given
// absolute tolerance. Throws QuadratureFailure if the interval budget is
// exhausted before the tolerance is met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-10, int max_intervals = 20000);

}  // namespace nashbound
