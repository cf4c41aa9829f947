#pragma once

#include <functional>
#include <span>

namespace aimh {

// Adaptive Gauss-Kronrod integral of g over [a, b], split at the given
// interior breakpoints. `error` receives the summed error estimate.
double integrate(const std::function<double(double)>& g, double a, double b, std::span<const double> breaks = {},
                 double rel_tol = 1e-12, double* error = nullptr);

}  // namespace aimh
