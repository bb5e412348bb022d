#pragma once

#include <functional>

namespace relaysim {

// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b].
// Subdivides the worst interval until the accumulated error estimate drops
// below max(atol, rtol*|integral|); throws QuadratureError (with the residual
// error estimate attached) if the budget of subdivisions is exhausted first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rtol = 1e-8, double atol = 1e-30, int max_intervals = 4000);

} // namespace relaysim
