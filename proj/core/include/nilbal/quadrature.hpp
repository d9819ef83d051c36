#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nilbal {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

// Adaptive 15-point Gauss-Kronrod on [a, b] (either end may be infinite).
// Throws ConvergenceError if the estimated absolute error stays above
// abs_tol (or the round-off floor of the integrand's L1 mass) after
// refinement.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol);

// Cuts a, a + w, a + 3w, a + 7w, ..., b: widths doubling from w. For
// integrands with a layer of width ~w at a, or slow decay over long ranges.
std::vector<double> geometric_breakpoints(double a, double b, double w);

// Sum of integrate_adaptive over consecutive cuts, tolerance split evenly.
QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     std::span<const double> cuts, double abs_tol);

}  // namespace nilbal
