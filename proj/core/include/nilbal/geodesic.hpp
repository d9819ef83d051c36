#pragma once

#include <vector>

#include "nilbal/group.hpp"
#include "nilbal/metric.hpp"

namespace nilbal {

struct GeodesicState {
    ChartPoint point;
    TangentVector velocity;
};

// Acceleration of a geodesic through p with velocity v:
// (d^2 x^k / dt^2) = -gamma[k][i][j] v^i v^j. Result is based at p.
TangentVector geodesic_ode_rhs(const ChartPoint& p, const TangentVector& v);

// Same, against a caller-supplied connection (used to probe perturbed
// coefficients).
TangentVector geodesic_ode_rhs(const ChartPoint& p, const TangentVector& v,
                               const ChristoffelAtPoint& gamma);

// Fixed-step classical RK4 for the geodesic equation on [0, T].
// Returns n_steps + 1 states, the first equal to (p0, v0).
std::vector<GeodesicState> integrate_geodesic(const ChartPoint& p0, const TangentVector& v0,
                                              double T, int n_steps);

}  // namespace nilbal
