#pragma once

// The totally geodesic surface T = {(x, y, xy/2)} of Nil3 seen as a
// rotationally symmetric model surface dr^2 + g(r)^2 dtheta^2, together with
// the S^1 action and the splitting Nil3 = T x center.

#include <array>
#include <functional>
#include <numbers>

#include "nilbal/group.hpp"

namespace nilbal {

// Chart coordinates on T (zeta = 0).
struct SurfacePoint {
    double x = 0.0;
    double y = 0.0;

    ChartPoint chart() const noexcept { return {x, y, 0.0}; }
};

// r is the geodesic distance to e, theta_pol = atan2(y, x) in [0, 2pi).
struct PolarCoord {
    double r = 0.0;
    double theta_pol = 0.0;
};

// Element (0, 0, t) of the center.
struct CenterElement {
    double t = 0.0;
};

// Periodic boundary values, as a function of the plane polar angle.
struct BoundaryData {
    std::function<double(double)> phi;

    static BoundaryData constant(double value) {
        return {[value](double) { return value; }};
    }
    double operator()(double theta) const { return phi(theta); }
};

inline constexpr double sqrt2 = std::numbers::sqrt2;

PolarCoord to_polar(const SurfacePoint& p) noexcept;
SurfacePoint from_polar(const PolarCoord& q) noexcept;

// Unit-speed geodesic of T through e with launch angle theta:
// x = (t/2)(cos theta - sin theta), y = (t/2)(sin theta + cos theta),
// matrix z = xy/2. The launch angle is the plane polar angle of the direction
// minus pi/4; use launch_to_polar_angle to convert.
GroupElement geodesic_closed_form(double theta, double t) noexcept;

inline double launch_to_polar_angle(double theta) noexcept {
    return theta + std::numbers::pi / 4.0;
}

// r = sqrt(2) * sqrt(x^2 + y^2).
double distance_to_identity(const SurfacePoint& p) noexcept;

// Rotation of the chart plane by theta, zeta unchanged. Isometric, leaves T
// invariant and fixes the center pointwise.
ChartPoint rotate(double theta, const ChartPoint& p) noexcept;

// The S^1 action on group elements: to_matrix(rotate(theta, to_chart(g))).
GroupElement circle_action(double theta, const GroupElement& g) noexcept;

// Psi(p, t) = (x, y, xy/2 + t).
GroupElement splitting_isometry(const SurfacePoint& p, const CenterElement& c) noexcept;

struct SplitPoint {
    SurfacePoint surface;
    CenterElement center;
};
SplitPoint splitting_inverse(const GroupElement& g) noexcept;

// Warp of T in geodesic polar coordinates: g(r) = sqrt(r^2 + r^4/8),
// the length of the S^1 orbit through radius r divided by 2 pi.
struct WarpValues {
    double g;
    double dg;
    double d2g;
};
WarpValues warp(double r);

// -g''/g.
double warp_curvature(double r);

// K = <R(X,Y)X, Y> / (|X|^2 |Y|^2 - <X,Y>^2) with the covariant derivatives
// of the closed-form connection taken by central differences of step h.
double gaussian_curvature_riemann(const SurfacePoint& p, double h = 1e-4);

// Two closed forms for the curvature of T: the stated constant
// -4 (r^2+12)/(r^2+8)^2 and the warp value -g''/g = -2 (r^2+12)/(r^2+8)^2.
// Only the second is consistent with the metric coefficients.
struct CurvatureCandidates {
    double k_stated;
    double k_warp;
};
CurvatureCandidates curvature_closed_forms(const SurfacePoint& p) noexcept;

// <nabla_U V, N> for U, V in {X, Y} and N = Z / sqrt(2).
std::array<std::array<double, 2>, 2> second_fundamental_form_T(const SurfacePoint& p) noexcept;

}  // namespace nilbal
