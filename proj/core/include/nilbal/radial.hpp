#pragma once

// One-dimensional reductions on the model surface T: catenoid profiles,
// the radial barrier used by the exterior exhaustion, and rotationally
// symmetric minimal graphs via the flux first integral
//
//     g(r) u'(r) / sqrt(1 + u'(r)^2) = const.
//
// Heights are in fiber arc-length units (sqrt(2) times the chart zeta
// offset) unless stated otherwise.

#include <span>
#include <vector>

#include "nilbal/error.hpp"

namespace nilbal {

struct RadialProfile {
    std::vector<double> r;
    std::vector<double> value;
    std::vector<double> deriv;

    std::size_t size() const noexcept { return r.size(); }
    // Piecewise cubic Hermite interpolation of (value, deriv).
    double interpolate(double at) const;
};

// ---------------------------------------------------------------------------
// Catenoids

// Neck radius t0 and flux parameter c of a rotational catenoid.
struct CatenoidParams {
    double c = 1.0;
    double t0 = 0.0;
};

// Smallest admissible neck radius, sqrt(sqrt(c^2 + 16) - 4); solves
// t^2 (t^2 + 8) = c^2.
double t0_min(double c);

// Throws DomainError unless c > 0 and t0 >= t0_min(c).
void validate(const CatenoidParams& p);

enum class NeckQuadrature {
    automatic,    // substituted near the minimal neck, plain otherwise
    substituted,  // s^2 = t0^2 + tau^2, removes the (s - t0)^{-1/2} singularity
    plain,
};

// Chart zeta offset h(t) = (c/sqrt2) * int_{t0}^{t} ds / sqrt(s^2 (s^2+8) - c^2)
// of the profile point (t/2, t/2, h(t)); t is the geodesic radius of the point.
double catenoid_height(const CatenoidParams& p, double t, double tol,
                       NeckQuadrature method = NeckQuadrature::automatic);

// u'(t) = sqrt(2) h'(t) = c / sqrt(t^2 (t^2+8) - c^2), in arc-length units.
double catenoid_slope(const CatenoidParams& p, double t);

// g(r) u'/sqrt(1 + u'^2) along the profile; requires r > t0.
double catenoid_flux_check(const CatenoidParams& p, double r);

// Profile u = sqrt(2) h sampled at increasing nodes >= t0.
RadialProfile catenoid_profile(const CatenoidParams& p, std::span<const double> nodes,
                               double tol);

// ---------------------------------------------------------------------------
// Barrier

// f(r) = int_0^r c e^{sqrt2 alpha arctan((t+alpha)/2^{3/2})} / ((t+alpha)^2 + 8) dt.
struct BarrierParams {
    double s = 0.0;          // boundary gradient f'(0)
    double alpha = 1.0;      // enclosing-radius offset
    double c_barrier = 0.0;  // scale constant

    // c chosen so that f'(0) = s.
    static BarrierParams normalized(double s, double alpha);
};

struct BarrierValue {
    double f;
    double df;
};

BarrierValue barrier_f(const BarrierParams& p, double r, double tol = 1e-12);
double barrier_df(const BarrierParams& p, double r);
// Product-rule derivative of barrier_df, written independently of the ODE.
double barrier_d2f(const BarrierParams& p, double r);
// f'' + f' * 2 (r - alpha) / ((r + alpha)^2 + 8); vanishes identically.
double barrier_ode_residual(const BarrierParams& p, double r);
// c e^{sqrt2 alpha pi/2} int_0^inf dt / ((t+alpha)^2 + 8) >= sup f.
double barrier_sup_bound(const BarrierParams& p);
RadialProfile barrier_profile(const BarrierParams& p, std::span<const double> nodes,
                              double tol = 1e-12);

// Lower bound 2 (r - alpha) / ((r + alpha)^2 + 8) for the geodesic curvature of
// the level set at distance r from the boundary.
double level_curvature_bound(double r, double alpha);

struct SubsolutionReport {
    std::vector<double> r;             // distance to the disk boundary
    std::vector<double> operator_value;  // M[f(dist)] at r
    double min_value = 0.0;
    bool nonnegative = true;  // min_value >= -1e-10
};

// M[f(dist(., dOmega))] for Omega the geodesic disk of radius r0 about e,
// using the exact curvature g'/g of the level circles. Requires
// params.alpha == r0.
SubsolutionReport subsolution_check(const BarrierParams& p, double r0,
                                    std::span<const double> grid);

// g'(r + r0)/g(r + r0) - level_curvature_bound(r, alpha).
double curvature_bound_margin(double r, double r0, double alpha);

// ---------------------------------------------------------------------------
// Radial minimal graphs

// Raised when the requested height difference exceeds what a minimal graph
// over the annulus can reach (|flux| = g(r_in)).
class NoAdmissibleFlux : public DomainError {
public:
    NoAdmissibleFlux(const std::string& what, double max_difference)
        : DomainError(what), max_difference_(max_difference) {}
    double max_difference() const noexcept { return max_difference_; }

private:
    double max_difference_;
};

// int_{r_a}^{r_b} flux / sqrt(g^2 - flux^2) dr, for |flux| <= g(r_a) and
// r_a <= r_b.
double flux_height_increment(double r_a, double r_b, double flux, double tol);

// The radial solution with u(r_in) = u_in and the given flux.
RadialProfile radial_profile_from_flux(double u_in, double flux, std::span<const double> nodes,
                                       double tol);

// Flux of the radial solution whose slope at r_in is `slope`.
double flux_for_slope(double r_in, double slope);

struct RadialSolution {
    RadialProfile profile;
    double flux = 0.0;
    double boundary_residual = 0.0;
};

// Dirichlet problem for the radial minimal surface equation on
// [r_in, r_out]: finds the flux matching u(r_out) - u(r_in) by bracketed root
// finding on [-g(r_in), g(r_in)]. `nodes` defaults to 201 uniform points.
RadialSolution radial_mse_solve(double r_in, double r_out, double u_in, double u_out, double tol,
                                std::span<const double> nodes = {});

std::vector<double> uniform_nodes(double a, double b, std::size_t count);

}  // namespace nilbal
