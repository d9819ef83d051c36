#pragma once

// Minimal surface equation M[u] = div(grad u / sqrt(1 + |grad u|^2)) on
// domains of T in geodesic polar coordinates, and the boundary-value programs
// built on it: finite Dirichlet problems, the exterior problem by exhaustion,
// and truncated asymptotic Dirichlet problems.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilbal/grid.hpp"
#include "nilbal/model_surface.hpp"

namespace nilbal {

struct NewtonStep {
    int iteration = 0;
    double residual = 0.0;  // sup norm before the step
    double damping = 0.0;   // step length accepted
};

struct SolverConfig {
    double newton_tol = 1e-10;
    int max_newton = 40;
    double damping = 1.0;
    int radial_intervals = 256;
    int angular_nodes = 64;
    std::vector<double> schedule{4.0, 8.0, 16.0, 32.0};
    double bisection_tol = 1e-9;
    // Radial spacing of the disk grids used by asymptotic_solve.
    double disk_spacing = 0.125;
    // Radius of the compact set on which consecutive solutions are compared.
    double compact_radius = 4.0;

    std::function<void(const NewtonStep&)> on_step;

    // Throws DomainError on nonpositive tolerances, damping outside (0, 1],
    // or a schedule that is not strictly increasing.
    void validate() const;
};

// Discrete divergence-form residual
//   (1/g) [ d_r(g u_r / W) + d_theta(u_theta / (g W)) ],
//   W = sqrt(1 + u_r^2 + u_theta^2 / g^2),
// with fluxes on cell faces. Zero on Dirichlet rows; on disk grids row 0
// carries the finite-volume balance of the origin cell.
ScalarField mse_operator(const ScalarField& u, const AnnulusGrid& grid);

struct DirichletResult {
    ScalarField u;
    int newton_steps = 0;
    double residual = 0.0;
};

// Damped Newton on the discrete residual with Armijo halving. Rows 0 and N
// are pinned to inner(theta) and outer(theta); on disk grids the inner data
// is ignored and the origin is an unknown. Throws ConvergenceError after
// cfg.max_newton steps or on a singular linearization.
DirichletResult dirichlet_solve(const AnnulusGrid& grid, const BoundaryData& inner,
                                const BoundaryData& outer, const SolverConfig& cfg,
                                const ScalarField* initial_guess = nullptr);

// sup over inner-boundary nodes of sqrt(u_r^2 + u_theta^2 / g^2), u_r by the
// one-sided three-point formula.
double boundary_gradient_sup(const ScalarField& u, const AnnulusGrid& grid);

struct ExteriorLevel {
    double m = 0.0;           // outer geodesic radius
    double t = 0.0;           // outer boundary value t_m
    double barrier_cap = 0.0; // f(m - r0)
    double gradient = 0.0;    // achieved boundary gradient
    int solves = 0;           // Dirichlet solves spent on the search
    AnnulusGrid grid;
    ScalarField u;
};

struct ExteriorSolution {
    double s = 0.0;
    double r0 = 0.0;
    std::vector<ExteriorLevel> levels;
    // sup |u_{m_k} - u_{m_{k-1}}| on r0 <= r <= min(schedule[0], compact_radius)
    std::vector<double> cauchy;

    const ExteriorLevel& last() const { return levels.back(); }
    std::vector<double> t_trace() const;
};

// Exterior problem on Lambda = T minus the geodesic disk of radius r0, zero
// data on its boundary: for each m in the schedule, searches t in
// [0, f(m - r0) + margin] for the outer value whose solution has boundary
// gradient s. Grids are logarithmically graded with cfg sizes.
ExteriorSolution exterior_solve(double s, double r0, const SolverConfig& cfg);

struct AsymptoticResult {
    std::vector<double> radii;
    std::vector<AnnulusGrid> grids;
    std::vector<ScalarField> fields;
    // sup difference of consecutive solutions on r <= cfg.compact_radius
    std::vector<double> sup_diff;
};

// Dirichlet problems on the disks D_R, R from cfg.schedule, with data
// phi(theta) on the rim.
AsymptoticResult asymptotic_solve(const BoundaryData& phi, const SolverConfig& cfg);

struct FoliationPair {
    double s_low = 0.0;
    double s_high = 0.0;
    bool strictly_ordered = false;
    double min_interior_gap = 0.0;
    std::vector<double> rim_separation;  // t_m(s_high) - t_m(s_low) per m
    double min_rim_separation = 0.0;
    bool rim_nonincreasing = false;
};

struct FoliationReport {
    std::vector<FoliationPair> pairs;
    bool all_ordered = false;
};

// Solutions must share r0 and schedule and come with strictly increasing s.
FoliationReport foliation_check(const std::vector<ExteriorSolution>& sols);

// Cartesian-chart version of the operator with the full coefficients
// E = 2 + y^2/2, F = -xy/2, G = 2 + x^2/2 of T, on a uniform square grid
// (x0 + i h, y0 + j h). Returns the residual on interior nodes (others 0).
struct CartesianGrid {
    double x0 = 0.0;
    double y0 = 0.0;
    double h = 0.1;
    int nx = 5;
    int ny = 5;
};
std::vector<double> cartesian_mse_residual(const CartesianGrid& grid,
                                           const std::vector<double>& u);

}  // namespace nilbal
