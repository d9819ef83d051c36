#pragma once

// Independent numeric oracles: mean curvature of parametrized surfaces of
// Nil3 computed with the 3-D connection, and the claim-by-claim report on
// the geometry of T.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nilbal/grid.hpp"
#include "nilbal/group.hpp"
#include "nilbal/radial.hpp"

namespace nilbal {

// A parametrized surface (u, v) -> chart point, the parameter grid used for
// sampling/export, and the finite-difference steps.
struct SurfaceSample {
    std::function<ChartPoint(double u, double v)> param;
    std::vector<double> u_nodes;
    std::vector<double> v_nodes;
    double step_u = 1e-3;
    double step_v = 1e-3;
    // v_nodes cover one full period (the wrap-around node is not repeated).
    bool periodic_v = false;
};

// Mean curvature (trace of the second fundamental form over 2) from
// five-point central differences of the parametrization and the closed-form
// Christoffel symbols. Throws DomainError if the first fundamental form is
// degenerate (det <= 1e-10).
double mean_curvature_residual(const SurfaceSample& surf, double u, double v);

// T itself over [-extent, extent]^2 with n x n nodes.
SurfaceSample plane_sample(int n, double extent);

// Vertical cylinder over the chart curve (a cos v, b sin v).
SurfaceSample elliptic_cylinder_sample(double a, double b, int nu, int nv);

// Rotation of the profile (t/2, t/2, h(t)) by the S^1 action.
SurfaceSample catenoid_sample(const CatenoidParams& p, std::vector<double> t_nodes,
                              int angular_nodes, double tol = 1e-14);

// Same profile curve but with h read as the (1,3) matrix entry instead of
// the chart offset; not minimal, kept as evidence for the chart reading.
SurfaceSample catenoid_sample_matrix_reading(const CatenoidParams& p,
                                             std::vector<double> t_nodes, int angular_nodes,
                                             double tol = 1e-14);

// Graph of u over the polar grid, parameters (r, theta): chart point
// (r/sqrt2 cos theta, r/sqrt2 sin theta, u/sqrt2). Between nodes u is
// interpolated with Floater-Hormann rational interpolation in r and
// trigonometric interpolation in theta.
SurfaceSample graph_embed(const ScalarField& u, const AnnulusGrid& grid);

// ---------------------------------------------------------------------------

enum class Verdict { pass, fail, discrepancy };

std::string to_string(Verdict v);

struct ClaimReport {
    std::string id;
    std::string locus;
    Verdict verdict = Verdict::fail;
    std::vector<std::pair<std::string, double>> values;
    double tolerance = 0.0;
    std::string note;
};

struct ReportTolerances {
    double exact = 1e-10;           // closed-form identities
    double distance = 1e-12;        // r(gamma(t)) = |t|
    double integration = 1e-8;      // RK4 vs closed form
    double finite_difference = 1e-5;  // isometry, curvature oracles, mean curvature
    double flux = 1e-8;             // catenoid flux spread
};

std::vector<ClaimReport> claim_report(const ReportTolerances& tols = {});

std::string report_table(const std::vector<ClaimReport>& reports);
std::string report_json(const std::vector<ClaimReport>& reports);

// Deterministic uniform samples in [lo, hi), identical on every platform.
class SampleStream {
public:
    explicit SampleStream(unsigned long long seed) : state_(seed) {}
    double uniform(double lo, double hi);

private:
    unsigned long long state_;
};

}  // namespace nilbal
