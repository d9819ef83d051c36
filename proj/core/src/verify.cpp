#include "nilbal/verify.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include <boost/math/interpolators/barycentric_rational.hpp>

#include "nilbal/error.hpp"
#include "nilbal/metric.hpp"
#include "nilbal/model_surface.hpp"

namespace nilbal {

namespace {

Vec3 as_vec(const ChartPoint& p) { return {p.x, p.y, p.zeta}; }

Vec3 combine(std::initializer_list<std::pair<double, Vec3>> terms, double scale) {
    Vec3 out{};
    for (const auto& [w, v] : terms)
        for (int k = 0; k < 3; ++k) out[k] += w * v[k];
    for (double& x : out) x *= scale;
    return out;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

}  // namespace

double mean_curvature_residual(const SurfaceSample& surf, double u, double v) {
    const double hu = surf.step_u;
    const double hv = surf.step_v;
    auto P = [&](double du, double dv) { return as_vec(surf.param(u + du * hu, v + dv * hv)); };

    const Vec3 p0 = P(0, 0);
    const Vec3 up1 = P(1, 0), um1 = P(-1, 0), up2 = P(2, 0), um2 = P(-2, 0);
    const Vec3 vp1 = P(0, 1), vm1 = P(0, -1), vp2 = P(0, 2), vm2 = P(0, -2);

    const Vec3 Pu = combine({{-1, up2}, {8, up1}, {-8, um1}, {1, um2}}, 1.0 / (12.0 * hu));
    const Vec3 Pv = combine({{-1, vp2}, {8, vp1}, {-8, vm1}, {1, vm2}}, 1.0 / (12.0 * hv));
    const Vec3 Puu =
        combine({{-1, up2}, {16, up1}, {-30, p0}, {16, um1}, {-1, um2}}, 1.0 / (12.0 * hu * hu));
    const Vec3 Pvv =
        combine({{-1, vp2}, {16, vp1}, {-30, p0}, {16, vm1}, {-1, vm2}}, 1.0 / (12.0 * hv * hv));
    // Richardson combination of the 4-point mixed difference at steps h, 2h.
    const Vec3 d1 = combine({{1, P(1, 1)}, {-1, P(1, -1)}, {-1, P(-1, 1)}, {1, P(-1, -1)}},
                            1.0 / (4.0 * hu * hv));
    const Vec3 d2 = combine({{1, P(2, 2)}, {-1, P(2, -2)}, {-1, P(-2, 2)}, {1, P(-2, -2)}},
                            1.0 / (16.0 * hu * hv));
    const Vec3 Puv = combine({{4, d1}, {-1, d2}}, 1.0 / 3.0);

    const ChartPoint at{p0[0], p0[1], p0[2]};
    const MetricAtPoint g = metric_closed_form(at);
    const ChristoffelAtPoint gamma = christoffel_closed_form(at);

    const double E = g.inner(Pu, Pu);
    const double F = g.inner(Pu, Pv);
    const double G = g.inner(Pv, Pv);
    const double det = E * G - F * F;
    if (!(det > 1e-10)) throw DomainError("mean_curvature_residual: degenerate immersion");

    // The Euclidean cross product is the covector annihilating Pu and Pv.
    const Vec3 covector = cross(Pu, Pv);
    const Vec3 raised = g.solve(covector);
    const double len = std::sqrt(covector[0] * raised[0] + covector[1] * raised[1] +
                                 covector[2] * raised[2]);
    const Vec3 N{raised[0] / len, raised[1] / len, raised[2] / len};

    const double L = g.inner(add(Puu, gamma.contract(Pu, Pu)), N);
    const double M = g.inner(add(Puv, gamma.contract(Pu, Pv)), N);
    const double Nn = g.inner(add(Pvv, gamma.contract(Pv, Pv)), N);
    return (L * G - 2.0 * M * F + Nn * E) / (2.0 * det);
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
    return out;
}

std::vector<double> periodic_nodes(int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        out[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / n;
    return out;
}

}  // namespace

SurfaceSample plane_sample(int n, double extent) {
    SurfaceSample s;
    s.param = [](double u, double v) { return ChartPoint{u, v, 0.0}; };
    s.u_nodes = linspace(-extent, extent, n);
    s.v_nodes = linspace(-extent, extent, n);
    return s;
}

SurfaceSample elliptic_cylinder_sample(double a, double b, int nu, int nv) {
    SurfaceSample s;
    s.param = [a, b](double u, double v) {
        return ChartPoint{a * std::cos(v), b * std::sin(v), u};
    };
    s.u_nodes = linspace(-1.0, 1.0, nu);
    s.v_nodes = periodic_nodes(nv);
    s.periodic_v = true;
    return s;
}

SurfaceSample catenoid_sample(const CatenoidParams& p, std::vector<double> t_nodes,
                              int angular_nodes, double tol) {
    validate(p);
    SurfaceSample s;
    s.param = [p, tol](double t, double theta) {
        const double h = catenoid_height(p, t, tol);
        return rotate(theta, ChartPoint{0.5 * t, 0.5 * t, h});
    };
    s.u_nodes = std::move(t_nodes);
    s.v_nodes = periodic_nodes(angular_nodes);
    s.periodic_v = true;
    return s;
}

SurfaceSample catenoid_sample_matrix_reading(const CatenoidParams& p,
                                             std::vector<double> t_nodes, int angular_nodes,
                                             double tol) {
    validate(p);
    SurfaceSample s;
    s.param = [p, tol](double t, double theta) {
        const double h = catenoid_height(p, t, tol);
        return rotate(theta, to_chart(GroupElement{0.5 * t, 0.5 * t, h}));
    };
    s.u_nodes = std::move(t_nodes);
    s.v_nodes = periodic_nodes(angular_nodes);
    s.periodic_v = true;
    return s;
}

namespace {

// Fourier interpolation of M equispaced periodic samples.
double periodic_kernel(int M, double x) {
    const double half = 0.5 * x;
    const double sh = std::sin(half);
    if (std::abs(sh) < 1e-14) return 1.0;
    if (M % 2 == 0) return std::sin(M * half) * std::cos(half) / (M * sh);
    return std::sin(M * half) / (M * sh);
}

struct GraphInterpolant {
    std::vector<boost::math::barycentric_rational<double>> lines;
    int cols;
    double dtheta;

    double operator()(double r, double theta) const {
        double acc = 0.0;
        for (int j = 0; j < cols; ++j)
            acc += lines[static_cast<std::size_t>(j)](r) * periodic_kernel(cols, theta - j * dtheta);
        return acc;
    }
};

}  // namespace

SurfaceSample graph_embed(const ScalarField& u, const AnnulusGrid& grid) {
    if (u.rows() != grid.rows() || u.cols() != grid.cols())
        throw DomainError("graph_embed: field does not match the grid");
    auto interp = std::make_shared<GraphInterpolant>();
    interp->cols = grid.cols();
    interp->dtheta = grid.dtheta();
    for (int j = 0; j < grid.cols(); ++j) {
        std::vector<double> r(grid.radii().begin(), grid.radii().end());
        std::vector<double> y;
        for (int i = 0; i < grid.rows(); ++i) y.push_back(u(i, j));
        interp->lines.emplace_back(std::move(r), std::move(y), 3);
    }

    SurfaceSample s;
    s.param = [interp](double r, double theta) {
        const double rho = r / sqrt2;
        return ChartPoint{rho * std::cos(theta), rho * std::sin(theta), (*interp)(r, theta) / sqrt2};
    };
    s.u_nodes.assign(grid.radii().begin(), grid.radii().end());
    s.v_nodes = periodic_nodes(grid.cols());
    s.periodic_v = true;
    double min_dr = INFINITY;
    for (int i = 0; i + 1 < grid.rows(); ++i) min_dr = std::min(min_dr, grid.r(i + 1) - grid.r(i));
    s.step_u = 0.05 * min_dr;
    s.step_v = 0.05 * grid.dtheta();
    return s;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::discrepancy: return "discrepancy";
    }
    return "fail";
}

double SampleStream::uniform(double lo, double hi) {
    // splitmix64
    state_ += 0x9E3779B97F4A7C15ull;
    unsigned long long z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    const double unit = static_cast<double>(z >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

}  // namespace nilbal
