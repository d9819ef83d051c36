#include "nilbal/model_surface.hpp"

#include <cmath>

#include "nilbal/error.hpp"
#include "nilbal/metric.hpp"

namespace nilbal {

PolarCoord to_polar(const SurfacePoint& p) noexcept {
    double th = std::atan2(p.y, p.x);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    return {distance_to_identity(p), th};
}

SurfacePoint from_polar(const PolarCoord& q) noexcept {
    const double rho = q.r / sqrt2;
    return {rho * std::cos(q.theta_pol), rho * std::sin(q.theta_pol)};
}

GroupElement geodesic_closed_form(double theta, double t) noexcept {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double x = 0.5 * t * (c - s);
    const double y = 0.5 * t * (s + c);
    return {x, y, (c - s) * (s + c) * t * t / 8.0};
}

double distance_to_identity(const SurfacePoint& p) noexcept {
    return sqrt2 * std::hypot(p.x, p.y);
}

ChartPoint rotate(double theta, const ChartPoint& p) noexcept {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {p.x * c - p.y * s, p.x * s + p.y * c, p.zeta};
}

GroupElement circle_action(double theta, const GroupElement& g) noexcept {
    return to_matrix(rotate(theta, to_chart(g)));
}

GroupElement splitting_isometry(const SurfacePoint& p, const CenterElement& c) noexcept {
    return {p.x, p.y, 0.5 * p.x * p.y + c.t};
}

SplitPoint splitting_inverse(const GroupElement& g) noexcept {
    return {{g.x, g.y}, {g.z - 0.5 * g.x * g.y}};
}

WarpValues warp(double r) {
    if (r < 0.0) throw DomainError("warp: radius must be nonnegative");
    // g = r sqrt(a), a = 1 + r^2/8, written without dividing by r.
    const double a = 1.0 + r * r / 8.0;
    const double sa = std::sqrt(a);
    return {r * sa, (1.0 + r * r / 4.0) / sa, r * (12.0 + r * r) / (32.0 * a * sa)};
}

double warp_curvature(double r) {
    // -g''/g simplified; finite at r = 0.
    const double a = 1.0 + r * r / 8.0;
    return -(12.0 + r * r) / (32.0 * a * a);
}

double gaussian_curvature_riemann(const SurfacePoint& p, double h) {
    if (!(h > 0.0)) throw DomainError("gaussian_curvature_riemann: step must be positive");
    const ChartPoint c = p.chart();
    const ChristoffelAtPoint G = christoffel_closed_form(c);
    const ChristoffelAtPoint Gxp = christoffel_closed_form({c.x + h, c.y, 0.0});
    const ChristoffelAtPoint Gxm = christoffel_closed_form({c.x - h, c.y, 0.0});
    const ChristoffelAtPoint Gyp = christoffel_closed_form({c.x, c.y + h, 0.0});
    const ChristoffelAtPoint Gym = christoffel_closed_form({c.x, c.y - h, 0.0});

    // nabla_Y (nabla_X X) - nabla_X (nabla_Y X)
    Vec3 R{};
    for (int m = 0; m < 3; ++m) {
        const double dy_xx = (Gyp(m, 0, 0) - Gym(m, 0, 0)) / (2.0 * h);
        const double dx_yx = (Gxp(m, 1, 0) - Gxm(m, 1, 0)) / (2.0 * h);
        double lower = 0.0;
        for (int k = 0; k < 3; ++k) lower += G(k, 0, 0) * G(m, 1, k) - G(k, 1, 0) * G(m, 0, k);
        R[m] = dy_xx - dx_yx + lower;
    }
    const MetricAtPoint g = metric_closed_form(c);
    const double num = g.inner(R, {0.0, 1.0, 0.0});
    const double den = g.exx * g.eyy - g.exy * g.exy;
    return num / den;
}

CurvatureCandidates curvature_closed_forms(const SurfacePoint& p) noexcept {
    const double r = distance_to_identity(p);
    const double r2 = r * r;
    return {-4.0 * (r2 + 12.0) / ((r2 + 8.0) * (r2 + 8.0)), warp_curvature(r)};
}

std::array<std::array<double, 2>, 2> second_fundamental_form_T(const SurfacePoint& p) noexcept {
    const ChartPoint c = p.chart();
    const ChristoffelAtPoint G = christoffel_closed_form(c);
    const MetricAtPoint g = metric_closed_form(c);
    const Vec3 normal{0.0, 0.0, 1.0 / sqrt2};
    std::array<std::array<double, 2>, 2> out{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Vec3 u{}, v{};
            u[i] = 1.0;
            v[j] = 1.0;
            out[i][j] = g.inner(G.contract(u, v), normal);
        }
    }
    return out;
}

}  // namespace nilbal
