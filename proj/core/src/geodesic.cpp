#include "nilbal/geodesic.hpp"

#include <array>

#include "nilbal/error.hpp"

namespace nilbal {

TangentVector geodesic_ode_rhs(const ChartPoint& p, const TangentVector& v,
                               const ChristoffelAtPoint& gamma) {
    const Vec3 acc = gamma.contract(v.components(), v.components());
    return {p, -acc[0], -acc[1], -acc[2]};
}

TangentVector geodesic_ode_rhs(const ChartPoint& p, const TangentVector& v) {
    return geodesic_ode_rhs(p, v, christoffel_closed_form(p));
}

namespace {

using State = std::array<double, 6>;

State rhs(const State& s) {
    const ChartPoint p{s[0], s[1], s[2]};
    const TangentVector v{p, s[3], s[4], s[5]};
    const TangentVector a = geodesic_ode_rhs(p, v);
    return {s[3], s[4], s[5], a.a, a.b, a.c};
}

State axpy(const State& y, double h, const State& k) {
    State out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = y[i] + h * k[i];
    return out;
}

GeodesicState unpack(const State& s) {
    const ChartPoint p{s[0], s[1], s[2]};
    return {p, TangentVector{p, s[3], s[4], s[5]}};
}

}  // namespace

std::vector<GeodesicState> integrate_geodesic(const ChartPoint& p0, const TangentVector& v0,
                                              double T, int n_steps) {
    if (n_steps < 1) throw DomainError("integrate_geodesic: n_steps must be >= 1");
    if (!(v0.base == p0)) throw DomainError("integrate_geodesic: v0 is not based at p0");

    const double h = T / n_steps;
    State y{p0.x, p0.y, p0.zeta, v0.a, v0.b, v0.c};
    std::vector<GeodesicState> path;
    path.reserve(static_cast<std::size_t>(n_steps) + 1);
    path.push_back(unpack(y));
    for (int n = 0; n < n_steps; ++n) {
        const State k1 = rhs(y);
        const State k2 = rhs(axpy(y, 0.5 * h, k1));
        const State k3 = rhs(axpy(y, 0.5 * h, k2));
        const State k4 = rhs(axpy(y, h, k3));
        for (std::size_t i = 0; i < y.size(); ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        path.push_back(unpack(y));
    }
    return path;
}

}  // namespace nilbal
