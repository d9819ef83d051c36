#pragma once
// Test-side reference computations. They use only the metric coefficients of
// T written out here, Boost quadrature and plain RK4, never the library's
// connection or solver code.
#include <cmath>
#include <functional>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

inline double E(double, double y) { return 2.0 + 0.5 * y * y; }
inline double F(double x, double y) { return -0.5 * x * y; }
inline double G(double x, double) { return 2.0 + 0.5 * x * x; }

// Brioschi formula for the Gaussian curvature of E dx^2 + 2F dx dy + G dy^2,
// all partial derivatives by central differences of step h.
inline double brioschi(double x, double y, double h = 1e-3) {
    auto dx = [h](auto f, double a, double b) { return (f(a + h, b) - f(a - h, b)) / (2 * h); };
    auto dy = [h](auto f, double a, double b) { return (f(a, b + h) - f(a, b - h)) / (2 * h); };
    auto dxx = [h](auto f, double a, double b) {
        return (f(a + h, b) - 2 * f(a, b) + f(a - h, b)) / (h * h);
    };
    auto dyy = [h](auto f, double a, double b) {
        return (f(a, b + h) - 2 * f(a, b) + f(a, b - h)) / (h * h);
    };
    auto dxy = [h](auto f, double a, double b) {
        return (f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h)) / (4 * h * h);
    };
    const double e = E(x, y), f = F(x, y), g = G(x, y);
    const double Eu = dx(E, x, y), Ev = dy(E, x, y);
    const double Fu = dx(F, x, y), Fv = dy(F, x, y);
    const double Gu = dx(G, x, y), Gv = dy(G, x, y);
    const double Evv = dyy(E, x, y), Guu = dxx(G, x, y), Fuv = dxy(F, x, y);

    const double a11 = -0.5 * Evv + Fuv - 0.5 * Guu;
    // Written out with the two 3x3 determinants of the formula.
    auto det3 = [](double m00, double m01, double m02, double m10, double m11, double m12,
                   double m20, double m21, double m22) {
        return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
               m02 * (m10 * m21 - m11 * m20);
    };
    const double A = det3(a11, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, e, f, 0.5 * Gv, f, g);
    const double B = det3(0.0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, e, f, 0.5 * Gu, f, g);
    const double W = e * g - f * f;
    return (A - B) / (W * W);
}

// Warp as orbit length / 2 pi: the S^1 orbit through a point at geodesic
// radius r is the chart circle of radius r / sqrt2.
inline double orbit_warp(double r) {
    const double rho = r / std::numbers::sqrt2;
    auto speed = [rho](double th) {
        const double x = rho * std::cos(th), y = rho * std::sin(th);
        const double xd = -rho * std::sin(th), yd = rho * std::cos(th);
        return std::sqrt(E(x, y) * xd * xd + 2 * F(x, y) * xd * yd + G(x, y) * yd * yd);
    };
    const double len = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        speed, 0.0, 2 * std::numbers::pi, 10, 1e-14);
    return len / (2 * std::numbers::pi);
}

// Chart offset of the catenoid profile, tanh-sinh on the raw integrand
// (endpoint singularity at the minimal neck handled by the rule itself).
inline double catenoid_height(double c, double t0, double t) {
    if (t == t0) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    const double slack = t0 * t0 * (t0 * t0 + 8.0) - c * c;
    // Near the left end use s = t0 + d: Q(s) - Q(t0) = d (2 t0 + d)(s^2 + t0^2 + 8).
    auto f = [c, t0, slack](double s, double xc) {
        const double d = xc < 0.0 ? -xc : s - t0;
        const double q = d * (2.0 * t0 + d) * (s * s + t0 * t0 + 8.0) + slack;
        return 1.0 / std::sqrt(q);
    };
    return c / std::numbers::sqrt2 * ts.integrate(f, t0, t);
}

// Radial minimal-graph ODE u'' = -(g'/g) u' (1 + u'^2) by RK4, with
// g = sqrt(r^2 + r^4/8) written out here.
inline double radial_ode_height(double r_a, double u_a, double du_a, double r_b, int steps) {
    auto gg = [](double r) {
        const double g = std::sqrt(r * r + r * r * r * r / 8.0);
        const double dg = (r + r * r * r / 4.0) / g;
        return dg / g;
    };
    auto rhs = [&](double r, double u, double p, double& du, double& dp) {
        (void)u;
        du = p;
        dp = -gg(r) * p * (1.0 + p * p);
    };
    const double h = (r_b - r_a) / steps;
    double r = r_a, u = u_a, p = du_a;
    for (int k = 0; k < steps; ++k) {
        double k1u, k1p, k2u, k2p, k3u, k3p, k4u, k4p;
        rhs(r, u, p, k1u, k1p);
        rhs(r + h / 2, u + h / 2 * k1u, p + h / 2 * k1p, k2u, k2p);
        rhs(r + h / 2, u + h / 2 * k2u, p + h / 2 * k2p, k3u, k3p);
        rhs(r + h, u + h * k3u, p + h * k3p, k4u, k4p);
        u += h / 6 * (k1u + 2 * k2u + 2 * k3u + k4u);
        p += h / 6 * (k1p + 2 * k2p + 2 * k3p + k4p);
        r = r_a + (k + 1) * h;
    }
    return u;
}

}  // namespace oracle
