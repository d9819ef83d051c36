#pragma once

// Face fluxes of the discrete minimal surface operator, templated so the same
// code yields residuals (double) and exact local Jacobians (Dual<N>).

#include <array>
#include <cmath>
#include <numbers>

#include "nilbal/grid.hpp"

namespace nilbal::detail {

template <int N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    Dual() = default;
    Dual(double value) : v(value) {}  // NOLINT: implicit constant promotion

    static Dual variable(double value, int slot) {
        Dual x(value);
        x.d[static_cast<std::size_t>(slot)] = 1.0;
        return x;
    }
};

template <int N>
Dual<N> operator+(Dual<N> a, const Dual<N>& b) {
    a.v += b.v;
    for (int k = 0; k < N; ++k) a.d[k] += b.d[k];
    return a;
}
template <int N>
Dual<N> operator-(Dual<N> a, const Dual<N>& b) {
    a.v -= b.v;
    for (int k = 0; k < N; ++k) a.d[k] -= b.d[k];
    return a;
}
template <int N>
Dual<N> operator*(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> out(a.v * b.v);
    for (int k = 0; k < N; ++k) out.d[k] = a.d[k] * b.v + a.v * b.d[k];
    return out;
}
template <int N>
Dual<N> operator/(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> out(a.v / b.v);
    const double inv = 1.0 / (b.v * b.v);
    for (int k = 0; k < N; ++k) out.d[k] = (a.d[k] * b.v - a.v * b.d[k]) * inv;
    return out;
}
template <int N>
Dual<N> operator*(double s, Dual<N> a) {
    a.v *= s;
    for (auto& x : a.d) x *= s;
    return a;
}
template <int N>
Dual<N> operator*(Dual<N> a, double s) {
    return s * a;
}
template <int N>
Dual<N> operator/(Dual<N> a, double s) {
    return (1.0 / s) * a;
}
template <int N>
Dual<N> sqrt(const Dual<N>& a) {
    Dual<N> out(std::sqrt(a.v));
    const double f = 0.5 / out.v;
    for (int k = 0; k < N; ++k) out.d[k] = a.d[k] * f;
    return out;
}

using std::sqrt;

// Radial face between rows i and i+1 at column j. lo/hi hold the values at
// columns j-1, j, j+1 of rows i and i+1.
template <class T>
T radial_face_flux(const AnnulusGrid& grid, int i, const std::array<T, 3>& lo,
                   const std::array<T, 3>& hi) {
    const double dr = grid.r(i + 1) - grid.r(i);
    const double gh = grid.g_half(i);
    const double dth = grid.dtheta();
    const T p = (hi[1] - lo[1]) / dr;
    const T q = ((lo[2] - lo[0]) + (hi[2] - hi[0])) / (4.0 * dth * gh);
    return gh * p / sqrt(T(1.0) + p * p + q * q);
}

// Three-point radial derivative weights at interior row i.
inline std::array<double, 3> radial_derivative_weights(const AnnulusGrid& grid, int i) {
    const double hm = grid.r(i) - grid.r(i - 1);
    const double hp = grid.r(i + 1) - grid.r(i);
    return {-hp / (hm * (hm + hp)), (hp - hm) / (hm * hp), hm / (hp * (hm + hp))};
}

// Angular face between columns j and j+1 at interior row i. a/b hold rows
// i-1, i, i+1 at columns j and j+1.
template <class T>
T angular_face_flux(const AnnulusGrid& grid, int i, const std::array<T, 3>& a,
                    const std::array<T, 3>& b) {
    const auto w = radial_derivative_weights(grid, i);
    const double gi = grid.g(i);
    const double dth = grid.dtheta();
    const T ur = 0.5 * (w[0] * (a[0] + b[0]) + w[1] * (a[1] + b[1]) + w[2] * (a[2] + b[2]));
    const T ut = (b[1] - a[1]) / (dth * gi);
    return ut / sqrt(T(1.0) + ur * ur + ut * ut);
}

// Residual at interior node (i, j) from its 3x3 patch P[a][b] = u(i-1+a, j-1+b).
template <class T>
T local_residual(const AnnulusGrid& grid, int i, const std::array<std::array<T, 3>, 3>& P) {
    const std::array<T, 3> row_m = P[0];
    const std::array<T, 3> row_0 = P[1];
    const std::array<T, 3> row_p = P[2];
    const T f_out = radial_face_flux(grid, i, row_0, row_p);
    const T f_in = radial_face_flux(grid, i - 1, row_m, row_0);
    const std::array<T, 3> col_m{P[0][0], P[1][0], P[2][0]};
    const std::array<T, 3> col_0{P[0][1], P[1][1], P[2][1]};
    const std::array<T, 3> col_p{P[0][2], P[1][2], P[2][2]};
    const T h_out = angular_face_flux(grid, i, col_0, col_p);
    const T h_in = angular_face_flux(grid, i, col_m, col_0);
    const double dr = 0.5 * (grid.r(i + 1) - grid.r(i - 1));
    return ((f_out - f_in) / dr + (h_out - h_in) / grid.dtheta()) / grid.g(i);
}

// Area of the origin cell r < (r_0 + r_1)/2 of a disk grid.
inline double origin_cell_area(const AnnulusGrid& grid) {
    const double rho = 0.5 * grid.r(1);
    const double a = 1.0 + rho * rho / 8.0;
    // int_0^rho g dr with g = r sqrt(1 + r^2/8)
    const double integral = 8.0 / 3.0 * (a * std::sqrt(a) - 1.0);
    return 2.0 * std::numbers::pi * integral;
}

}  // namespace nilbal::detail
