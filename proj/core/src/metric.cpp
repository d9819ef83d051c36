#include "nilbal/metric.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "nilbal/error.hpp"

namespace nilbal {

double MetricAtPoint::operator()(int i, int j) const noexcept {
    if (i > j) std::swap(i, j);
    switch (i * 3 + j) {
        case 0: return exx;
        case 1: return exy;
        case 2: return exz;
        case 4: return eyy;
        case 5: return eyz;
        case 8: return ezz;
        default: return 0.0;
    }
}

double MetricAtPoint::inner(const Vec3& u, const Vec3& v) const noexcept {
    return exx * u[0] * v[0] + eyy * u[1] * v[1] + ezz * u[2] * v[2] +
           exy * (u[0] * v[1] + u[1] * v[0]) + exz * (u[0] * v[2] + u[2] * v[0]) +
           eyz * (u[1] * v[2] + u[2] * v[1]);
}

double MetricAtPoint::norm(const Vec3& u) const noexcept { return std::sqrt(inner(u, u)); }

double MetricAtPoint::det() const noexcept {
    return exx * (eyy * ezz - eyz * eyz) - exy * (exy * ezz - eyz * exz) +
           exz * (exy * eyz - eyy * exz);
}

Vec3 MetricAtPoint::solve(const Vec3& rhs) const {
    Eigen::Matrix3d m;
    m << exx, exy, exz, exy, eyy, eyz, exz, eyz, ezz;
    const Eigen::Vector3d w = m.llt().solve(Eigen::Vector3d(rhs[0], rhs[1], rhs[2]));
    return {w[0], w[1], w[2]};
}

Vec3 ChristoffelAtPoint::contract(const Vec3& u, const Vec3& v) const noexcept {
    Vec3 out{};
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out[k] += gamma[k][i][j] * u[i] * v[j];
    return out;
}

namespace {

Eigen::Matrix3d as_matrix(const GroupElement& g) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m(0, 1) = g.x;
    m(1, 2) = g.y;
    m(0, 2) = g.z;
    return m;
}

// Tangent vectors of Nil3 are strictly upper triangular matrices.
Eigen::Matrix3d as_algebra(const std::array<double, 3>& dm) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 1) = dm[0];
    m(1, 2) = dm[1];
    m(0, 2) = dm[2];
    return m;
}

double flat_inner(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
    return a(0, 1) * b(0, 1) + a(1, 2) * b(1, 2) + a(0, 2) * b(0, 2);
}

}  // namespace

double balanced_metric_from_translations(const GroupElement& g,
                                         const TangentVector& u,
                                         const TangentVector& v) {
    if (!(u.base == v.base))
        throw DomainError("balanced_metric_from_translations: u and v have different base points");
    const GroupElement b = to_matrix(u.base);
    const double scale = 1.0 + std::abs(g.x) + std::abs(g.y) + std::abs(g.z);
    if (std::abs(b.x - g.x) + std::abs(b.y - g.y) + std::abs(b.z - g.z) > 1e-12 * scale)
        throw DomainError("balanced_metric_from_translations: vectors are not based at g");

    const Eigen::Matrix3d gi = as_matrix(g).inverse();
    const Eigen::Matrix3d vu = as_algebra(to_matrix_components(u));
    const Eigen::Matrix3d vv = as_algebra(to_matrix_components(v));
    return flat_inner(gi * vu, gi * vv) + flat_inner(vu * gi, vv * gi);
}

MetricAtPoint metric_closed_form(const ChartPoint& p) noexcept {
    MetricAtPoint m;
    m.exx = 2.0 + 0.5 * p.y * p.y;
    m.eyy = 2.0 + 0.5 * p.x * p.x;
    m.ezz = 2.0;
    m.exy = -0.5 * p.x * p.y;
    return m;
}

ChristoffelAtPoint christoffel_closed_form(const ChartPoint& p) noexcept {
    const double x = p.x;
    const double y = p.y;
    const double den = 2.0 * x * x + 2.0 * y * y + 8.0;
    ChristoffelAtPoint c;
    auto& G = c.gamma;
    // nabla_X X
    G[0][0][0] = -x * y * y / den;
    G[1][0][0] = -(4.0 * y + y * y * y) / den;
    // nabla_Y X = nabla_X Y
    G[0][1][0] = G[0][0][1] = (2.0 * y + x * x * y) / den;
    G[1][1][0] = G[1][0][1] = (2.0 * x + x * y * y) / den;
    // nabla_Y Y
    G[0][1][1] = -(4.0 * x + x * x * x) / den;
    G[1][1][1] = -x * x * y / den;
    return c;
}

ChristoffelAtPoint christoffel_from_metric(const ChartPoint& p, double h) {
    if (!(h > 0.0)) throw DomainError("christoffel_from_metric: step must be positive");

    // dg[l](i,j) = d/dx^l of g_ij
    std::array<MetricAtPoint, 3> plus, minus;
    for (int l = 0; l < 3; ++l) {
        ChartPoint a = p, b = p;
        double* ca = l == 0 ? &a.x : l == 1 ? &a.y : &a.zeta;
        double* cb = l == 0 ? &b.x : l == 1 ? &b.y : &b.zeta;
        *ca += h;
        *cb -= h;
        plus[l] = metric_closed_form(a);
        minus[l] = metric_closed_form(b);
    }
    auto dg = [&](int l, int i, int j) { return (plus[l](i, j) - minus[l](i, j)) / (2.0 * h); };

    const MetricAtPoint g = metric_closed_form(p);
    ChristoffelAtPoint c;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // first kind: Gamma_{l,ij} = <nabla_{E_i} E_j, E_l>
            Vec3 first{};
            for (int l = 0; l < 3; ++l)
                first[l] = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
            const Vec3 second = g.solve(first);
            for (int k = 0; k < 3; ++k) c.gamma[k][i][j] = second[k];
        }
    }
    return c;
}

}  // namespace nilbal
