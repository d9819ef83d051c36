#pragma once

// Balanced metric on Nil3 (sum of the left- and right-translated flat inner
// product at the identity) and its Levi-Civita connection, both expressed in
// the chart coordinate frame {X, Y, Z}.

#include <array>

#include "nilbal/group.hpp"

namespace nilbal {

using Vec3 = std::array<double, 3>;

struct MetricAtPoint {
    double exx = 0.0;
    double eyy = 0.0;
    double ezz = 0.0;
    double exy = 0.0;
    double exz = 0.0;
    double eyz = 0.0;

    double operator()(int i, int j) const noexcept;
    double inner(const Vec3& u, const Vec3& v) const noexcept;
    double norm(const Vec3& u) const noexcept;
    // Determinant of the full 3x3 coefficient matrix.
    double det() const noexcept;
    // Solves G w = rhs.
    Vec3 solve(const Vec3& rhs) const;
};

// gamma[k][i][j]: nabla_{E_i} E_j = sum_k gamma[k][i][j] E_k, (E_1,E_2,E_3) = (X,Y,Z).
struct ChristoffelAtPoint {
    std::array<std::array<std::array<double, 3>, 3>, 3> gamma{};

    double operator()(int k, int i, int j) const noexcept { return gamma[k][i][j]; }
    // Components of sum_{ij} gamma[.][i][j] u^i v^j.
    Vec3 contract(const Vec3& u, const Vec3& v) const noexcept;
};

// Evaluates <u, v>_g directly from the defining construction: both vectors
// are pulled back to T_e by d(L_g)^{-1} and d(R_g)^{-1} (matrix products
// g^{-1} V and V g^{-1}) and the flat inner products of the (1,2), (2,3),
// (1,3) entries are summed. Throws DomainError if u and v are not based at
// the same point or that point is not g.
double balanced_metric_from_translations(const GroupElement& g,
                                         const TangentVector& u,
                                         const TangentVector& v);

// Closed-form coefficients: <X,X> = 2 + y^2/2, <Y,Y> = 2 + x^2/2,
// <X,Y> = -xy/2, <Z,Z> = 2, all Z cross terms zero.
MetricAtPoint metric_closed_form(const ChartPoint& p) noexcept;

// Closed-form connection. Every coefficient carrying a Z index vanishes.
ChristoffelAtPoint christoffel_closed_form(const ChartPoint& p) noexcept;

// Christoffel symbols from central differences (step h) of
// metric_closed_form through the coordinate-frame Koszul formula. Independent
// of christoffel_closed_form; O(h^2) accurate.
ChristoffelAtPoint christoffel_from_metric(const ChartPoint& p, double h = 1e-4);

}  // namespace nilbal
