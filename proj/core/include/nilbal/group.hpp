#pragma once

// Nil3 as upper unipotent 3x3 matrices
//
//     | 1  x  z |
//     | 0  1  y |
//     | 0  0  1 |
//
// GroupElement stores the three free matrix entries. ChartPoint stores the
// graph chart (x, y, zeta) with z = xy/2 + zeta, in which the totally
// geodesic surface T is the slice zeta = 0.

#include <array>

namespace nilbal {

struct GroupElement {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;  // (1,3) matrix entry

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

struct ChartPoint {
    double x = 0.0;
    double y = 0.0;
    double zeta = 0.0;

    friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

inline constexpr GroupElement identity_element{0.0, 0.0, 0.0};

GroupElement multiply(const GroupElement& a, const GroupElement& b) noexcept;
GroupElement inverse(const GroupElement& g) noexcept;

GroupElement to_matrix(const ChartPoint& p) noexcept;
ChartPoint to_chart(const GroupElement& g) noexcept;

// Tangent vector in the coordinate frame {X, Y, Z} = {d/dx, d/dy, d/dzeta}
// of the chart, attached to `base`.
struct TangentVector {
    ChartPoint base;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    std::array<double, 3> components() const noexcept { return {a, b, c}; }
};

// Components of a frame vector in matrix coordinates (dx, dy, dz):
// X = (1, 0, y/2), Y = (0, 1, x/2), Z = (0, 0, 1).
std::array<double, 3> to_matrix_components(const TangentVector& v) noexcept;

// Inverse of to_matrix_components at the given base point.
TangentVector from_matrix_components(const ChartPoint& base,
                                     const std::array<double, 3>& dm) noexcept;

}  // namespace nilbal
