#include "nilbal/group.hpp"

namespace nilbal {

GroupElement multiply(const GroupElement& a, const GroupElement& b) noexcept {
    return {a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y};
}

GroupElement inverse(const GroupElement& g) noexcept {
    return {-g.x, -g.y, g.x * g.y - g.z};
}

GroupElement to_matrix(const ChartPoint& p) noexcept {
    return {p.x, p.y, 0.5 * p.x * p.y + p.zeta};
}

ChartPoint to_chart(const GroupElement& g) noexcept {
    return {g.x, g.y, g.z - 0.5 * g.x * g.y};
}

std::array<double, 3> to_matrix_components(const TangentVector& v) noexcept {
    const auto& p = v.base;
    return {v.a, v.b, 0.5 * p.y * v.a + 0.5 * p.x * v.b + v.c};
}

TangentVector from_matrix_components(const ChartPoint& base,
                                     const std::array<double, 3>& dm) noexcept {
    const double c = dm[2] - 0.5 * base.y * dm[0] - 0.5 * base.x * dm[1];
    return {base, dm[0], dm[1], c};
}

}  // namespace nilbal
