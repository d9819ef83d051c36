#include "nilbal/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nilbal/error.hpp"

namespace nilbal {

namespace {

QuadratureResult integrate_one(const std::function<double(double)>& f, double a, double b,
                               double abs_tol) {

    using boost::math::quadrature::gauss_kronrod;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    // Boost's error estimate carries a round-off term of a few 1e-14
    // relative which grows under subdivision; asking for less than this only
    // buys recursion to full depth.
    constexpr double rel_floor = 1024.0 * eps;
    double rel = std::max(abs_tol, rel_floor);
    unsigned depth = 15;
    double err = 0.0;
    double l1 = 0.0;
    double value = 0.0;
    // Finite ranges go through [-1, 1]: on other intervals Boost's error
    // floor is not scaled by the interval length, so short pieces never pass.
    const bool finite = std::isfinite(a) && std::isfinite(b);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto mapped = [&](double x) { return half * f(mid + half * x); };
    for (int attempt = 0; attempt < 3; ++attempt) {
        value = finite ? gauss_kronrod<double, 15>::integrate(mapped, -1.0, 1.0, depth, rel, &err, &l1)
                       : gauss_kronrod<double, 15>::integrate(f, a, b, depth, rel, &err, &l1);
        if (finite) l1 = std::abs(l1);
        const double floor = rel_floor * l1;
        if (std::isfinite(value) && err <= std::max(abs_tol, floor)) return {value, err};
        rel = std::max(0.5 * abs_tol / std::max(l1, 1.0), rel_floor);
        depth += 3;
    }
    char msg[200];
    std::snprintf(msg, sizeof msg,
                  "integrate_adaptive: error %.3e above tolerance %.3e on [%.17g, %.17g]", err,
                  abs_tol, a, b);
    throw ConvergenceError(msg, err);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol) {
    if (!(abs_tol > 0.0)) throw DomainError("integrate_adaptive: tolerance must be positive");
    if (a == b) return {0.0, 0.0};
    // Bisection from a long range wastes depth before it reaches the scale
    // where most integrands live; start from unit-width pieces instead.
    if (std::isfinite(a) && std::isfinite(b) && std::abs(b - a) > 64.0) {
        const double lo = std::min(a, b), hi = std::max(a, b);
        const std::vector<double> cuts = geometric_breakpoints(lo, hi, 1.0);
        QuadratureResult q = integrate_piecewise(f, cuts, abs_tol);
        if (b < a) q.value = -q.value;
        return q;
    }
    return integrate_one(f, a, b, abs_tol);
}

std::vector<double> geometric_breakpoints(double a, double b, double w) {
    if (!(b >= a) || !(w > 0.0)) throw DomainError("geometric_breakpoints: need a <= b and w > 0");
    std::vector<double> cuts{a};
    for (double x = a + w; x < b; w *= 2.0, x += w) cuts.push_back(x);
    if (b > a) cuts.push_back(b);
    return cuts;
}

QuadratureResult integrate_piecewise(const std::function<double(double)>& f,
                                     std::span<const double> cuts, double abs_tol) {
    if (!(abs_tol > 0.0)) throw DomainError("integrate_piecewise: tolerance must be positive");
    QuadratureResult out;
    if (cuts.size() < 2) return out;
    const double piece_tol = abs_tol / static_cast<double>(cuts.size() - 1);
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        const QuadratureResult q = integrate_one(f, cuts[k - 1], cuts[k], piece_tol);
        out.value += q.value;
        out.error += q.error;
    }
    return out;
}

}  // namespace nilbal
