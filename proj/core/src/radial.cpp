#include "nilbal/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "nilbal/model_surface.hpp"
#include "nilbal/quadrature.hpp"

namespace nilbal {

double RadialProfile::interpolate(double at) const {
    if (r.size() < 2) throw DomainError("RadialProfile::interpolate: need at least two nodes");
    const double span = r.back() - r.front();
    if (at < r.front() - 1e-12 * span || at > r.back() + 1e-12 * span)
        throw DomainError("RadialProfile::interpolate: point outside the profile");
    auto it = std::upper_bound(r.begin(), r.end(), at);
    std::size_t i = it == r.begin() ? 0 : static_cast<std::size_t>(it - r.begin()) - 1;
    i = std::min(i, r.size() - 2);
    const double h = r[i + 1] - r[i];
    const double t = (at - r[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * value[i] + (t3 - 2 * t2 + t) * h * deriv[i] +
           (-2 * t3 + 3 * t2) * value[i + 1] + (t3 - t2) * h * deriv[i + 1];
}

std::vector<double> uniform_nodes(double a, double b, std::size_t count) {
    if (count < 2) throw DomainError("uniform_nodes: need at least two nodes");
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
    out.back() = b;
    return out;
}

// ---------------------------------------------------------------------------

double t0_min(double c) {
    if (!(c > 0.0)) throw DomainError("t0_min: c must be positive");
    // sqrt(c^2+16) - 4 = c^2 / (sqrt(c^2+16) + 4), stable for small c.
    return std::sqrt(c * c / (std::sqrt(c * c + 16.0) + 4.0));
}

void validate(const CatenoidParams& p) {
    if (!(p.c > 0.0)) throw DomainError("catenoid: c must be positive");
    const double lo = t0_min(p.c);
    if (p.t0 < lo * (1.0 - 1e-14))
        throw DomainError("catenoid: neck radius below sqrt(sqrt(c^2+16)-4)");
}

namespace {

// s^2 (s^2 + 8) - c^2
double neck_quartic(double s, double c) { return s * s * (s * s + 8.0) - c * c; }

bool near_minimal_neck(const CatenoidParams& p) { return p.t0 <= t0_min(p.c) + 1e-6; }

}  // namespace

double catenoid_height(const CatenoidParams& p, double t, double tol, NeckQuadrature method) {
    validate(p);
    if (!(tol > 0.0)) throw DomainError("catenoid_height: tolerance must be positive");
    if (t < p.t0) throw DomainError("catenoid_height: t below the neck radius");
    if (t == p.t0) return 0.0;

    const double scale = p.c / sqrt2;
    const double inner_tol = tol / scale;
    if (method == NeckQuadrature::automatic)
        method = near_minimal_neck(p) ? NeckQuadrature::substituted : NeckQuadrature::plain;

    if (method == NeckQuadrature::plain) {
        const double c = p.c;
        auto f = [c](double s) { return 1.0 / std::sqrt(neck_quartic(s, c)); };
        return scale * integrate_adaptive(f, p.t0, t, inner_tol).value;
    }

    const double t0 = p.t0;
    const double d0 = std::max(0.0, neck_quartic(t0, p.c));
    const double a = 2.0 * t0 * t0 + 8.0;
    auto f = [=](double tau) {
        if (tau == 0.0) return d0 > 0.0 ? 0.0 : 1.0 / (t0 * std::sqrt(a));
        const double s = std::sqrt(t0 * t0 + tau * tau);
        return tau / (s * std::sqrt(d0 + tau * tau * (a + tau * tau)));
    };
    // Thin necks: the integrand peaks at ~1/t0 over tau ~ t0.
    const double tau_max = std::sqrt((t - t0) * (t + t0));
    const std::vector<double> cuts = geometric_breakpoints(0.0, tau_max, std::min(t0, 1.0));
    return scale * integrate_piecewise(f, cuts, inner_tol).value;
}

double catenoid_slope(const CatenoidParams& p, double t) {
    validate(p);
    if (!(t > p.t0)) throw DomainError("catenoid_slope: t must exceed the neck radius");
    return p.c / std::sqrt(neck_quartic(t, p.c));
}

double catenoid_flux_check(const CatenoidParams& p, double r) {
    validate(p);
    if (!(r > p.t0)) throw DomainError("catenoid_flux_check: r must exceed the neck radius");
    const double slope = catenoid_slope(p, r);
    return warp(r).g * slope / std::sqrt(1.0 + slope * slope);
}

RadialProfile catenoid_profile(const CatenoidParams& p, std::span<const double> nodes,
                               double tol) {
    validate(p);
    RadialProfile out;
    out.r.assign(nodes.begin(), nodes.end());
    out.value.reserve(nodes.size());
    out.deriv.reserve(nodes.size());
    for (double t : nodes) {
        out.value.push_back(sqrt2 * catenoid_height(p, t, tol / sqrt2));
        out.deriv.push_back(t > p.t0 ? catenoid_slope(p, t) : INFINITY);
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

double barrier_exponent(double alpha, double x) {
    return std::exp(sqrt2 * alpha * std::atan(x / (2.0 * sqrt2)));
}

}  // namespace

BarrierParams BarrierParams::normalized(double s, double alpha) {
    if (!(alpha > 0.0)) throw DomainError("BarrierParams: alpha must be positive");
    if (s < 0.0) throw DomainError("BarrierParams: s must be nonnegative");
    const double c = s * (alpha * alpha + 8.0) /
                     std::exp(sqrt2 * alpha * std::atan(sqrt2 * alpha / 4.0));
    return {s, alpha, c};
}

double barrier_df(const BarrierParams& p, double r) {
    const double x = r + p.alpha;
    return p.c_barrier * barrier_exponent(p.alpha, x) / (x * x + 8.0);
}

double barrier_d2f(const BarrierParams& p, double r) {
    const double x = r + p.alpha;
    const double e = barrier_exponent(p.alpha, x);
    const double de = e * 4.0 * p.alpha / (x * x + 8.0);
    const double d = x * x + 8.0;
    return p.c_barrier * (de * d - e * 2.0 * x) / (d * d);
}

double barrier_ode_residual(const BarrierParams& p, double r) {
    return barrier_d2f(p, r) + barrier_df(p, r) * level_curvature_bound(r, p.alpha);
}

BarrierValue barrier_f(const BarrierParams& p, double r, double tol) {
    if (r < 0.0) throw DomainError("barrier_f: r must be nonnegative");
    const double df = barrier_df(p, r);
    if (r == 0.0 || p.c_barrier == 0.0) return {0.0, df};
    auto integrand = [&p](double t) { return barrier_df(p, t); };
    return {integrate_adaptive(integrand, 0.0, r, tol).value, df};
}

double barrier_sup_bound(const BarrierParams& p) {
    const double a = p.alpha;
    const double tail = (std::numbers::pi / 2.0 - std::atan(a / (2.0 * sqrt2))) / (2.0 * sqrt2);
    return p.c_barrier * std::exp(sqrt2 * a * std::numbers::pi / 2.0) * tail;
}

RadialProfile barrier_profile(const BarrierParams& p, std::span<const double> nodes, double tol) {
    RadialProfile out;
    out.r.assign(nodes.begin(), nodes.end());
    double acc = 0.0;
    double prev = 0.0;
    auto integrand = [&p](double t) { return barrier_df(p, t); };
    for (double r : nodes) {
        if (r < 0.0) throw DomainError("barrier_profile: nodes must be nonnegative");
        if (r < prev) throw DomainError("barrier_profile: nodes must be increasing");
        if (r > prev) acc += integrate_adaptive(integrand, prev, r, tol).value;
        prev = r;
        out.value.push_back(acc);
        out.deriv.push_back(barrier_df(p, r));
    }
    return out;
}

double level_curvature_bound(double r, double alpha) {
    const double x = r + alpha;
    return 2.0 * (r - alpha) / (x * x + 8.0);
}

double curvature_bound_margin(double r, double r0, double alpha) {
    const WarpValues w = warp(r + r0);
    return w.dg / w.g - level_curvature_bound(r, alpha);
}

SubsolutionReport subsolution_check(const BarrierParams& p, double r0,
                                    std::span<const double> grid) {
    if (!(r0 > 0.0)) throw DomainError("subsolution_check: r0 must be positive");
    if (std::abs(p.alpha - r0) > 1e-12 * r0)
        throw DomainError("subsolution_check: alpha must equal the disk radius");
    SubsolutionReport rep;
    rep.min_value = INFINITY;
    for (double r : grid) {
        const double df = barrier_df(p, r);
        const double d2f = barrier_d2f(p, r);
        const WarpValues w = warp(r0 + r);
        const double W = std::sqrt(1.0 + df * df);
        // div(grad v / W) for v = f(dist): f''/W^3 + f' kappa / W.
        const double m = d2f / (W * W * W) + df * (w.dg / w.g) / W;
        rep.r.push_back(r);
        rep.operator_value.push_back(m);
        rep.min_value = std::min(rep.min_value, m);
    }
    if (grid.empty()) rep.min_value = 0.0;
    rep.nonnegative = rep.min_value >= -1e-10;
    return rep;
}

// ---------------------------------------------------------------------------

double flux_height_increment(double r_a, double r_b, double flux, double tol) {
    if (r_b < r_a) throw DomainError("flux_height_increment: r_b < r_a");
    if (r_b == r_a || flux == 0.0) return 0.0;
    const double ga = warp(r_a).g;
    const double q = std::abs(flux);
    if (q > ga * (1.0 + 1e-14))
        throw DomainError("flux_height_increment: |flux| exceeds g(r_a)");
    // r = r_a + tau^2 keeps the integrand bounded when |flux| = g(r_a), and
    // g^2 - g_a^2 = tau^2 (r + r_a)(1 + (r^2 + r_a^2)/8) avoids cancellation.
    const double slack = q < ga ? (ga - q) * (ga + q) : 0.0;
    auto f = [=](double tau) {
        const double r = r_a + tau * tau;
        const double core = (r + r_a) * (1.0 + (r * r + r_a * r_a) / 8.0);
        if (tau == 0.0) return slack > 0.0 ? 0.0 : 2.0 * q / std::sqrt(core);
        return 2.0 * q / std::sqrt(core + slack / (tau * tau));
    };
    // For |flux| just below g(r_a) the integrand climbs from 0 to O(1) over
    // tau ~ sqrt(slack / core); geometric breakpoints from that scale on.
    const double len = std::sqrt(r_b - r_a);
    std::vector<double> cuts{0.0};
    if (slack > 0.0) {
        for (double c = std::sqrt(slack / (2.0 * r_a * (1.0 + r_a * r_a / 4.0))); c < len; c *= 4.0)
            cuts.push_back(c);
    }
    cuts.push_back(len);
    const double v = integrate_piecewise(f, cuts, tol).value;
    return flux < 0.0 ? -v : v;
}

RadialProfile radial_profile_from_flux(double u_in, double flux, std::span<const double> nodes,
                                       double tol) {
    if (nodes.size() < 2) throw DomainError("radial_profile_from_flux: need at least two nodes");
    RadialProfile out;
    out.r.assign(nodes.begin(), nodes.end());
    const double seg_tol = tol / static_cast<double>(nodes.size());
    double u = u_in;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i > 0) u += flux_height_increment(nodes[i - 1], nodes[i], flux, seg_tol);
        const double g = warp(nodes[i]).g;
        const double gap = g * g - flux * flux;
        out.value.push_back(u);
        out.deriv.push_back(gap > 0.0 ? flux / std::sqrt(gap) : std::copysign(INFINITY, flux));
    }
    return out;
}

double flux_for_slope(double r_in, double slope) {
    return warp(r_in).g * slope / std::sqrt(1.0 + slope * slope);
}

RadialSolution radial_mse_solve(double r_in, double r_out, double u_in, double u_out, double tol,
                                std::span<const double> nodes) {
    if (!(r_in > 0.0) || !(r_out > r_in))
        throw DomainError("radial_mse_solve: need 0 < r_in < r_out");
    if (!(tol > 0.0)) throw DomainError("radial_mse_solve: tolerance must be positive");

    std::vector<double> own;
    if (nodes.empty()) {
        own = uniform_nodes(r_in, r_out, 201);
        nodes = own;
    }
    if (nodes.front() != r_in || nodes.back() != r_out)
        throw DomainError("radial_mse_solve: nodes must span [r_in, r_out]");

    const double target = u_out - u_in;
    const double g_in = warp(r_in).g;
    const double quad_tol = 0.01 * tol;
    auto height = [&](double flux) { return flux_height_increment(r_in, r_out, flux, quad_tol); };

    const double max_diff = height(g_in);
    if (std::abs(target) > max_diff + tol)
        throw NoAdmissibleFlux("radial_mse_solve: height difference exceeds the maximal radial graph",
                               max_diff);

    double flux = 0.0;
    if (target != 0.0) {
        if (std::abs(target) >= max_diff) {
            flux = std::copysign(g_in, target);
        } else {
            auto f = [&](double q) { return height(q) - target; };
            boost::uintmax_t iters = 200;
            const auto [lo, hi] = boost::math::tools::toms748_solve(
                f, -g_in, g_in, -max_diff - target, max_diff - target,
                boost::math::tools::eps_tolerance<double>(50), iters);
            flux = 0.5 * (lo + hi);
        }
    }

    RadialSolution sol;
    sol.flux = flux;
    sol.profile = radial_profile_from_flux(u_in, flux, nodes, quad_tol);
    sol.boundary_residual = std::abs(sol.profile.value.back() - u_out);
    if (sol.boundary_residual > tol)
        throw ConvergenceError("radial_mse_solve: boundary mismatch above tolerance",
                               sol.boundary_residual);
    return sol;
}

}  // namespace nilbal
