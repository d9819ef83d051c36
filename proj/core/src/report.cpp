#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "nilbal/geodesic.hpp"
#include "nilbal/metric.hpp"
#include "nilbal/model_surface.hpp"
#include "nilbal/radial.hpp"
#include "nilbal/verify.hpp"

namespace nilbal {

namespace {

constexpr double pi = std::numbers::pi;

Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

double metric_by_translations(const ChartPoint& p, const std::array<double, 3>& du,
                              const std::array<double, 3>& dv) {
    return balanced_metric_from_translations(to_matrix(p), from_matrix_components(p, du),
                                             from_matrix_components(p, dv));
}

ClaimReport totally_geodesic(const ReportTolerances& tols) {
    SampleStream rng(0xA11CE);
    double max_ii = 0.0;
    for (int k = 0; k < 100; ++k) {
        const SurfacePoint p{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        for (const auto& row : second_fundamental_form_T(p))
            for (double v : row) max_ii = std::max(max_ii, std::abs(v));
    }
    double max_zeta = 0.0;
    for (int k = 0; k < 8; ++k) {
        const ChartPoint p0{rng.uniform(-2, 2), rng.uniform(-2, 2), 0.0};
        const double phi = rng.uniform(0, 2 * pi);
        const MetricAtPoint g = metric_closed_form(p0);
        const Vec3 dir{std::cos(phi), std::sin(phi), 0.0};
        const double n = g.norm(dir);
        const TangentVector v0{p0, dir[0] / n, dir[1] / n, 0.0};
        for (const auto& st : integrate_geodesic(p0, v0, 10.0, 1000))
            max_zeta = std::max(max_zeta, std::abs(st.point.zeta));
    }
    ClaimReport r;
    r.id = "T.a";
    r.locus = "T is totally geodesic";
    r.values = {{"max_second_fundamental_form", max_ii}, {"max_zeta_along_geodesics", max_zeta}};
    r.tolerance = tols.exact;
    r.verdict = verdict_of(max_ii <= tols.exact && max_zeta <= tols.integration);
    return r;
}

ClaimReport splitting(const ReportTolerances& tols) {
    SampleStream rng(0xB0B);
    double max_err = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double x = rng.uniform(-5, 5);
        const double y = rng.uniform(-5, 5);
        const double t = rng.uniform(-5, 5);
        // dPsi of d/dx, d/dy, d/dt in matrix coordinates.
        const std::array<std::array<double, 3>, 3> dpsi{
            {{1.0, 0.0, 0.5 * y}, {0.0, 1.0, 0.5 * x}, {0.0, 0.0, 1.0}}};
        const GroupElement image = splitting_isometry({x, y}, {t});
        const ChartPoint at = to_chart(image);
        const ChartPoint on_T{x, y, 0.0};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                const double pulled = metric_by_translations(at, dpsi[a], dpsi[b]);
                double product = 0.0;
                if (a < 2 && b < 2) product = metric_by_translations(on_T, dpsi[a], dpsi[b]);
                else if (a == 2 && b == 2) product = 2.0;
                max_err = std::max(max_err, std::abs(pulled - product));
            }
        }
    }
    ClaimReport r;
    r.id = "T.b";
    r.locus = "Nil3 is isometric to T x center";
    r.values = {{"max_pullback_error", max_err}};
    r.tolerance = tols.exact;
    r.verdict = verdict_of(max_err <= tols.exact);
    return r;
}

ClaimReport circle_isometry(const ReportTolerances& tols) {
    SampleStream rng(0xC1C1E);
    const double h = 1e-5;
    double max_err = 0.0;
    bool keeps_T = true;
    bool fixes_center = true;
    for (int k = 0; k < 50; ++k) {
        const double theta = rng.uniform(0, 2 * pi);
        const ChartPoint p{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const GroupElement g = to_matrix(p);
        const GroupElement image = circle_action(theta, g);
        const ChartPoint q = to_chart(image);
        std::array<std::array<double, 3>, 3> pushed{};
        std::array<std::array<double, 3>, 3> frame{};
        for (int a = 0; a < 3; ++a) {
            TangentVector e{p, 0.0, 0.0, 0.0};
            (a == 0 ? e.a : a == 1 ? e.b : e.c) = 1.0;
            frame[a] = to_matrix_components(e);
            const GroupElement plus = circle_action(
                theta, {g.x + h * frame[a][0], g.y + h * frame[a][1], g.z + h * frame[a][2]});
            const GroupElement minus = circle_action(
                theta, {g.x - h * frame[a][0], g.y - h * frame[a][1], g.z - h * frame[a][2]});
            pushed[a] = {(plus.x - minus.x) / (2 * h), (plus.y - minus.y) / (2 * h),
                         (plus.z - minus.z) / (2 * h)};
        }
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                const double before = metric_by_translations(p, frame[a], frame[b]);
                const double after = metric_by_translations(q, pushed[a], pushed[b]);
                max_err = std::max(max_err, std::abs(after - before));
            }
        }
        const double x = p.x, y = p.y;
        keeps_T = keeps_T && to_chart(circle_action(theta, {x, y, 0.5 * x * y})).zeta == 0.0;
        const GroupElement c{0.0, 0.0, p.zeta};
        fixes_center = fixes_center && circle_action(theta, c) == c;
    }
    ClaimReport r;
    r.id = "T.c";
    r.locus = "S1 acts by isometries, preserves T, fixes the center";
    r.values = {{"max_isometry_error", max_err},
                {"preserves_T", keeps_T ? 1.0 : 0.0},
                {"fixes_center", fixes_center ? 1.0 : 0.0}};
    r.tolerance = tols.finite_difference;
    r.verdict = verdict_of(max_err <= std::min(tols.finite_difference, 1e-8) && keeps_T &&
                           fixes_center);
    return r;
}

ClaimReport geodesics(const ReportTolerances& tols) {
    double max_ode = 0.0;
    double max_dist = 0.0;
    double max_rk4 = 0.0;
    for (int a = 0; a < 16; ++a) {
        const double theta = 2 * pi * a / 16;
        const double c = std::cos(theta), s = std::sin(theta);
        // Derivatives of the closed form in matrix coordinates.
        const double xd = 0.5 * (c - s), yd = 0.5 * (s + c);
        const double zdd = (c - s) * (s + c) / 4.0;
        for (int k = 0; k < 50; ++k) {
            const double t = 10.0 * k / 49;
            const GroupElement gm = geodesic_closed_form(theta, t);
            const ChartPoint p = to_chart(gm);
            // zeta = z - xy/2, so zeta' = z' - (x'y + xy')/2 and zeta'' = z'' - x'y'.
            const double zd = zdd * t;
            const TangentVector vel{p, xd, yd, zd - 0.5 * (xd * gm.y + gm.x * yd)};
            const Vec3 accel{0.0, 0.0, zdd - xd * yd};
            const TangentVector rhs = geodesic_ode_rhs(p, vel);
            max_ode = std::max({max_ode, std::abs(accel[0] - rhs.a), std::abs(accel[1] - rhs.b),
                                std::abs(accel[2] - rhs.c)});
            max_dist = std::max(max_dist, std::abs(distance_to_identity({gm.x, gm.y}) - t));
        }
        const ChartPoint e{};
        const auto path = integrate_geodesic(e, TangentVector{e, xd, yd, 0.0}, 1.0, 100);
        const ChartPoint end = path.back().point;
        const ChartPoint expect = to_chart(geodesic_closed_form(theta, 1.0));
        max_rk4 = std::max({max_rk4, std::abs(end.x - expect.x), std::abs(end.y - expect.y),
                            std::abs(end.zeta - expect.zeta)});
    }
    ClaimReport r;
    r.id = "T.d";
    r.locus = "closed-form geodesics through e and r = sqrt2 sqrt(x^2+y^2)";
    r.values = {{"max_geodesic_residual", max_ode},
                {"max_distance_identity_error", max_dist},
                {"max_rk4_endpoint_error", max_rk4}};
    r.tolerance = tols.exact;
    r.verdict = verdict_of(max_ode <= tols.exact && max_dist <= tols.distance &&
                           max_rk4 <= tols.integration);
    return r;
}

ClaimReport curvature(const ReportTolerances& tols) {
    double max_diff = 0.0;
    double max_spread = 0.0;
    for (double r : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double kw = warp_curvature(r);
        double lo = INFINITY, hi = -INFINITY;
        for (int a = 0; a < 8; ++a) {
            const SurfacePoint p = from_polar({r, 2 * pi * a / 8 + 0.1});
            const double kr = gaussian_curvature_riemann(p, 1e-4);
            max_diff = std::max(max_diff, std::abs(kr - kw));
            lo = std::min(lo, kr);
            hi = std::max(hi, kr);
        }
        max_spread = std::max(max_spread, hi - lo);
    }
    const double k0 = gaussian_curvature_riemann({0.0, 0.0}, 1e-4);
    const CurvatureCandidates c0 = curvature_closed_forms({0.0, 0.0});
    const CurvatureCandidates c2 = curvature_closed_forms(from_polar({2.0, 0.0}));

    ClaimReport r;
    r.id = "T.e";
    r.locus = "curvature of T";
    r.values = {{"oracle_agreement_max_diff", max_diff},
                {"rotational_spread", max_spread},
                {"K_riemann_origin", k0},
                {"K_warp_origin", c0.k_warp},
                {"K_stated_origin", c0.k_stated},
                {"K_warp_r2", c2.k_warp},
                {"K_stated_r2", c2.k_stated},
                {"stated_over_oracle", c0.k_stated / k0}};
    r.tolerance = tols.finite_difference;
    const bool oracles_agree = max_diff <= tols.finite_difference;
    const bool stated_matches = std::abs(c0.k_stated - k0) <= tols.finite_difference;
    if (!oracles_agree) {
        r.verdict = Verdict::fail;
        r.note = "curvature oracles disagree";
    } else if (stated_matches) {
        r.verdict = Verdict::pass;
    } else {
        r.verdict = Verdict::discrepancy;
        r.note =
            "oracles agree on -2(r^2+12)/(r^2+8)^2; stated constant is -4(r^2+12)/(r^2+8)^2";
    }
    return r;
}

ClaimReport catenoid(const ReportTolerances& tols) {
    double neck_err = 0.0;
    for (double c : {0.1, 1.0, 3.0, 10.0, 100.0}) {
        const double t = t0_min(c);
        neck_err = std::max(neck_err, std::abs(t * t * (t * t + 8.0) - c * c));
    }
    const CatenoidParams p{3.0, 1.0};
    double lo = INFINITY, hi = -INFINITY;
    for (int k = 0; k <= 200; ++k) {
        const double r = p.t0 + 0.05 + (20.0 - p.t0 - 0.05) * k / 200;
        const double f = catenoid_flux_check(p, r);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    std::vector<double> t_nodes;
    for (int k = 0; k < 10; ++k) t_nodes.push_back(p.t0 + 0.1 + (10.0 - p.t0 - 0.1) * k / 9);
    const SurfaceSample surf = catenoid_sample(p, t_nodes, 8);
    double max_h = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double t = t_nodes[static_cast<std::size_t>(k % 10)];
        const double th = 2 * pi * k / 20;
        max_h = std::max(max_h, std::abs(mean_curvature_residual(surf, t, th)));
    }
    ClaimReport r;
    r.id = "P.catenoid";
    r.locus = "rotational catenoids with t0 >= sqrt(sqrt(c^2+16)-4)";
    r.values = {{"neck_identity_error", neck_err},
                {"flux_spread", hi - lo},
                {"flux_value", 0.5 * (hi + lo)},
                {"max_mean_curvature", max_h}};
    r.tolerance = tols.finite_difference;
    r.verdict = verdict_of(neck_err <= tols.exact && hi - lo <= tols.flux &&
                           max_h <= tols.finite_difference);
    return r;
}

std::string fmt_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

}  // namespace

std::vector<ClaimReport> claim_report(const ReportTolerances& tols) {
    return {totally_geodesic(tols), splitting(tols), circle_isometry(tols),
            geodesics(tols),        curvature(tols), catenoid(tols)};
}

std::string report_table(const std::vector<ClaimReport>& reports) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %-12s %-14s %s\n", "claim", "verdict", "tolerance",
                  "locus");
    os << line;
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line, "%-12s %-12s %-14s %s\n", r.id.c_str(),
                      to_string(r.verdict).c_str(), fmt_value(r.tolerance).c_str(),
                      r.locus.c_str());
        os << line;
        for (const auto& [k, v] : r.values) os << "    " << k << " = " << fmt_value(v) << '\n';
        if (!r.note.empty()) os << "    note: " << r.note << '\n';
    }
    return os.str();
}

std::string report_json(const std::vector<ClaimReport>& reports) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json values = nlohmann::ordered_json::object();
        for (const auto& [k, v] : r.values) values[k] = v;
        nlohmann::ordered_json item;
        item["id"] = r.id;
        item["locus"] = r.locus;
        item["verdict"] = to_string(r.verdict);
        item["values"] = std::move(values);
        item["tolerance"] = r.tolerance;
        if (!r.note.empty()) item["note"] = r.note;
        doc.push_back(std::move(item));
    }
    return doc.dump(2);
}

}  // namespace nilbal
