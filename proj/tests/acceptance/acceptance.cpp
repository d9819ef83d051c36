// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every threshold below is the one the criterion names.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nilbal/geodesic.hpp"
#include "nilbal/metric.hpp"
#include "nilbal/model_surface.hpp"
#include "nilbal/mse.hpp"
#include "nilbal/radial.hpp"
#include "nilbal/verify.hpp"

using namespace nilbal;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string join(const std::vector<double>& v, const char* f = "%.6g") {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + fmt(f, x);
    return s;
}

const ClaimReport& claim(const std::vector<ClaimReport>& reps, const std::string& id) {
    for (const ClaimReport& r : reps)
        if (r.id == id) return r;
    throw std::runtime_error("no report entry " + id);
}

double value(const ClaimReport& r, const std::string& key) {
    for (const auto& [k, v] : r.values)
        if (k == key) return v;
    throw std::runtime_error("report " + r.id + " has no value " + key);
}

TangentVector frame(const ChartPoint& p, int k) {
    return {p, k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0};
}

// -------------------------------------------------------------------------

Outcome metric_equivalence() {
    double err = 0.0;
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const ChartPoint p{-5.0 + 10.0 * i / 19, -5.0 + 10.0 * j / 19, 0.0};
            const GroupElement g = to_matrix(p);
            const MetricAtPoint m = metric_closed_form(p);
            for (int a = 0; a < 3; ++a)
                for (int b = a; b < 3; ++b)
                    err = std::max(err, std::abs(balanced_metric_from_translations(g, frame(p, a), frame(p, b)) -
                                                 m(a, b)));
        }
    }
    return {err <= 1e-10, fmt("400 points, max_err=%.3e (tol 1e-10)", err)};
}

Outcome connection_certification() {
    SampleStream rng(2024);
    double err = 0.0;
    for (int n = 0; n < 100; ++n) {
        const ChartPoint p{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const ChristoffelAtPoint fd = christoffel_from_metric(p, 1e-4);
        const ChristoffelAtPoint cf = christoffel_closed_form(p);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) err = std::max(err, std::abs(fd(k, i, j) - cf(k, i, j)));
    }
    return {err <= 1e-6, fmt("100 points, h=1e-4, max_err=%.3e (tol 1e-6)", err)};
}

Outcome totally_geodesic(const std::vector<ClaimReport>& reps) {
    const ClaimReport& r = claim(reps, "T.a");
    const double sff = value(r, "max_second_fundamental_form");
    const double zeta = value(r, "max_zeta_along_geodesics");
    return {r.verdict == Verdict::pass && sff <= 1e-10 && zeta <= 1e-8,
            fmt("second_fundamental_form=%.3e (tol 1e-10)", sff) +
                fmt(", max|zeta| over t in [0,10]=%.3e (tol 1e-8)", zeta)};
}

Outcome splitting(const std::vector<ClaimReport>& reps) {
    const ClaimReport& r = claim(reps, "T.b");
    const double e = value(r, "max_pullback_error");
    return {r.verdict == Verdict::pass && e <= 1e-10, fmt("pullback_err=%.3e (tol 1e-10)", e)};
}

Outcome circle_isometries(const std::vector<ClaimReport>& reps) {
    const ClaimReport& r = claim(reps, "T.c");
    const double e = value(r, "max_isometry_error");
    const bool exact = value(r, "preserves_T") == 1.0 && value(r, "fixes_center") == 1.0;
    return {r.verdict == Verdict::pass && e <= 1e-8 && exact,
            fmt("isometry_err=%.3e (tol 1e-8)", e) + (exact ? ", T and center exact" : ", invariance broken")};
}

Outcome geodesics(const std::vector<ClaimReport>& reps) {
    const ClaimReport& r = claim(reps, "T.d");
    const double res = value(r, "max_geodesic_residual");
    const double dist = value(r, "max_distance_identity_error");
    const double rk = value(r, "max_rk4_endpoint_error");
    return {r.verdict == Verdict::pass && res <= 1e-10 && dist <= 1e-12 && rk <= 1e-8,
            fmt("16x50 residual=%.3e (1e-10)", res) + fmt(", r(gamma(t))-|t|=%.3e (1e-12)", dist) +
                fmt(", rk4 at t=1=%.3e (1e-8)", rk)};
}

Outcome curvature(const std::vector<ClaimReport>& reps) {
    const ClaimReport& r = claim(reps, "T.e");
    const double agree = value(r, "oracle_agreement_max_diff");
    const double k0 = value(r, "K_warp_origin");
    const double stated = value(r, "K_stated_origin");
    const bool ok = r.verdict == Verdict::discrepancy && agree <= 1e-5 && std::abs(k0 + 0.375) <= 1e-12 &&
                    std::abs(stated + 0.75) <= 1e-12;
    return {ok, fmt("oracle_agreement=%.3e (tol 1e-5)", agree) + fmt(", K(origin)=%.6g", k0) +
                    fmt(", stated=%.6g", stated) + ", verdict " + to_string(r.verdict)};
}

Outcome diagonal_unit_speed() {
    const ChartPoint e{0, 0, 0};
    const auto path = integrate_geodesic(e, {e, 0.5, 0.5, 0.0}, 10.0, 1000);
    double err = 0.0;
    for (const GeodesicState& s : path) {
        const MetricAtPoint g = metric_closed_form(s.point);
        err = std::max(err, std::abs(g.norm({s.velocity.a, s.velocity.b, s.velocity.c}) - 1.0));
    }
    for (int k = -100; k <= 100; ++k) {
        const double t = 0.1 * k;
        err = std::max(err, std::abs(metric_closed_form({t / 2, t / 2, 0}).norm({0.5, 0.5, 0}) - 1.0));
    }
    return {err <= 1e-12, fmt("max |speed-1|=%.3e (tol 1e-12)", err)};
}

Outcome catenoid() {
    double neck = 0.0;
    for (double c : {0.5, 1.0, 3.0, 10.0, 30.0}) {
        const double t = t0_min(c);
        neck = std::max(neck, std::abs(t * t * (t * t + 8.0) - c * c));
    }
    const CatenoidParams p{3.0, 1.0};
    double lo = INFINITY, hi = -INFINITY;
    for (int k = 0; k <= 400; ++k) {
        const double f = catenoid_flux_check(p, 1.05 + (20.0 - 1.05) * k / 400);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    std::vector<double> t;
    for (int k = 0; k < 5; ++k) t.push_back(1.2 + 1.2 * k);
    const SurfaceSample s = catenoid_sample(p, t, 4);
    double H = 0.0;
    for (double u : s.u_nodes)
        for (double v : s.v_nodes) H = std::max(H, std::abs(mean_curvature_residual(s, u, v)));
    return {neck <= 1e-10 && hi - lo <= 1e-8 && H <= 1e-5,
            fmt("neck_identity=%.3e (1e-10)", neck) + fmt(", flux_spread=%.3e (1e-8)", hi - lo) +
                fmt(", mean_curvature(20 samples)=%.3e (1e-5)", H)};
}

Outcome barrier() {
    const BarrierParams p = BarrierParams::normalized(1.0, 1.0);
    const bool f0 = barrier_f(p, 0.0).f == 0.0;
    const double slope = std::abs(barrier_df(p, 0.0) - 1.0);
    double ode = 0.0;
    for (int k = 0; k <= 3000; ++k) ode = std::max(ode, std::abs(barrier_ode_residual(p, 0.01 * k)));
    const double far = barrier_f(p, 1e6, 1e-10).f;
    const double bound = barrier_sup_bound(p);
    double margin = INFINITY;
    for (double r : {0.5, 1.0, 5.0, 20.0}) margin = std::min(margin, curvature_bound_margin(r, 1.0, 1.0));
    std::vector<double> grid;
    for (int k = 1; k <= 3000; ++k) grid.push_back(0.01 * k);
    const SubsolutionReport sub = subsolution_check(p, 1.0, grid);
    const bool ok = f0 && slope <= 1e-12 && ode <= 1e-10 && far <= bound && margin > 0.0 &&
                    sub.min_value >= -1e-10;
    return {ok, std::string(f0 ? "f(0)=0" : "f(0)!=0") + fmt(", |f'(0)-s|=%.1e", slope) +
                    fmt(", ode=%.2e", ode) + fmt(", f(1e6)=%.6f", far) + fmt(" <= %.6f", bound) +
                    fmt(", bb_margin=%.3e", margin) + fmt(", min M[f]=%.3e", sub.min_value)};
}

Outcome exterior() {
    const SolverConfig cfg;
    std::vector<ExteriorSolution> sols;
    for (double s : {0.0, 0.5, 1.0}) sols.push_back(exterior_solve(s, 1.0, cfg));

    bool below = true, grad = true;
    double worst_grad = 0.0, worst_cap = -INFINITY, oracle = 0.0;
    for (const ExteriorSolution& sol : sols) {
        for (const ExteriorLevel& lv : sol.levels) {
            below = below && lv.t <= lv.barrier_cap + 1e-6;
            worst_cap = std::max(worst_cap, lv.t - lv.barrier_cap);
            worst_grad = std::max(worst_grad, std::abs(lv.gradient - sol.s));
        }
        const ExteriorLevel& lv = sol.last();
        const double flux = flux_for_slope(1.0, sol.s);
        for (int i = 0; i < lv.grid.rows(); ++i) {
            const double r = lv.grid.r(i);
            if (r < 1.2 || r > 3.0) continue;
            const double ref = flux_height_increment(1.0, r, flux, 1e-12);
            for (int j = 0; j < lv.grid.cols(); ++j) oracle = std::max(oracle, std::abs(lv.u(i, j) - ref));
        }
        std::printf("      s=%-4g t_m=[%s] cauchy=[%s]\n", sol.s, join(sol.t_trace(), "%.6f").c_str(),
                    join(sol.cauchy, "%.2e").c_str());
    }
    grad = worst_grad <= 1e-3;
    const FoliationReport fol = foliation_check(sols);
    double rim = INFINITY;
    for (const FoliationPair& p : fol.pairs) {
        rim = std::min(rim, p.min_rim_separation);
        std::printf("      s=%g vs %g: min_interior_gap=%.3e rim_separation=[%s]\n", p.s_low, p.s_high,
                    p.min_interior_gap, join(p.rim_separation, "%.5f").c_str());
    }
    const bool ok = below && grad && oracle <= 1e-3 && fol.all_ordered && rim > 0.0;
    return {ok, fmt("max(t_m-cap)=%.3e (<=1e-6)", worst_cap) + fmt(", |grad-s|=%.2e (1e-3)", worst_grad) +
                    fmt(", radial_oracle=%.2e (1e-3)", oracle) +
                    (fol.all_ordered ? ", ordered" : ", NOT ordered") + fmt(", min_rim_sep=%.4f", rim)};
}

Outcome asymptotic() {
    SolverConfig cfg;
    cfg.schedule = {8.0, 16.0, 32.0};
    const double tol = cfg.newton_tol;

    const AsymptoticResult flat = asymptotic_solve(BoundaryData::constant(0.7), cfg);
    double cdev = 0.0;
    for (const ScalarField& f : flat.fields)
        for (double v : f.values()) cdev = std::max(cdev, std::abs(v - 0.7));

    const AsymptoticResult a = asymptotic_solve({[](double t) { return std::cos(t); }}, cfg);
    const AsymptoticResult b = asymptotic_solve({[](double t) { return std::cos(t) + 0.25; }}, cfg);
    bool maxp = true, ordered = true;
    for (std::size_t k = 0; k < a.fields.size(); ++k) {
        const auto av = a.fields[k].values();
        const auto bv = b.fields[k].values();
        for (std::size_t n = 0; n < av.size(); ++n) {
            maxp = maxp && av[n] <= 1.0 + tol && av[n] >= -1.0 - tol;
            ordered = ordered && av[n] <= bv[n] + tol;
        }
    }
    bool decreasing = !a.sup_diff.empty();
    for (std::size_t k = 1; k < a.sup_diff.size(); ++k) decreasing = decreasing && a.sup_diff[k] < a.sup_diff[k - 1];
    const bool ok = cdev <= tol && maxp && ordered && decreasing;
    return {ok, fmt("const_dev=%.2e", cdev) + (maxp ? ", max principle ok" : ", max principle VIOLATED") +
                    (ordered ? ", ordered" : ", NOT ordered") + ", sup_diff(r<=4)=[" +
                    join(a.sup_diff, "%.4e") + "]" + (decreasing ? " decreasing" : " NOT decreasing")};
}

Outcome solver_order() {
    const CatenoidParams p{3.0, 1.0};
    std::vector<double> errs;
    for (int n : {64, 128, 256, 512}) {
        const AnnulusGrid grid = AnnulusGrid::uniform(2.0, 5.0, n, 16);
        const RadialProfile prof = catenoid_profile(p, grid.radii(), 1e-13);
        ScalarField u(grid);
        for (int i = 0; i < grid.rows(); ++i)
            for (int j = 0; j < grid.cols(); ++j) u(i, j) = prof.value[static_cast<std::size_t>(i)];
        const ScalarField res = mse_operator(u, grid);
        double e = 0.0;
        for (int i = 1; i + 1 < grid.rows(); ++i)
            for (int j = 0; j < grid.cols(); ++j) e = std::max(e, std::abs(res(i, j)));
        errs.push_back(e);
    }
    std::vector<double> orders;
    for (std::size_t k = 1; k < errs.size(); ++k) orders.push_back(std::log2(errs[k - 1] / errs[k]));
    const double worst = *std::min_element(orders.begin(), orders.end());
    return {worst >= 1.8, "residuals=[" + join(errs, "%.3e") + "] orders=[" + join(orders, "%.3f") + "] (>= 1.8)"};
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    std::vector<ClaimReport> reps;
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "metric equivalence", metric_equivalence},
        {2, "connection certification", connection_certification},
        {3, "T totally geodesic", [&] { return totally_geodesic(reps); }},
        {4, "splitting isometry", [&] { return splitting(reps); }},
        {5, "circle action isometries", [&] { return circle_isometries(reps); }},
        {6, "geodesics through e", [&] { return geodesics(reps); }},
        {7, "curvature adjudication", [&] { return curvature(reps); }},
        {8, "diagonal geodesic unit speed", diagonal_unit_speed},
        {9, "catenoids", catenoid},
        {10, "barrier", barrier},
        {11, "exterior problem", exterior},
        {12, "asymptotic problem", asymptotic},
        {13, "solver order", solver_order},
    };

    const auto t_report = clock::now();
    reps = claim_report();
    const double report_s = std::chrono::duration<double>(clock::now() - t_report).count();
    std::printf("report generated in %.2fs\n", report_s);

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        std::printf("[%s] %2d %-30s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
