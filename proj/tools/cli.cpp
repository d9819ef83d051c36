#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "nilbal/config.hpp"
#include "nilbal/error.hpp"
#include "nilbal/export.hpp"
#include "nilbal/geodesic.hpp"
#include "nilbal/model_surface.hpp"
#include "nilbal/mse.hpp"
#include "nilbal/radial.hpp"
#include "nilbal/verify.hpp"

namespace nilbal::cli {

namespace {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

// NILBAL_LOG = error | warn | info | debug (default warn).
LogLevel log_level_from_env(std::ostream& err) {
    const char* env = std::getenv("NILBAL_LOG");
    if (!env || !*env) return LogLevel::warn;
    const std::string v = env;
    if (v == "error") return LogLevel::error;
    if (v == "warn") return LogLevel::warn;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    fmt::print(err, "warning: NILBAL_LOG='{}' not recognized, using warn\n", v);
    return LogLevel::warn;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + num(v[k]);
    return s;
}

using Echo = std::map<std::string, std::string>;

struct Context {
    std::ostream& out;
    std::ostream& err;
    LogLevel level;
    SolverConfig cfg;

    void log(LogLevel at, const std::string& msg) const {
        if (at <= level) err << msg << '\n';
    }
    void echo(const std::string& command, const Echo& opts, bool with_solver) const {
        out << "# command = " << command << '\n';
        for (const auto& [k, v] : opts) out << "# " << k << " = " << v << '\n';
        if (with_solver)
            for (const auto& [k, v] : describe(cfg)) out << "# solver." << k << " = " << v << '\n';
    }
};

MeshFormat format_from_path(const std::string& path) {
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "obj") return MeshFormat::obj;
    if (ext == "ply") return MeshFormat::ply;
    throw DomainError("mesh path must end in .obj or .ply: " + path);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = a + (b - a) * k / (n - 1);
    v.back() = b;
    return v;
}

// ---------------------------------------------------------------------------

struct GeodesicOpts {
    double theta = 0.0;
    double tmax = 1.0;
    int steps = 1000;
    std::string csv;
};

int cmd_geodesic(Context& ctx, const GeodesicOpts& o) {
    ctx.echo("geodesic",
             {{"theta", num(o.theta)}, {"tmax", num(o.tmax)}, {"steps", std::to_string(o.steps)},
              {"csv", o.csv}},
             false);
    const double c = std::cos(o.theta), s = std::sin(o.theta);
    const ChartPoint e{};
    const TangentVector v0{e, 0.5 * (c - s), 0.5 * (s + c), 0.0};
    const auto path = integrate_geodesic(e, v0, o.tmax, o.steps);
    double max_dev = 0.0;
    CsvTable table{{"t", "x", "y", "z"}, {}};
    for (int k = 0; k <= o.steps; ++k) {
        const double t = o.tmax * k / o.steps;
        const GroupElement num_pt = to_matrix(path[static_cast<std::size_t>(k)].point);
        const GroupElement exact = geodesic_closed_form(o.theta, t);
        max_dev = std::max({max_dev, std::abs(num_pt.x - exact.x), std::abs(num_pt.y - exact.y),
                            std::abs(num_pt.z - exact.z)});
        table.rows.push_back({t, num_pt.x, num_pt.y, num_pt.z});
    }
    const GroupElement end = geodesic_closed_form(o.theta, o.tmax);
    const GroupElement rk = to_matrix(path.back().point);
    fmt::print(ctx.out, "closed_form_end  {} {} {}\n", num(end.x), num(end.y), num(end.z));
    fmt::print(ctx.out, "rk4_end          {} {} {}\n", num(rk.x), num(rk.y), num(rk.z));
    fmt::print(ctx.out, "max_deviation    {:.3e}\n", max_dev);
    fmt::print(ctx.out, "distance_to_e    {}\n", num(distance_to_identity({end.x, end.y})));
    fmt::print(ctx.out, "polar_angle      {}\n", num(launch_to_polar_angle(o.theta)));
    if (!o.csv.empty()) export_csv(table, o.csv);
    return ok;
}

struct CurvatureOpts {
    std::vector<double> radii{0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    double h = 1e-4;
};

int cmd_curvature(Context& ctx, const CurvatureOpts& o) {
    ctx.echo("curvature", {{"r", list(o.radii)}, {"fd_step", num(o.h)}}, false);
    fmt::print(ctx.out, "{:>8} {:>22} {:>22} {:>22}\n", "r", "K_riemann", "K_warp", "K_stated");
    double max_diff = 0.0;
    for (double r : o.radii) {
        const SurfacePoint p = from_polar({r, 0.0});
        const double kr = gaussian_curvature_riemann(p, o.h);
        const CurvatureCandidates kc = curvature_closed_forms(p);
        max_diff = std::max(max_diff, std::abs(kr - kc.k_warp));
        fmt::print(ctx.out, "{:>8} {:>22.15e} {:>22.15e} {:>22.15e}\n", num(r), kr, kc.k_warp,
                   kc.k_stated);
    }
    fmt::print(ctx.out, "oracle_agreement {:.3e}\n", max_diff);
    fmt::print(ctx.out, "verdict          {}\n",
               max_diff <= 1e-5 ? "discrepancy (stated constant is twice -g''/g)" : "fail");
    return max_diff <= 1e-5 ? ok : solver_failure;
}

struct CatenoidOpts {
    double c = 3.0;
    std::optional<double> t0;
    double tmax = 6.0;
    int nodes = 64;
    int angular = 64;
    double tol = 1e-12;
    std::string export_obj, export_ply, csv;
};

int cmd_catenoid(Context& ctx, const CatenoidOpts& o) {
    const CatenoidParams p{o.c, o.t0 ? *o.t0 : t0_min(o.c)};
    ctx.echo("catenoid",
             {{"c", num(p.c)}, {"t0", num(p.t0)}, {"tmax", num(o.tmax)},
              {"nodes", std::to_string(o.nodes)}, {"angular", std::to_string(o.angular)},
              {"tol", num(o.tol)}, {"export_obj", o.export_obj}, {"export_ply", o.export_ply},
              {"csv", o.csv}},
             false);
    validate(p);
    if (!(o.tmax > p.t0)) throw DomainError("catenoid: tmax must exceed t0");
    if (o.nodes < 2 || o.angular < 3) throw DomainError("catenoid: too few nodes");
    const auto t_nodes = linspace(p.t0, o.tmax, o.nodes);
    const RadialProfile prof = catenoid_profile(p, t_nodes, o.tol);

    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t k = 1; k < t_nodes.size(); ++k) {
        const double f = catenoid_flux_check(p, t_nodes[k]);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    fmt::print(ctx.out, "t0_min           {}\n", num(t0_min(p.c)));
    fmt::print(ctx.out, "height_at_tmax   {}\n", num(prof.value.back() / sqrt2));
    fmt::print(ctx.out, "flux             {}\n", num(0.5 * (lo + hi)));
    fmt::print(ctx.out, "flux_expected    {}\n", num(p.c / (2.0 * sqrt2)));
    fmt::print(ctx.out, "flux_spread      {:.3e}\n", hi - lo);

    if (!o.csv.empty()) {
        CsvTable t{{"t", "h", "u_slope"}, {}};
        for (std::size_t k = 0; k < prof.size(); ++k)
            t.rows.push_back({prof.r[k], prof.value[k] / sqrt2, prof.deriv[k]});
        export_csv(t, o.csv);
    }
    if (!o.export_obj.empty() || !o.export_ply.empty()) {
        const MeshFile mesh = build_mesh(catenoid_sample(p, t_nodes, o.angular, o.tol));
        if (!o.export_obj.empty()) export_mesh(mesh, o.export_obj, MeshFormat::obj);
        if (!o.export_ply.empty()) export_mesh(mesh, o.export_ply, MeshFormat::ply);
        fmt::print(ctx.out, "mesh             {} vertices, {} faces\n", mesh.vertices.size(),
                   mesh.faces.size());
    }
    return ok;
}

struct BarrierOpts {
    double s = 1.0;
    double alpha = 1.0;
    double rmax = 30.0;
    double step = 0.1;
    std::string csv;
};

int cmd_barrier(Context& ctx, const BarrierOpts& o) {
    ctx.echo("barrier",
             {{"s", num(o.s)}, {"alpha", num(o.alpha)}, {"rmax", num(o.rmax)},
              {"step", num(o.step)}, {"csv", o.csv}},
             false);
    if (!(o.step > 0.0) || !(o.rmax > 0.0)) throw DomainError("barrier: rmax and step must be positive");
    const BarrierParams p = BarrierParams::normalized(o.s, o.alpha);
    const int n = static_cast<int>(std::llround(o.rmax / o.step)) + 1;
    std::vector<double> nodes(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) nodes[static_cast<std::size_t>(k)] = std::min(o.rmax, k * o.step);
    const RadialProfile prof = barrier_profile(p, nodes);
    double ode = 0.0;
    for (double r : nodes) ode = std::max(ode, std::abs(barrier_ode_residual(p, r)));
    fmt::print(ctx.out, "c                {}\n", num(p.c_barrier));
    fmt::print(ctx.out, "f_prime_0        {}\n", num(barrier_df(p, 0.0)));
    fmt::print(ctx.out, "f_at_rmax        {}\n", num(prof.value.back()));
    fmt::print(ctx.out, "sup_bound        {}\n", num(barrier_sup_bound(p)));
    fmt::print(ctx.out, "ode_residual     {:.3e}\n", ode);
    fmt::print(ctx.out, "rows             {}\n", prof.size());
    if (!o.csv.empty()) export_csv(profile_table(prof, "r", "f", "f_prime"), o.csv);
    return ok;
}

struct ExteriorOpts {
    double s = 1.0;
    double r0 = 1.0;
    std::string schedule;
    std::string csv, export_obj, export_ply;
    bool residual = false;
};

// |H| per vertex; NaN where the difference stencil leaves the parameter
// domain (catenoid neck).
VertexScalar residual_channel(const SurfaceSample& surf) {
    return [surf](double u, double v) {
        try {
            return std::abs(mean_curvature_residual(surf, u, v));
        } catch (const DomainError&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    };
}

int cmd_exterior(Context& ctx, const ExteriorOpts& o) {
    if (!o.schedule.empty()) ctx.cfg.schedule = parse_number_list(o.schedule);
    ctx.echo("exterior",
             {{"s", num(o.s)}, {"r0", num(o.r0)}, {"csv", o.csv}, {"export_obj", o.export_obj},
              {"export_ply", o.export_ply}, {"residual", o.residual ? "true" : "false"}},
             true);
    const ExteriorSolution sol = exterior_solve(o.s, o.r0, ctx.cfg);
    fmt::print(ctx.out, "{:>6} {:>22} {:>22} {:>22} {:>7}\n", "m", "t_m", "barrier_cap",
               "boundary_gradient", "solves");
    for (const auto& l : sol.levels)
        fmt::print(ctx.out, "{:>6} {:>22} {:>22} {:>22} {:>7}\n", num(l.m), num(l.t),
                   num(l.barrier_cap), num(l.gradient), l.solves);
    for (std::size_t k = 0; k < sol.cauchy.size(); ++k)
        fmt::print(ctx.out, "cauchy m={} vs m={}  {:.3e}\n", num(sol.levels[k].m),
                   num(sol.levels[k + 1].m), sol.cauchy[k]);

    // Distance to the rotationally symmetric solution with the same slope.
    const ExteriorLevel& last = sol.last();
    const double flux = flux_for_slope(o.r0, o.s);
    double oracle = 0.0;
    for (int i = 0; i < last.grid.rows() && last.grid.r(i) <= std::min(3.0, last.m); ++i) {
        const double ref = flux_height_increment(o.r0, last.grid.r(i), flux, 1e-12);
        for (int j = 0; j < last.grid.cols(); ++j)
            oracle = std::max(oracle, std::abs(last.u(i, j) - ref));
    }
    fmt::print(ctx.out, "radial_oracle_sup_diff(r<=3) {:.3e}\n", oracle);

    if (!o.csv.empty()) export_csv(radial_slice_table(last.grid, last.u, 0), o.csv);
    if (!o.export_obj.empty() || !o.export_ply.empty()) {
        const SurfaceSample surf = graph_embed(last.u, last.grid);
        const MeshFile mesh = o.residual ? build_mesh(surf, residual_channel(surf), "mean_curvature")
                                         : build_mesh(surf);
        if (!o.export_obj.empty()) export_mesh(mesh, o.export_obj, MeshFormat::obj);
        if (!o.export_ply.empty()) export_mesh(mesh, o.export_ply, MeshFormat::ply);
    }
    return ok;
}

struct AsymptoticOpts {
    std::string phi = "cos";
    double amplitude = 1.0;
    int mode = 1;
    double offset = 0.0;
    std::string schedule;
    std::string csv;
};

int cmd_asymptotic(Context& ctx, const AsymptoticOpts& o) {
    if (!o.schedule.empty()) ctx.cfg.schedule = parse_number_list(o.schedule);
    ctx.echo("asymptotic",
             {{"phi", o.phi}, {"amplitude", num(o.amplitude)}, {"mode", std::to_string(o.mode)},
              {"offset", num(o.offset)}, {"csv", o.csv}},
             true);
    const double a = o.amplitude, b = o.offset;
    const int k = o.mode;
    BoundaryData phi;
    if (o.phi == "const") phi = BoundaryData::constant(a + b);
    else if (o.phi == "cos") phi.phi = [=](double t) { return b + a * std::cos(k * t); };
    else if (o.phi == "sin") phi.phi = [=](double t) { return b + a * std::sin(k * t); };
    else throw DomainError("asymptotic: --phi must be const, cos or sin");

    const AsymptoticResult res = asymptotic_solve(phi, ctx.cfg);
    fmt::print(ctx.out, "{:>6} {:>22} {:>22} {:>22} {:>22}\n", "R", "min_u", "max_u", "min_phi",
               "max_phi");
    for (std::size_t n = 0; n < res.fields.size(); ++n) {
        const auto& g = res.grids[n];
        const auto vals = res.fields[n].values();
        const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
        double plo = INFINITY, phi_hi = -INFINITY;
        for (int j = 0; j < g.cols(); ++j) {
            plo = std::min(plo, phi(g.theta(j)));
            phi_hi = std::max(phi_hi, phi(g.theta(j)));
        }
        fmt::print(ctx.out, "{:>6} {:>22} {:>22} {:>22} {:>22}\n", num(res.radii[n]), num(*lo),
                   num(*hi), num(plo), num(phi_hi));
    }
    for (std::size_t n = 0; n < res.sup_diff.size(); ++n)
        fmt::print(ctx.out, "sup_diff R={} vs R={} on r<={}  {:.3e}\n", num(res.radii[n]),
                   num(res.radii[n + 1]), num(ctx.cfg.compact_radius), res.sup_diff[n]);
    if (!o.csv.empty()) export_csv(radial_slice_table(res.grids.back(), res.fields.back(), 0), o.csv);
    return ok;
}

struct VerifyOpts {
    std::optional<double> tol;
    std::string json;
};

int cmd_verify(Context& ctx, const VerifyOpts& o) {
    ReportTolerances tols;
    if (o.tol) {
        if (!(*o.tol > 0.0)) throw DomainError("verify: --tol must be positive");
        tols.finite_difference = *o.tol;
    }
    ctx.echo("verify",
             {{"tol.exact", num(tols.exact)}, {"tol.distance", num(tols.distance)},
              {"tol.integration", num(tols.integration)},
              {"tol.finite_difference", num(tols.finite_difference)}, {"tol.flux", num(tols.flux)},
              {"json", o.json}},
             false);
    const auto reports = claim_report(tols);
    ctx.out << report_table(reports);
    if (!o.json.empty()) {
        if (o.json == "-") {
            ctx.out << report_json(reports) << '\n';
        } else {
            std::ofstream f(o.json, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + o.json);
            f << report_json(reports) << '\n';
        }
    }
    const bool any_fail = std::any_of(reports.begin(), reports.end(),
                                      [](const ClaimReport& r) { return r.verdict == Verdict::fail; });
    return any_fail ? solver_failure : ok;
}

struct ExportOpts {
    std::string surface = "plane";
    int n = 10;
    int nv = 0;
    double extent = 5.0;
    double c = 3.0;
    std::optional<double> t0;
    double tmax = 6.0;
    double a = 1.0, b = 1.0;
    std::string out;
    std::string format;
    bool residual = false;
};

int cmd_export(Context& ctx, const ExportOpts& o) {
    const int nv = o.nv > 0 ? o.nv : o.n;
    ctx.echo("export",
             {{"surface", o.surface}, {"n", std::to_string(o.n)}, {"nv", std::to_string(nv)},
              {"extent", num(o.extent)}, {"c", num(o.c)}, {"tmax", num(o.tmax)},
              {"a", num(o.a)}, {"b", num(o.b)}, {"out", o.out},
              {"format", o.format.empty() ? "(from extension)" : o.format},
              {"residual", o.residual ? "true" : "false"}},
             false);
    SurfaceSample surf;
    if (o.surface == "plane") {
        surf = plane_sample(o.n, o.extent);
    } else if (o.surface == "cylinder") {
        surf = elliptic_cylinder_sample(o.a, o.b, o.n, nv);
    } else if (o.surface == "catenoid") {
        const CatenoidParams p{o.c, o.t0 ? *o.t0 : t0_min(o.c)};
        validate(p);
        surf = catenoid_sample(p, linspace(p.t0, o.tmax, o.n), nv);
    } else {
        throw DomainError("export: --surface must be plane, cylinder or catenoid");
    }
    MeshFormat fmt_kind;
    if (o.format == "obj") fmt_kind = MeshFormat::obj;
    else if (o.format == "ply") fmt_kind = MeshFormat::ply;
    else if (o.format.empty()) fmt_kind = format_from_path(o.out);
    else throw DomainError("export: --format must be obj or ply");
    const MeshFile mesh =
        o.residual ? build_mesh(surf, residual_channel(surf), "mean_curvature") : build_mesh(surf);
    export_mesh(mesh, o.out, fmt_kind);
    fmt::print(ctx.out, "vertices {}\nfaces {}\n", mesh.vertices.size(), mesh.faces.size());
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Minimal graphs over the totally geodesic plane of Nil3 with the balanced metric",
                 "nilbal"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::string config_path;
    app.add_option("--config", config_path, "Solver configuration file (key = value)")
        ->check(CLI::ExistingFile);

    GeodesicOpts geo;
    auto* g = app.add_subcommand("geodesic", "Geodesic through e: closed form vs RK4");
    g->add_option("--theta", geo.theta, "Launch angle");
    g->add_option("--tmax", geo.tmax, "Final time");
    g->add_option("--steps", geo.steps, "RK4 steps")->check(CLI::PositiveNumber);
    g->add_option("--csv", geo.csv, "Write t,x,y,z (matrix coordinates)");

    CurvatureOpts curv;
    auto* k = app.add_subcommand("curvature", "Curvature of T: two oracles and the stated constant");
    k->add_option("--r", curv.radii, "Radii")->delimiter(',');
    k->add_option("--fd-step", curv.h, "Finite-difference step")->check(CLI::PositiveNumber);

    CatenoidOpts cat;
    auto* c = app.add_subcommand("catenoid", "Rotational catenoid profile");
    c->add_option("--c", cat.c, "Flux parameter")->check(CLI::PositiveNumber);
    c->add_option("--t0", cat.t0, "Neck radius (default: smallest admissible)");
    c->add_option("--tmax", cat.tmax, "Outer radius");
    c->add_option("--nodes", cat.nodes, "Profile nodes");
    c->add_option("--angular", cat.angular, "Angular nodes of the mesh");
    c->add_option("--tol", cat.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    c->add_option("--export-obj", cat.export_obj, "Write OBJ mesh");
    c->add_option("--export-ply", cat.export_ply, "Write PLY mesh");
    c->add_option("--csv", cat.csv, "Write t,h,u_slope");

    BarrierOpts bar;
    auto* b = app.add_subcommand("barrier", "Radial barrier profile");
    b->add_option("--s", bar.s, "Boundary slope f'(0)");
    b->add_option("--alpha", bar.alpha, "Offset alpha")->check(CLI::PositiveNumber);
    b->add_option("--rmax", bar.rmax, "Largest distance");
    b->add_option("--step", bar.step, "Sampling step");
    b->add_option("--csv", bar.csv, "Write r,f,f_prime");

    ExteriorOpts ext;
    auto* e = app.add_subcommand("exterior", "Exterior problem by exhaustion");
    e->add_option("--s", ext.s, "Boundary gradient")->check(CLI::NonNegativeNumber);
    e->add_option("--r0", ext.r0, "Radius of the removed disk")->check(CLI::PositiveNumber);
    e->add_option("--schedule", ext.schedule, "Outer radii, comma separated");
    e->add_option("--csv", ext.csv, "Write r,u along theta = 0 at the last level");
    e->add_option("--export-obj", ext.export_obj, "Write OBJ mesh of the last graph");
    e->add_option("--export-ply", ext.export_ply, "Write PLY mesh of the last graph");
    e->add_flag("--residual", ext.residual, "Attach |mean curvature| per vertex to meshes");

    AsymptoticOpts asy;
    auto* a = app.add_subcommand("asymptotic", "Truncated asymptotic Dirichlet problems");
    a->add_option("--phi", asy.phi, "Boundary data: const, cos or sin")
        ->check(CLI::IsMember({"const", "cos", "sin"}));
    a->add_option("--amplitude", asy.amplitude, "Amplitude");
    a->add_option("--mode", asy.mode, "Angular frequency");
    a->add_option("--offset", asy.offset, "Constant offset");
    a->add_option("--schedule", asy.schedule, "Disk radii, comma separated");
    a->add_option("--csv", asy.csv, "Write r,u along theta = 0 at the largest radius");

    VerifyOpts ver;
    auto* v = app.add_subcommand("verify", "Claim-by-claim report on the geometry of T");
    v->add_option("--tol", ver.tol, "Finite-difference tolerance");
    v->add_option("--json", ver.json, "Write the report as JSON ('-' for stdout)");

    ExportOpts exp;
    auto* x = app.add_subcommand("export", "Export a sampled surface as a mesh");
    x->add_option("--surface", exp.surface, "plane, cylinder or catenoid")
        ->check(CLI::IsMember({"plane", "cylinder", "catenoid"}));
    x->add_option("--n", exp.n, "Nodes in the first parameter");
    x->add_option("--nv", exp.nv, "Nodes in the second parameter (default n)");
    x->add_option("--extent", exp.extent, "Half width of the plane sample");
    x->add_option("--c", exp.c, "Catenoid flux parameter");
    x->add_option("--t0", exp.t0, "Catenoid neck radius");
    x->add_option("--tmax", exp.tmax, "Catenoid outer radius");
    x->add_option("--a", exp.a, "Cylinder semi-axis a");
    x->add_option("--b", exp.b, "Cylinder semi-axis b");
    x->add_option("--out", exp.out, "Output path")->required();
    x->add_option("--format", exp.format, "obj or ply (default: from extension)");
    x->add_flag("--residual", exp.residual, "Attach |mean curvature| per vertex");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& pe) {
        err << "error: " << pe.what() << '\n' << "run with --help for usage\n";
        return usage_error;
    }

    try {
        Context ctx{out, err, log_level_from_env(err), {}};
        if (!config_path.empty()) ctx.cfg = load_solver_config(config_path);
        ctx.out << "# config = " << (config_path.empty() ? "(defaults)" : config_path) << '\n';
        if (ctx.level >= LogLevel::debug) {
            ctx.cfg.on_step = [&ctx](const NewtonStep& st) {
                ctx.log(LogLevel::debug, fmt::format("newton {:3d} residual {:.3e} step {}",
                                                     st.iteration, st.residual, st.damping));
            };
        }
        ctx.cfg.validate();
        ctx.log(LogLevel::info, "running " + app.get_subcommands().front()->get_name());

        if (g->parsed()) return cmd_geodesic(ctx, geo);
        if (k->parsed()) return cmd_curvature(ctx, curv);
        if (c->parsed()) return cmd_catenoid(ctx, cat);
        if (b->parsed()) return cmd_barrier(ctx, bar);
        if (e->parsed()) return cmd_exterior(ctx, ext);
        if (a->parsed()) return cmd_asymptotic(ctx, asy);
        if (v->parsed()) return cmd_verify(ctx, ver);
        if (x->parsed()) return cmd_export(ctx, exp);
        return usage_error;
    } catch (const NoAdmissibleFlux& ex) {
        err << "solver failure: " << ex.what() << '\n';
        return solver_failure;
    } catch (const DomainError& ex) {
        err << "usage error: " << ex.what() << '\n';
        return usage_error;
    } catch (const ConvergenceError& ex) {
        err << "solver failure: " << ex.what() << " (last residual " << ex.last_residual() << ")\n";
        return solver_failure;
    } catch (const std::exception& ex) {
        err << "failure: " << ex.what() << '\n';
        return solver_failure;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace nilbal::cli
