#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "nilbal/error.hpp"
#include "nilbal/metric.hpp"
#include "nilbal/radial.hpp"
#include "nilbal/verify.hpp"

using namespace nilbal;

namespace {

double sup_residual(const SurfaceSample& s, std::size_t stride = 1) {
    double worst = 0.0;
    for (std::size_t i = 0; i < s.u_nodes.size(); i += stride)
        for (std::size_t j = 0; j < s.v_nodes.size(); j += stride)
            worst = std::max(worst, std::abs(mean_curvature_residual(s, s.u_nodes[i], s.v_nodes[j])));
    return worst;
}

}  // namespace

TEST_CASE("the plane T is minimal") {
    const SurfaceSample plane = plane_sample(11, 3.0);
    CHECK(plane.u_nodes.size() == 11);
    CHECK(sup_residual(plane) <= 1e-9);
    const ChartPoint p = plane.param(1.0, -2.0);
    CHECK(p.zeta == 0.0);
}

TEST_CASE("vertical cylinders are not minimal") {
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{1.0, 2.0}, std::pair{0.5, 3.0}}) {
        const SurfaceSample cyl = elliptic_cylinder_sample(a, b, 5, 16);
        CHECK(cyl.periodic_v);
        double least = INFINITY;
        for (double u : cyl.u_nodes)
            for (double v : cyl.v_nodes)
                least = std::min(least, std::abs(mean_curvature_residual(cyl, u, v)));
        CHECK(least > 1e-2);
    }
}

TEST_CASE("catenoid is minimal with the chart reading of the profile") {
    std::vector<double> t;
    for (int k = 0; k < 5; ++k) t.push_back(1.2 + k * 1.2);
    const SurfaceSample cat = catenoid_sample({3.0, 1.0}, t, 4);
    CHECK(cat.u_nodes.size() * cat.v_nodes.size() == 20);
    CHECK(sup_residual(cat) <= 1e-5);

    const SurfaceSample wrong = catenoid_sample_matrix_reading({3.0, 1.0}, t, 4);
    CHECK(sup_residual(wrong) > 1e-3);
}

TEST_CASE("degenerate parametrizations are rejected") {
    SurfaceSample s;
    s.param = [](double u, double) { return ChartPoint{u, 0.0, 0.0}; };
    s.u_nodes = {0.0};
    s.v_nodes = {0.0};
    CHECK_THROWS_AS(mean_curvature_residual(s, 0.0, 0.0), DomainError);
}

TEST_CASE("graphs over polar grids") {
    const AnnulusGrid grid = AnnulusGrid::uniform(1.0, 3.0, 32, 32);
    const SurfaceSample flat = graph_embed(ScalarField(grid, 0.0), grid);
    const ChartPoint p = flat.param(2.0, std::numbers::pi / 3);
    CHECK(p.x == doctest::Approx(std::cos(std::numbers::pi / 3) * std::sqrt(2.0)));
    CHECK(p.zeta == 0.0);
    CHECK(sup_residual(flat, 4) <= 1e-9);

    const SurfaceSample lifted = graph_embed(ScalarField(grid, 3.0), grid);
    CHECK(lifted.param(1.7, 0.4).zeta == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(sup_residual(lifted, 4) <= 1e-9);

    // Catenoid profile as a graph: residual at discretization level.
    const AnnulusGrid fine = AnnulusGrid::uniform(1.5, 5.0, 128, 32);
    const RadialProfile prof = catenoid_profile({3.0, 1.0}, fine.radii(), 1e-13);
    const ScalarField u = ScalarField::sample(fine, [&](double r, double) { return prof.interpolate(r); });
    const SurfaceSample cat = graph_embed(u, fine);
    double worst = 0.0;
    for (int i = 8; i < fine.rows() - 8; i += 8)
        for (int j = 0; j < fine.cols(); j += 8)
            worst = std::max(worst, std::abs(mean_curvature_residual(cat, fine.r(i), fine.theta(j))));
    CHECK(worst <= 1e-4);
    CHECK_THROWS_AS(graph_embed(ScalarField(4, 4), grid), DomainError);
}

TEST_CASE("diagonal geodesic has unit speed") {
    for (int k = -50; k <= 50; ++k) {
        const double t = 0.1 * k;
        const MetricAtPoint g = metric_closed_form({t / 2, t / 2, 0.0});
        CHECK(std::abs(g.norm({0.5, 0.5, 0.0}) - 1.0) <= 1e-12);
    }
}

TEST_CASE("verification report") {
    const std::vector<ClaimReport> reps = claim_report();
    REQUIRE(reps.size() == 6);
    std::vector<std::string> ids;
    for (const ClaimReport& r : reps) ids.push_back(r.id);
    CHECK(std::is_sorted(ids.begin(), ids.begin() + 5));
    for (std::size_t k = 0; k < reps.size(); ++k) {
        CAPTURE(reps[k].id);
        CHECK(!reps[k].values.empty());
        CHECK(reps[k].tolerance > 0.0);
        if (k == 4)
            CHECK(reps[k].verdict == Verdict::discrepancy);
        else
            CHECK(reps[k].verdict == Verdict::pass);
    }

    const std::string table = report_table(reps);
    CHECK(table.find("discrepancy") != std::string::npos);
    CHECK(table.find(reps[0].id) != std::string::npos);

    const std::string text = report_json(reps);
    CHECK(text == report_json(claim_report()));
    const auto doc = nlohmann::json::parse(text);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 6);
    for (const auto& item : doc) {
        for (const char* key : {"id", "locus", "verdict", "values", "tolerance"}) CHECK(item.contains(key));
    }
    CHECK(doc[4]["verdict"] == "discrepancy");

    // Tolerances below what the finite differences can deliver must fail.
    ReportTolerances strict;
    strict.finite_difference = 1e-14;
    const std::vector<ClaimReport> tight = claim_report(strict);
    CHECK(std::any_of(tight.begin(), tight.end(),
                      [](const ClaimReport& r) { return r.verdict == Verdict::fail; }));
}

TEST_CASE("sample stream") {
    SampleStream a(7), b(7), c(8);
    double diff = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double x = a.uniform(-5.0, 5.0);
        CHECK(x >= -5.0);
        CHECK(x < 5.0);
        CHECK(x == b.uniform(-5.0, 5.0));
        diff = std::max(diff, std::abs(x - c.uniform(-5.0, 5.0)));
    }
    CHECK(diff > 1.0);
}

TEST_CASE("verdict names") {
    CHECK(to_string(Verdict::pass) == "pass");
    CHECK(to_string(Verdict::fail) == "fail");
    CHECK(to_string(Verdict::discrepancy) == "discrepancy");
}
