#include <cmath>

#include <doctest.h>

#include "nilbal/error.hpp"
#include "nilbal/geodesic.hpp"
#include "nilbal/group.hpp"
#include "nilbal/metric.hpp"
#include "nilbal/verify.hpp"

using namespace nilbal;
using doctest::Approx;

namespace {

TangentVector frame(const ChartPoint& p, int k) {
    TangentVector v{p, 0.0, 0.0, 0.0};
    (k == 0 ? v.a : k == 1 ? v.b : v.c) = 1.0;
    return v;
}

}  // namespace

TEST_CASE("group product and inverse") {
    CHECK(multiply({1, 0, 0}, {0, 1, 0}) == GroupElement{1, 1, 1});
    CHECK(multiply(identity_element, {3, -2, 7}) == GroupElement{3, -2, 7});
    CHECK(multiply({1, 2, 3}, {-1, -2, -1}) == GroupElement{0, 0, 0});
    CHECK(inverse({1, 2, 3}) == GroupElement{-1, -2, -1});
    CHECK(inverse(identity_element) == identity_element);
    CHECK(inverse({0, 0, 5}) == GroupElement{0, 0, -5});

    SampleStream rng(7);
    for (int k = 0; k < 200; ++k) {
        // Integer entries keep every product exact.
        const GroupElement g{std::round(rng.uniform(-50, 50)), std::round(rng.uniform(-50, 50)),
                             std::round(rng.uniform(-50, 50))};
        CHECK(multiply(g, inverse(g)) == identity_element);
        CHECK(multiply(inverse(g), g) == identity_element);
        const GroupElement h{std::round(rng.uniform(-9, 9)), 1.0, 2.0};
        const GroupElement q{3.0, std::round(rng.uniform(-9, 9)), -1.0};
        CHECK(multiply(multiply(g, h), q) == multiply(g, multiply(h, q)));
    }
}

TEST_CASE("chart and matrix coordinates") {
    CHECK(to_matrix({1, 1, 0}) == GroupElement{1, 1, 0.5});
    CHECK(to_chart({2, 3, 3}) == ChartPoint{2, 3, 0});
    SampleStream rng(11);
    for (int k = 0; k < 100; ++k) {
        const ChartPoint p{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const ChartPoint q = to_chart(to_matrix(p));
        CHECK(q.x == p.x);
        CHECK(q.y == p.y);
        CHECK(std::abs(q.zeta - p.zeta) <= 1e-14 * (1.0 + std::abs(p.x * p.y)));
        const TangentVector v{p, rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const TangentVector w = from_matrix_components(p, to_matrix_components(v));
        CHECK(w.a == Approx(v.a).epsilon(1e-14));
        CHECK(w.b == Approx(v.b).epsilon(1e-14));
        CHECK(std::abs(w.c - v.c) <= 1e-13);
    }
}

TEST_CASE("balanced metric from translations") {
    const ChartPoint y1 = to_chart({0, 1, 0});
    CHECK(balanced_metric_from_translations({0, 1, 0}, frame(y1, 0), frame(y1, 0)) ==
          Approx(2.5).epsilon(1e-14));
    SampleStream rng(3);
    for (int k = 0; k < 20; ++k) {
        const GroupElement g{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
        const ChartPoint p = to_chart(g);
        CHECK(balanced_metric_from_translations(g, frame(p, 2), frame(p, 2)) ==
              Approx(2.0).epsilon(1e-13));
    }
    const GroupElement g11{1, 1, 0.25};
    const ChartPoint p11 = to_chart(g11);
    CHECK(balanced_metric_from_translations(g11, frame(p11, 0), frame(p11, 1)) ==
          Approx(-0.5).epsilon(1e-14));

    const TangentVector elsewhere = frame({0, 0, 0}, 0);
    CHECK_THROWS_AS(balanced_metric_from_translations(g11, frame(p11, 0), elsewhere), DomainError);
    CHECK_THROWS_AS(balanced_metric_from_translations({4, 0, 0}, elsewhere, elsewhere), DomainError);
}

TEST_CASE("closed-form metric") {
    const MetricAtPoint o = metric_closed_form({0, 0, 0});
    CHECK(o.exx == 2.0);
    CHECK(o.eyy == 2.0);
    CHECK(o.ezz == 2.0);
    CHECK(o.exy == 0.0);
    const MetricAtPoint a = metric_closed_form({1, 1, 0});
    CHECK(a.exx == 2.5);
    CHECK(a.eyy == 2.5);
    CHECK(a.exy == -0.5);
    CHECK(a.ezz == 2.0);
    const MetricAtPoint b = metric_closed_form({0, 3, 0});
    CHECK(b.exx == 6.5);
    CHECK(b.eyy == 2.0);
    CHECK(b.exy == 0.0);
    CHECK(a.det() == Approx(2.0 * (2.5 * 2.5 - 0.25)));
    const Vec3 w = a.solve({1.0, 2.0, 3.0});
    CHECK(a.inner(w, {1, 0, 0}) == Approx(1.0));
    CHECK(a.inner(w, {0, 1, 0}) == Approx(2.0));
    CHECK(a.inner(w, {0, 0, 1}) == Approx(3.0));
}

TEST_CASE("closed-form connection") {
    const ChristoffelAtPoint o = christoffel_closed_form({0, 0, 0});
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(o(k, i, j) == 0.0);

    const ChristoffelAtPoint c = christoffel_closed_form({1, 1, 0});
    CHECK(c(0, 0, 0) == Approx(-1.0 / 12));
    CHECK(c(1, 0, 0) == Approx(-5.0 / 12));
    CHECK(c(0, 1, 0) == Approx(0.25));
    CHECK(c(1, 1, 0) == Approx(0.25));

    SampleStream rng(5);
    for (int n = 0; n < 50; ++n) {
        const ChristoffelAtPoint g =
            christoffel_closed_form({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)});
        for (int k = 0; k < 3; ++k) {
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) {
                    CHECK(g(k, i, j) == g(k, j, i));
                    if (k == 2 || i == 2 || j == 2) CHECK(g(k, i, j) == 0.0);
                }
            }
        }
    }
}

TEST_CASE("Koszul finite-difference oracle") {
    const ChristoffelAtPoint o = christoffel_from_metric({0, 0, 0}, 1e-4);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(std::abs(o(k, i, j)) < 1e-7);

    for (const ChartPoint p : {ChartPoint{1, 1, 0}, ChartPoint{2, -1, 0}, ChartPoint{-3, 4, 2}}) {
        const ChristoffelAtPoint fd = christoffel_from_metric(p, 1e-4);
        const ChristoffelAtPoint cf = christoffel_closed_form(p);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) CHECK(std::abs(fd(k, i, j) - cf(k, i, j)) <= 1e-6);
    }
    CHECK_THROWS_AS(christoffel_from_metric({0, 0, 0}, 0.0), DomainError);
}

TEST_CASE("metric compatibility and parallel center") {
    const double h = 1e-4;
    SampleStream rng(13);
    for (int n = 0; n < 30; ++n) {
        const ChartPoint p{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
        const MetricAtPoint m = metric_closed_form(p);
        const ChristoffelAtPoint c = christoffel_closed_form(p);
        for (int w = 0; w < 3; ++w) {
            ChartPoint pp = p, pm = p;
            (w == 0 ? pp.x : w == 1 ? pp.y : pp.zeta) += h;
            (w == 0 ? pm.x : w == 1 ? pm.y : pm.zeta) -= h;
            const MetricAtPoint mp = metric_closed_form(pp), mm = metric_closed_form(pm);
            for (int u = 0; u < 3; ++u) {
                for (int v = 0; v < 3; ++v) {
                    const double lhs = (mp(u, v) - mm(u, v)) / (2 * h);
                    double rhs = 0.0;
                    for (int k = 0; k < 3; ++k) rhs += c(k, w, u) * m(k, v) + c(k, w, v) * m(u, k);
                    CHECK(std::abs(lhs - rhs) <= 1e-6);
                }
            }
            // Killing equation for Z.
            for (int v = 0; v < 3; ++v) {
                double kill = 0.0;
                for (int k = 0; k < 3; ++k) kill += c(k, w, 2) * m(k, v) + c(k, v, 2) * m(k, w);
                CHECK(std::abs(kill) <= 1e-12);
            }
        }
    }
}

TEST_CASE("geodesic equation right-hand side") {
    const TangentVector v0{{0, 0, 0}, 0.3, -1.2, 0.7};
    const TangentVector a0 = geodesic_ode_rhs({0, 0, 0}, v0);
    CHECK(a0.a == 0.0);
    CHECK(a0.b == 0.0);
    CHECK(a0.c == 0.0);

    for (double t : {0.0, 0.5, 2.0, 7.0}) {
        const ChartPoint p{t / 2, t / 2, 0};
        const TangentVector acc = geodesic_ode_rhs(p, {p, 0.5, 0.5, 0.0});
        CHECK(std::abs(acc.a) <= 1e-15);
        CHECK(std::abs(acc.b) <= 1e-15);
        CHECK(acc.c == 0.0);
        // Unit speed along the diagonal geodesic.
        CHECK(std::abs(metric_closed_form(p).norm({0.5, 0.5, 0.0}) - 1.0) <= 1e-12);
    }

    const ChartPoint p{1, 1, 0};
    const TangentVector acc = geodesic_ode_rhs(p, {p, 1.0, 0.0, 0.0});
    CHECK(acc.a == Approx(1.0 / 12));
    CHECK(acc.b == Approx(5.0 / 12));
    CHECK(acc.c == 0.0);
}

TEST_CASE("perturbed connection is detected along the diagonal geodesic") {
    for (int k = 0; k < 3; ++k) {
        for (int i = 0; i < 2; ++i) {
            for (int j = i; j < 2; ++j) {
                double worst = 0.0;
                for (double t : {0.5, 1.0, 3.0}) {
                    const ChartPoint p{t / 2, t / 2, 0};
                    ChristoffelAtPoint c = christoffel_closed_form(p);
                    c.gamma[k][i][j] += 1e-3;
                    if (i != j) c.gamma[k][j][i] += 1e-3;
                    const TangentVector acc = geodesic_ode_rhs(p, {p, 0.5, 0.5, 0.0}, c);
                    worst = std::max({worst, std::abs(acc.a), std::abs(acc.b), std::abs(acc.c)});
                }
                CHECK(worst > 1e-4);
            }
        }
    }
}

TEST_CASE("RK4 geodesics") {
    const ChartPoint e{};
    const auto diag = integrate_geodesic(e, {e, 0.5, 0.5, 0.0}, 1.0, 100);
    CHECK(diag.size() == 101);
    CHECK(std::abs(diag.back().point.x - 0.5) <= 1e-8);
    CHECK(std::abs(diag.back().point.y - 0.5) <= 1e-8);
    CHECK(std::abs(diag.back().point.zeta) <= 1e-8);

    const auto vertical = integrate_geodesic(e, {e, 0.0, 0.0, 1.0 / std::sqrt(2.0)}, 1.0, 100);
    CHECK(std::abs(vertical.back().point.zeta - 1.0 / std::sqrt(2.0)) <= 1e-12);
    CHECK(vertical.back().point.x == 0.0);

    const auto tangent = integrate_geodesic(e, {e, 0.9, -0.2, 0.0}, 10.0, 1000);
    for (const auto& st : tangent) CHECK(std::abs(st.point.zeta) <= 1e-8);

    // A generic geodesic keeps its speed.
    const ChartPoint p{0.3, -0.4, 0.1};
    const TangentVector v{p, 0.2, 0.5, -0.3};
    const double speed0 = metric_closed_form(p).norm(v.components());
    const auto path = integrate_geodesic(p, v, 3.0, 3000);
    const auto& last = path.back();
    CHECK(metric_closed_form(last.point).norm(last.velocity.components()) ==
          Approx(speed0).epsilon(1e-9));

    CHECK_THROWS_AS(integrate_geodesic(e, {e, 1, 0, 0}, 1.0, 0), DomainError);
    CHECK_THROWS_AS(integrate_geodesic(e, {p, 1, 0, 0}, 1.0, 10), DomainError);
}
