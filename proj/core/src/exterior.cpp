#include <algorithm>
#include <cmath>
#include <optional>

#include "nilbal/error.hpp"
#include "nilbal/mse.hpp"
#include "nilbal/radial.hpp"

namespace nilbal {

std::vector<double> ExteriorSolution::t_trace() const {
    std::vector<double> out;
    out.reserve(levels.size());
    for (const auto& l : levels) out.push_back(l.t);
    return out;
}

namespace {

// Dirichlet solves at one exhaustion level. Each solve starts from the
// rotationally symmetric solution with the same boundary values when one
// exists, otherwise from the last solution shifted along the barrier shape.
// Above the largest height a minimal graph over the annulus can reach there
// is nothing to converge to; such outer values report an infinite gradient.
class LevelSolver {
public:
    LevelSolver(const AnnulusGrid& grid, const SolverConfig& cfg, ScalarField shape)
        : grid_(grid), cfg_(cfg), shape_(std::move(shape)) {}

    double gradient_at(double t) {
        ScalarField guess = shape_;
        bool radial_guess = false;
        try {
            const auto nodes = grid_.radii();
            const RadialSolution rad =
                radial_mse_solve(grid_.r_in(), grid_.r_out(), 0.0, t, 1e-12, nodes);
            for (int i = 0; i < grid_.rows(); ++i)
                for (int j = 0; j < grid_.cols(); ++j)
                    guess(i, j) = rad.profile.value[static_cast<std::size_t>(i)];
            radial_guess = true;
        } catch (const NoAdmissibleFlux&) {
        }
        if (!radial_guess) {
            if (last_) {
                guess = last_->u;
                for (int i = 0; i < grid_.rows(); ++i)
                    for (int j = 0; j < grid_.cols(); ++j)
                        guess(i, j) += (t - last_->t) * shape_(i, j);
            } else {
                for (double& v : guess.values()) v *= t;
            }
        }
        ++solves_;
        try {
            const DirichletResult sol = dirichlet_solve(grid_, BoundaryData::constant(0.0),
                                                        BoundaryData::constant(t), cfg_, &guess);
            last_ = Entry{t, sol.u, boundary_gradient_sup(sol.u, grid_)};
        } catch (const ConvergenceError&) {
            return INFINITY;
        }
        return last_->gradient;
    }

    const ScalarField& last_field() const { return last_->u; }
    double last_t() const { return last_->t; }
    int solves() const { return solves_; }

private:
    struct Entry {
        double t;
        ScalarField u;
        double gradient;
    };

    const AnnulusGrid& grid_;
    const SolverConfig& cfg_;
    ScalarField shape_;  // barrier shape normalized to 1 on the outer rim
    std::optional<Entry> last_;
    int solves_ = 0;
};

}  // namespace

ExteriorSolution exterior_solve(double s, double r0, const SolverConfig& cfg) {
    cfg.validate();
    if (s < 0.0) throw DomainError("exterior_solve: s must be nonnegative");
    if (!(r0 > 0.0)) throw DomainError("exterior_solve: r0 must be positive");
    if (!(cfg.schedule.front() > r0))
        throw DomainError("exterior_solve: schedule must start beyond r0");

    ExteriorSolution out;
    out.s = s;
    out.r0 = r0;

    // The barrier shape is only used as a search direction, so a unit slope
    // stands in when s = 0.
    const BarrierParams barrier = BarrierParams::normalized(s, r0);
    const BarrierParams shape_params = BarrierParams::normalized(1.0, r0);

    for (double m : cfg.schedule) {
        AnnulusGrid grid =
            AnnulusGrid::logarithmic(r0, m, cfg.radial_intervals, cfg.angular_nodes);
        const double cap = barrier_f(barrier, m - r0).f;

        ScalarField shape(grid);
        {
            std::vector<double> dist;
            for (double r : grid.radii()) dist.push_back(r - r0);
            const RadialProfile prof = barrier_profile(shape_params, dist);
            const double top = prof.value.back();
            for (int i = 0; i < grid.rows(); ++i)
                for (int j = 0; j < grid.cols(); ++j)
                    shape(i, j) = prof.value[static_cast<std::size_t>(i)] / top;
        }

        LevelSolver solver(grid, cfg, shape);
        double t = 0.0;
        double gradient = 0.0;
        if (s > 0.0) {
            if (solver.gradient_at(0.0) > s)
                throw BracketError("exterior_solve: boundary gradient at t = 0 already exceeds s");
            // The search lives in [0, cap + margin], further cut at the
            // largest height a radial minimal graph over the annulus reaches,
            // above which no solution exists. The radial solution with slope
            // s at r0 seeds a narrow bracket that is widened until it holds.
            const double g_in = warp(r0).g;
            const double reach = flux_height_increment(r0, m, g_in, 1e-12);
            const double top = std::min(cap + std::max(1e-6, 1e-3 * cap), reach);
            const double seed = std::min(
                flux_height_increment(r0, m, flux_for_slope(r0, s), 1e-12), 0.999 * top);
            double width = 1e-3 * std::max(seed, 1e-3);
            double lo = std::max(0.0, seed - width);
            double hi = std::min(top, seed + width);
            double g_lo = lo > 0.0 ? solver.gradient_at(lo) - s : -s;
            while (g_lo > 0.0) {
                hi = lo;
                width *= 4.0;
                lo = std::max(0.0, lo - width);
                g_lo = lo > 0.0 ? solver.gradient_at(lo) - s : -s;
            }
            double g_hi = solver.gradient_at(hi) - s;
            while (g_hi < 0.0) {
                if (hi >= top)
                    throw BracketError(
                        "exterior_solve: boundary gradient below s at the top of the search");
                lo = hi;
                g_lo = g_hi;
                width *= 4.0;
                hi = std::min(top, hi + width);
                g_hi = solver.gradient_at(hi) - s;
            }
            // Bracketed search on the increasing map t -> gradient: false
            // position with Illinois weighting, bisection when it stalls or
            // the upper end has no solution.
            int side = 0;
            while (hi - lo > cfg.bisection_tol) {
                double mid = 0.5 * (lo + hi);
                if (std::isfinite(g_hi)) {
                    const double fp = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
                    if (fp > lo && fp < hi) mid = fp;
                }
                const double gm = solver.gradient_at(mid) - s;
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (gm < 0.0) {
                    lo = mid;
                    g_lo = gm;
                    if (side == -1) g_hi *= 0.5;
                    side = -1;
                } else {
                    hi = mid;
                    g_hi = gm;
                    if (side == 1) g_lo *= 0.5;
                    side = 1;
                }
            }
            t = 0.5 * (lo + hi);
            gradient = solver.gradient_at(t);
            if (!std::isfinite(gradient))
                throw ConvergenceError("exterior_solve: no discrete solution at t_m", INFINITY);
        } else {
            gradient = solver.gradient_at(0.0);
        }

        out.levels.push_back(ExteriorLevel{m, t, cap, gradient, solver.solves(), std::move(grid),
                                           solver.last_field()});
    }

    const double limit = std::min(cfg.schedule.front(), std::max(r0, cfg.compact_radius));
    for (std::size_t k = 1; k < out.levels.size(); ++k) {
        const ExteriorLevel& a = out.levels[k - 1];
        const ExteriorLevel& b = out.levels[k];
        double sup = 0.0;
        for (int i = 0; i < a.grid.rows() && a.grid.r(i) <= limit; ++i)
            for (int j = 0; j < a.grid.cols(); ++j)
                sup = std::max(sup, std::abs(a.u(i, j) - interpolate_radial(b.grid, b.u, j, a.grid.r(i))));
        out.cauchy.push_back(sup);
    }
    return out;
}

FoliationReport foliation_check(const std::vector<ExteriorSolution>& sols) {
    FoliationReport rep;
    rep.all_ordered = true;
    for (std::size_t k = 1; k < sols.size(); ++k) {
        const ExteriorSolution& lo = sols[k - 1];
        const ExteriorSolution& hi = sols[k];
        if (!(hi.s > lo.s)) throw DomainError("foliation_check: s must increase strictly");
        if (lo.levels.size() != hi.levels.size() || lo.r0 != hi.r0)
            throw DomainError("foliation_check: solutions do not share a schedule");
        const ExteriorLevel& a = lo.last();
        const ExteriorLevel& b = hi.last();
        if (a.u.rows() != b.u.rows() || a.u.cols() != b.u.cols() || a.m != b.m)
            throw DomainError("foliation_check: solutions do not share a grid");

        FoliationPair pair;
        pair.s_low = lo.s;
        pair.s_high = hi.s;
        pair.min_interior_gap = INFINITY;
        for (int i = 1; i + 1 < a.u.rows(); ++i)
            for (int j = 0; j < a.u.cols(); ++j)
                pair.min_interior_gap = std::min(pair.min_interior_gap, b.u(i, j) - a.u(i, j));
        pair.strictly_ordered = pair.min_interior_gap > 0.0;

        pair.min_rim_separation = INFINITY;
        pair.rim_nonincreasing = true;
        for (std::size_t l = 0; l < lo.levels.size(); ++l) {
            const double sep = hi.levels[l].t - lo.levels[l].t;
            if (!pair.rim_separation.empty() && sep > pair.rim_separation.back())
                pair.rim_nonincreasing = false;
            pair.rim_separation.push_back(sep);
            pair.min_rim_separation = std::min(pair.min_rim_separation, sep);
        }
        rep.all_ordered = rep.all_ordered && pair.strictly_ordered;
        rep.pairs.push_back(std::move(pair));
    }
    return rep;
}

}  // namespace nilbal
