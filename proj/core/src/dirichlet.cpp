#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "mse_discrete.hpp"
#include "nilbal/error.hpp"
#include "nilbal/mse.hpp"

namespace nilbal {

using detail::Dual;

namespace {

// Unknown numbering: rows 1..N-1 row-major, preceded by the origin value on
// disk grids. Dirichlet nodes map to -1.
class Layout {
public:
    explicit Layout(const AnnulusGrid& grid)
        : origin_(grid.has_origin()), rows_(grid.rows()), cols_(grid.cols()) {}

    int unknowns() const { return offset() + (rows_ - 2) * cols_; }

    int index(int i, int j) const {
        if (i == rows_ - 1) return -1;
        if (i == 0) return origin_ ? 0 : -1;
        const int jj = ((j % cols_) + cols_) % cols_;
        return offset() + (i - 1) * cols_ + jj;
    }

private:
    int offset() const { return origin_ ? 1 : 0; }

    bool origin_;
    int rows_;
    int cols_;
};

struct Linearization {
    Eigen::SparseMatrix<double> jacobian;
    Eigen::VectorXd residual;
};

Linearization linearize(const ScalarField& u, const AnnulusGrid& grid, const Layout& layout) {
    const int n = layout.unknowns();
    const int M = grid.cols();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(n) * 9 + 4 * static_cast<std::size_t>(M));
    Eigen::VectorXd res = Eigen::VectorXd::Zero(n);

    using D9 = Dual<9>;
    for (int i = 1; i + 1 < grid.rows(); ++i) {
        for (int j = 0; j < M; ++j) {
            std::array<std::array<D9, 3>, 3> P;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    P[a][b] = D9::variable(u.wrapped(i - 1 + a, j - 1 + b), a * 3 + b);
            const D9 r = detail::local_residual(grid, i, P);
            const int row = layout.index(i, j);
            res[row] = r.v;
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    const int col = layout.index(i - 1 + a, j - 1 + b);
                    if (col >= 0) triplets.emplace_back(row, col, r.d[a * 3 + b]);
                }
            }
        }
    }

    if (grid.has_origin()) {
        using D4 = Dual<4>;
        const double scale = grid.dtheta() / detail::origin_cell_area(grid);
        const D4 uo = D4::variable(u(0, 0), 0);
        for (int j = 0; j < M; ++j) {
            const std::array<D4, 3> lo{uo, uo, uo};
            const std::array<D4, 3> hi{D4::variable(u.wrapped(1, j - 1), 1),
                                       D4::variable(u(1, j), 2),
                                       D4::variable(u.wrapped(1, j + 1), 3)};
            const D4 f = detail::radial_face_flux(grid, 0, lo, hi);
            res[0] += scale * f.v;
            triplets.emplace_back(0, 0, scale * f.d[0]);
            for (int b = 0; b < 3; ++b)
                triplets.emplace_back(0, layout.index(1, j - 1 + b), scale * f.d[1 + b]);
        }
    }

    Linearization lin;
    lin.jacobian.resize(n, n);
    lin.jacobian.setFromTriplets(triplets.begin(), triplets.end());
    lin.jacobian.makeCompressed();
    lin.residual = std::move(res);
    return lin;
}

double residual_norm(const ScalarField& u, const AnnulusGrid& grid) {
    const ScalarField r = mse_operator(u, grid);
    double m = 0.0;
    for (int i = grid.has_origin() ? 0 : 1; i + 1 < grid.rows(); ++i)
        for (int j = 0; j < grid.cols(); ++j) m = std::max(m, std::abs(r(i, j)));
    return m;
}

void apply_step(ScalarField& u, const AnnulusGrid& grid, const Layout& layout,
                const Eigen::VectorXd& delta, double step) {
    for (int i = 0; i + 1 < grid.rows(); ++i) {
        for (int j = 0; j < grid.cols(); ++j) {
            const int k = layout.index(i, j);
            if (k >= 0) u(i, j) += step * delta[k];
        }
    }
}

ScalarField default_guess(const AnnulusGrid& grid, const BoundaryData& inner,
                          const BoundaryData& outer) {
    ScalarField u(grid);
    const int N = grid.rows() - 1;
    if (grid.has_origin()) {
        double mean = 0.0;
        for (int j = 0; j < grid.cols(); ++j) mean += outer(grid.theta(j));
        mean /= grid.cols();
        for (int i = 0; i <= N; ++i) {
            const double w = grid.r(i) / grid.r_out();
            for (int j = 0; j < grid.cols(); ++j)
                u(i, j) = mean + w * (outer(grid.theta(j)) - mean);
        }
        return u;
    }
    for (int j = 0; j < grid.cols(); ++j) {
        const double a = inner(grid.theta(j));
        const double b = outer(grid.theta(j));
        for (int i = 0; i <= N; ++i) {
            const double w = (grid.r(i) - grid.r_in()) / (grid.r_out() - grid.r_in());
            u(i, j) = a + w * (b - a);
        }
    }
    return u;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(newton_tol > 0.0)) throw DomainError("SolverConfig: newton_tol must be positive");
    if (max_newton < 1) throw DomainError("SolverConfig: max_newton must be >= 1");
    if (!(damping > 0.0 && damping <= 1.0))
        throw DomainError("SolverConfig: damping must lie in (0, 1]");
    if (radial_intervals < 4) throw DomainError("SolverConfig: radial_intervals must be >= 4");
    if (angular_nodes < 8) throw DomainError("SolverConfig: angular_nodes must be >= 8");
    if (!(bisection_tol > 0.0)) throw DomainError("SolverConfig: bisection_tol must be positive");
    if (!(disk_spacing > 0.0)) throw DomainError("SolverConfig: disk_spacing must be positive");
    if (!(compact_radius > 0.0)) throw DomainError("SolverConfig: compact_radius must be positive");
    if (schedule.empty()) throw DomainError("SolverConfig: schedule must not be empty");
    for (std::size_t k = 1; k < schedule.size(); ++k)
        if (!(schedule[k] > schedule[k - 1]))
            throw DomainError("SolverConfig: schedule must be strictly increasing");
}

DirichletResult dirichlet_solve(const AnnulusGrid& grid, const BoundaryData& inner,
                                const BoundaryData& outer, const SolverConfig& cfg,
                                const ScalarField* initial_guess) {
    cfg.validate();
    ScalarField u;
    if (initial_guess) {
        if (initial_guess->rows() != grid.rows() || initial_guess->cols() != grid.cols())
            throw DomainError("dirichlet_solve: initial guess does not match the grid");
        u = *initial_guess;
    } else {
        u = default_guess(grid, inner, outer);
    }

    const int N = grid.rows() - 1;
    for (int j = 0; j < grid.cols(); ++j) {
        const double th = grid.theta(j);
        const double b = outer(th);
        if (!std::isfinite(b)) throw DomainError("dirichlet_solve: outer data not finite");
        u(N, j) = b;
        if (!grid.has_origin()) {
            const double a = inner(th);
            if (!std::isfinite(a)) throw DomainError("dirichlet_solve: inner data not finite");
            u(0, j) = a;
        }
    }
    if (grid.has_origin())
        for (int j = 1; j < grid.cols(); ++j) u(0, j) = u(0, 0);

    const Layout layout(grid);
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    bool analyzed = false;

    for (int k = 0;; ++k) {
        Linearization lin = linearize(u, grid, layout);
        const double rn = lin.residual.lpNorm<Eigen::Infinity>();
        if (rn <= cfg.newton_tol) return {std::move(u), k, rn};
        if (!std::isfinite(rn))
            throw ConvergenceError("dirichlet_solve: residual is not finite", rn);
        if (k >= cfg.max_newton)
            throw ConvergenceError("dirichlet_solve: Newton did not converge in " +
                                       std::to_string(cfg.max_newton) + " steps",
                                   rn);

        if (!analyzed) {
            lu.analyzePattern(lin.jacobian);
            analyzed = true;
        }
        lu.factorize(lin.jacobian);
        if (lu.info() != Eigen::Success)
            throw ConvergenceError("dirichlet_solve: singular linearization", rn);
        const Eigen::VectorXd delta = lu.solve(-lin.residual);
        if (lu.info() != Eigen::Success)
            throw ConvergenceError("dirichlet_solve: linear solve failed", rn);

        double step = cfg.damping;
        ScalarField trial = u;
        for (;;) {
            trial = u;
            apply_step(trial, grid, layout, delta, step);
            if (grid.has_origin())
                for (int j = 1; j < grid.cols(); ++j) trial(0, j) = trial(0, 0);
            const double rt = residual_norm(trial, grid);
            if ((std::isfinite(rt) && rt <= (1.0 - 1e-4 * step) * rn) || step < 1.0 / 1024.0)
                break;
            step *= 0.5;
        }
        u = std::move(trial);
        if (cfg.on_step) cfg.on_step(NewtonStep{k, rn, step});
    }
}

double boundary_gradient_sup(const ScalarField& u, const AnnulusGrid& grid) {
    if (grid.has_origin()) throw DomainError("boundary_gradient_sup: disk grid has no inner boundary");
    const double h1 = grid.r(1) - grid.r(0);
    const double h2 = grid.r(2) - grid.r(1);
    const double w0 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
    const double w1 = (h1 + h2) / (h1 * h2);
    const double w2 = -h1 / (h2 * (h1 + h2));
    const double g = grid.g(0);
    double sup = 0.0;
    for (int j = 0; j < grid.cols(); ++j) {
        const double ur = w0 * u(0, j) + w1 * u(1, j) + w2 * u(2, j);
        const double ut = (u.wrapped(0, j + 1) - u.wrapped(0, j - 1)) / (2.0 * grid.dtheta());
        sup = std::max(sup, std::sqrt(ur * ur + ut * ut / (g * g)));
    }
    return sup;
}

AsymptoticResult asymptotic_solve(const BoundaryData& phi, const SolverConfig& cfg) {
    cfg.validate();
    AsymptoticResult out;
    const BoundaryData unused = BoundaryData::constant(0.0);
    for (double R : cfg.schedule) {
        const int n = std::max(4, static_cast<int>(std::lround(R / cfg.disk_spacing)));
        AnnulusGrid grid = AnnulusGrid::uniform(0.0, R, n, cfg.angular_nodes);
        DirichletResult sol = dirichlet_solve(grid, unused, phi, cfg);
        out.radii.push_back(R);
        out.grids.push_back(std::move(grid));
        out.fields.push_back(std::move(sol.u));
    }

    for (std::size_t k = 1; k < out.fields.size(); ++k) {
        const AnnulusGrid& ga = out.grids[k - 1];
        const AnnulusGrid& gb = out.grids[k];
        const double limit = std::min(cfg.compact_radius, ga.r_out());
        double sup = 0.0;
        for (int i = 0; i < ga.rows() && ga.r(i) <= limit; ++i) {
            for (int j = 0; j < ga.cols(); ++j) {
                const double vb = interpolate_radial(gb, out.fields[k], j, ga.r(i));
                sup = std::max(sup, std::abs(out.fields[k - 1](i, j) - vb));
            }
        }
        out.sup_diff.push_back(sup);
    }
    return out;
}

}  // namespace nilbal
