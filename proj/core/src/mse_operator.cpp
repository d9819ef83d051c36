#include <cmath>

#include "mse_discrete.hpp"
#include "nilbal/error.hpp"
#include "nilbal/mse.hpp"

namespace nilbal {

using detail::angular_face_flux;
using detail::local_residual;
using detail::radial_face_flux;

namespace {

double origin_residual(const ScalarField& u, const AnnulusGrid& grid) {
    const int M = grid.cols();
    double total = 0.0;
    for (int j = 0; j < M; ++j) {
        const std::array<double, 3> lo{u(0, 0), u(0, 0), u(0, 0)};
        const std::array<double, 3> hi{u.wrapped(1, j - 1), u(1, j), u.wrapped(1, j + 1)};
        total += radial_face_flux(grid, 0, lo, hi);
    }
    return total * grid.dtheta() / detail::origin_cell_area(grid);
}

}  // namespace

ScalarField mse_operator(const ScalarField& u, const AnnulusGrid& grid) {
    if (u.rows() != grid.rows() || u.cols() != grid.cols())
        throw DomainError("mse_operator: field does not match the grid");
    ScalarField res(grid);
    const int M = grid.cols();
    for (int i = 1; i + 1 < grid.rows(); ++i) {
        for (int j = 0; j < M; ++j) {
            std::array<std::array<double, 3>, 3> P;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) P[a][b] = u.wrapped(i - 1 + a, j - 1 + b);
            res(i, j) = local_residual(grid, i, P);
        }
    }
    if (grid.has_origin()) {
        const double r0 = origin_residual(u, grid);
        for (int j = 0; j < M; ++j) res(0, j) = r0;
    }
    return res;
}

std::vector<double> cartesian_mse_residual(const CartesianGrid& cg, const std::vector<double>& u) {
    if (cg.nx < 3 || cg.ny < 3) throw DomainError("cartesian_mse_residual: grid too small");
    if (u.size() != static_cast<std::size_t>(cg.nx) * static_cast<std::size_t>(cg.ny))
        throw DomainError("cartesian_mse_residual: field size mismatch");
    const double h = cg.h;
    auto at = [&](int i, int j) {
        return u[static_cast<std::size_t>(j) * static_cast<std::size_t>(cg.nx) +
                 static_cast<std::size_t>(i)];
    };

    // sqrt(det) g^{ab} grad_b u / W on a face at (x, y) with gradient (ux, uy).
    struct Coeffs {
        double sdet, gxx, gxy, gyy;
    };
    auto coeffs = [](double x, double y) {
        const double E = 2.0 + 0.5 * y * y;
        const double F = -0.5 * x * y;
        const double G = 2.0 + 0.5 * x * x;
        const double det = E * G - F * F;
        return Coeffs{std::sqrt(det), G / det, -F / det, E / det};
    };
    auto flux = [&](double x, double y, double ux, double uy, int component) {
        const Coeffs c = coeffs(x, y);
        const double vx = c.gxx * ux + c.gxy * uy;
        const double vy = c.gxy * ux + c.gyy * uy;
        const double W = std::sqrt(1.0 + ux * vx + uy * vy);
        return c.sdet * (component == 0 ? vx : vy) / W;
    };

    std::vector<double> res(u.size(), 0.0);
    for (int j = 1; j + 1 < cg.ny; ++j) {
        for (int i = 1; i + 1 < cg.nx; ++i) {
            const double x = cg.x0 + i * h;
            const double y = cg.y0 + j * h;
            auto face_x = [&](int i0) {  // between i0 and i0+1
                const double ux = (at(i0 + 1, j) - at(i0, j)) / h;
                const double uy = (at(i0, j + 1) - at(i0, j - 1) + at(i0 + 1, j + 1) -
                                   at(i0 + 1, j - 1)) / (4.0 * h);
                return flux(cg.x0 + (i0 + 0.5) * h, y, ux, uy, 0);
            };
            auto face_y = [&](int j0) {
                const double uy = (at(i, j0 + 1) - at(i, j0)) / h;
                const double ux = (at(i + 1, j0) - at(i - 1, j0) + at(i + 1, j0 + 1) -
                                   at(i - 1, j0 + 1)) / (4.0 * h);
                return flux(x, cg.y0 + (j0 + 0.5) * h, ux, uy, 1);
            };
            const double div = (face_x(i) - face_x(i - 1)) / h + (face_y(j) - face_y(j - 1)) / h;
            res[static_cast<std::size_t>(j) * static_cast<std::size_t>(cg.nx) +
                static_cast<std::size_t>(i)] = div / coeffs(x, y).sdet;
        }
    }
    return res;
}

}  // namespace nilbal
