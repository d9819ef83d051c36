#include "nilbal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nilbal/error.hpp"
#include "nilbal/model_surface.hpp"

namespace nilbal {

AnnulusGrid::AnnulusGrid(std::vector<double> r_nodes, int angular_nodes)
    : r_(std::move(r_nodes)), m_(angular_nodes) {
    if (r_.size() < 5) throw DomainError("AnnulusGrid: need at least 4 radial intervals");
    if (m_ < 8) throw DomainError("AnnulusGrid: need at least 8 angular nodes");
    if (r_.front() < 0.0) throw DomainError("AnnulusGrid: radii must be nonnegative");
    for (std::size_t i = 1; i < r_.size(); ++i)
        if (!(r_[i] > r_[i - 1])) throw DomainError("AnnulusGrid: radii must increase strictly");
    g_.reserve(r_.size());
    g_half_.reserve(r_.size() - 1);
    for (std::size_t i = 0; i < r_.size(); ++i) {
        g_.push_back(warp(r_[i]).g);
        if (i + 1 < r_.size()) g_half_.push_back(warp(0.5 * (r_[i] + r_[i + 1])).g);
    }
}

AnnulusGrid AnnulusGrid::uniform(double r_in, double r_out, int radial_intervals,
                                 int angular_nodes) {
    if (radial_intervals < 4) throw DomainError("AnnulusGrid: need at least 4 radial intervals");
    std::vector<double> r(static_cast<std::size_t>(radial_intervals) + 1);
    for (int i = 0; i <= radial_intervals; ++i)
        r[static_cast<std::size_t>(i)] = r_in + (r_out - r_in) * i / radial_intervals;
    r.back() = r_out;
    return {std::move(r), angular_nodes};
}

AnnulusGrid AnnulusGrid::logarithmic(double r_in, double r_out, int radial_intervals,
                                     int angular_nodes) {
    if (!(r_in > 0.0)) throw DomainError("AnnulusGrid::logarithmic: r_in must be positive");
    if (radial_intervals < 4) throw DomainError("AnnulusGrid: need at least 4 radial intervals");
    std::vector<double> r(static_cast<std::size_t>(radial_intervals) + 1);
    const double ratio = std::log(r_out / r_in);
    for (int i = 0; i <= radial_intervals; ++i)
        r[static_cast<std::size_t>(i)] = r_in * std::exp(ratio * i / radial_intervals);
    r.front() = r_in;
    r.back() = r_out;
    return {std::move(r), angular_nodes};
}

double AnnulusGrid::theta(int j) const noexcept { return dtheta() * j; }

double AnnulusGrid::dtheta() const noexcept { return 2.0 * std::numbers::pi / m_; }

ScalarField::ScalarField(int rows, int cols, double fill)
    : rows_(rows), cols_(cols),
      data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

ScalarField ScalarField::sample(const AnnulusGrid& grid,
                                const std::function<double(double, double)>& fn) {
    ScalarField out(grid);
    for (int i = 0; i < grid.rows(); ++i)
        for (int j = 0; j < grid.cols(); ++j) out(i, j) = fn(grid.r(i), grid.theta(j));
    if (grid.has_origin()) {
        const double v = fn(0.0, 0.0);
        for (int j = 0; j < grid.cols(); ++j) out(0, j) = v;
    }
    return out;
}

double ScalarField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double interpolate_radial(const AnnulusGrid& grid, const ScalarField& u, int j, double r) {
    const auto radii = grid.radii();
    if (r < radii.front() || r > radii.back())
        throw DomainError("interpolate_radial: radius outside the grid");
    auto it = std::upper_bound(radii.begin(), radii.end(), r);
    int k = static_cast<int>(it - radii.begin()) - 1;
    int start = std::clamp(k - 1, 0, grid.rows() - 4);
    double acc = 0.0;
    for (int a = start; a < start + 4; ++a) {
        double w = 1.0;
        for (int b = start; b < start + 4; ++b)
            if (b != a) w *= (r - grid.r(b)) / (grid.r(a) - grid.r(b));
        acc += w * u(a, j);
    }
    return acc;
}

}  // namespace nilbal
