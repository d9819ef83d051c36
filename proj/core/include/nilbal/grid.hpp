#pragma once

// Polar grids on the model surface T in geodesic polar coordinates (r, theta)
// and scalar fields on them.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nilbal {

// Radial nodes r_0 < ... < r_N (geodesic radii) times M periodic angular
// nodes theta_j = 2 pi j / M. A grid with r_0 = 0 is a disk; its first row
// collapses to the single origin value.
class AnnulusGrid {
public:
    AnnulusGrid(std::vector<double> r_nodes, int angular_nodes);

    static AnnulusGrid uniform(double r_in, double r_out, int radial_intervals, int angular_nodes);
    // Geometric grading r_i = r_in (r_out/r_in)^{i/N}; dense near r_in.
    static AnnulusGrid logarithmic(double r_in, double r_out, int radial_intervals,
                                   int angular_nodes);

    int radial_intervals() const noexcept { return static_cast<int>(r_.size()) - 1; }
    int rows() const noexcept { return static_cast<int>(r_.size()); }
    int cols() const noexcept { return m_; }
    std::size_t size() const noexcept { return r_.size() * static_cast<std::size_t>(m_); }

    bool has_origin() const noexcept { return r_.front() == 0.0; }
    double r_in() const noexcept { return r_.front(); }
    double r_out() const noexcept { return r_.back(); }

    double r(int i) const { return r_[static_cast<std::size_t>(i)]; }
    double theta(int j) const noexcept;
    double dtheta() const noexcept;

    // Warp at the node and at the midpoint between rows i and i+1.
    double g(int i) const { return g_[static_cast<std::size_t>(i)]; }
    double g_half(int i) const { return g_half_[static_cast<std::size_t>(i)]; }

    std::span<const double> radii() const noexcept { return r_; }

private:
    std::vector<double> r_;
    std::vector<double> g_;
    std::vector<double> g_half_;
    int m_;
};

// Values on the nodes of an AnnulusGrid, row-major in (i, j); heights in
// fiber arc-length units.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int rows, int cols, double fill = 0.0);
    explicit ScalarField(const AnnulusGrid& grid, double fill = 0.0)
        : ScalarField(grid.rows(), grid.cols(), fill) {}

    static ScalarField sample(const AnnulusGrid& grid,
                              const std::function<double(double r, double theta)>& fn);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    double& operator()(int i, int j) { return data_[index(i, j)]; }
    double operator()(int i, int j) const { return data_[index(i, j)]; }

    // Periodic access in j.
    double wrapped(int i, int j) const { return (*this)(i, ((j % cols_) + cols_) % cols_); }

    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    double max_abs() const noexcept;

private:
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(j);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// Four-point Lagrange interpolation along the radial line j.
double interpolate_radial(const AnnulusGrid& grid, const ScalarField& u, int j, double r);

}  // namespace nilbal
