#pragma once

#include <cassert>
#include <cstddef>
#include <functional>
#include <vector>

#include "hocus/grid.hpp"

namespace hocus {

// Cell-centered storage for n_comp components on an (nx x ny) interior with
// n_ghost ghost layers on every side. Component-major; x runs contiguously.
// 1D fields use ny = 1 (the y ghost rows exist but stay untouched).
class CellField {
public:
    CellField() = default;
    CellField(int n_comp, int nx, int ny, int n_ghost)
        : nc_(n_comp), nx_(nx), ny_(ny), ng_(n_ghost),
          sx_(nx + 2 * n_ghost), sy_(ny + 2 * n_ghost),
          data_(static_cast<std::size_t>(n_comp) * sx_ * sy_, 0.0) {}

    int n_comp() const { return nc_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int n_ghost() const { return ng_; }

    double& operator()(int c, int i, int j) { return data_[index(c, i, j)]; }
    double operator()(int c, int i, int j) const { return data_[index(c, i, j)]; }

    double* row(int c, int j) { return data_.data() + index(c, 0, j); }
    const double* row(int c, int j) const { return data_.data() + index(c, 0, j); }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    // Interior sum of one component in a fixed (row-major) order, with
    // Kahan compensation so conservation audits are not limited by the sum.
    double interior_sum(int c) const {
        double s = 0.0, comp = 0.0;
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < nx_; ++i) {
                const double y = (*this)(c, i, j) - comp;
                const double t = s + y;
                comp = (t - s) - y;
                s = t;
            }
        return s;
    }

private:
    std::size_t index(int c, int i, int j) const {
        assert(c >= 0 && c < nc_);
        assert(i >= -ng_ && i < nx_ + ng_);
        assert(j >= -ng_ && j < ny_ + ng_);
        return (static_cast<std::size_t>(c) * sy_ + (j + ng_)) * sx_ + (i + ng_);
    }

    int nc_ = 0, nx_ = 0, ny_ = 0, ng_ = 0;
    int sx_ = 0, sy_ = 0;
    std::vector<double> data_;
};

// Mean absolute deviation from a reference sampled at interior cell centers:
// (1/(Nx*Ny)) * sum |u - ref|.
double l1_error(const CellField& field, int component, const Grid2D& grid,
                const std::function<double(double, double)>& reference);

} // namespace hocus
