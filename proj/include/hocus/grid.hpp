#pragma once

namespace hocus {

// Uniform 1D cell partition. Interior cells are indexed 0..n_cells-1,
// interfaces 0..n_cells; ghost cells extend n_ghost cells past each end.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 1.0;
    int n_cells = 1;
    int n_ghost = 3;

    double dx() const { return (x_max - x_min) / n_cells; }
    double center(int i) const { return x_min + (i + 0.5) * dx(); }
    double interface(int k) const { return x_min + k * dx(); }
};

struct Grid2D {
    Grid1D x;
    Grid1D y;
};

} // namespace hocus
