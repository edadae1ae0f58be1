#include "hocus/output.hpp"

#include <cstdio>
#include <memory>

namespace hocus {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_out(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "w"));
    if (!f) throw SolverError("cannot open output file: " + path);
    return f;
}

PrimitiveState cell_prim(const CellField& q, const GasModel& gas, bool euler,
                         int i, int j) {
    if (!euler) return PrimitiveState{q(0, i, j), 0.0, 0.0, 0.0};
    return cons_to_prim({q(0, i, j), q(1, i, j), q(2, i, j), q(3, i, j)}, gas);
}

void write_row_2d(std::FILE* f, const CellField& q, const Grid2D& grid,
                  const GasModel& gas, bool euler, int j) {
    const double y = grid.y.center(j);
    for (int i = 0; i < grid.x.n_cells; ++i) {
        const PrimitiveState w = cell_prim(q, gas, euler, i, j);
        std::fprintf(f, "%.15g,%.15g,%.15g,%.15g,%.15g,%.15g\n",
                     grid.x.center(i), y, w.rho, w.u, w.v, w.p);
    }
}

} // namespace

void write_csv(const std::string& path, const CellField& q, const Grid2D& grid,
               const GasModel& gas, bool euler) {
    FilePtr f = open_out(path);
    if (grid.y.n_cells == 1 && !euler) {
        std::fprintf(f.get(), "x,u\n");
        for (int i = 0; i < grid.x.n_cells; ++i)
            std::fprintf(f.get(), "%.15g,%.15g\n", grid.x.center(i),
                         q(0, i, 0));
        return;
    }
    if (grid.y.n_cells == 1) {
        std::fprintf(f.get(), "x,rho,u,p\n");
        for (int i = 0; i < grid.x.n_cells; ++i) {
            const PrimitiveState w = cell_prim(q, gas, true, i, 0);
            std::fprintf(f.get(), "%.15g,%.15g,%.15g,%.15g\n",
                         grid.x.center(i), w.rho, w.u, w.p);
        }
        return;
    }
    std::fprintf(f.get(), "x,y,rho,u,v,p\n");
    for (int j = 0; j < grid.y.n_cells; ++j)
        write_row_2d(f.get(), q, grid, gas, euler, j);
}

void write_slice_csv(const std::string& path, const CellField& q,
                     const Grid2D& grid, const GasModel& gas, bool euler,
                     int j) {
    FilePtr f = open_out(path);
    std::fprintf(f.get(), "x,y,rho,u,v,p\n");
    write_row_2d(f.get(), q, grid, gas, euler, j);
}

void write_vtk(const std::string& path, const CellField& q, const Grid2D& grid,
               const GasModel& gas, bool euler) {
    const int nx = grid.x.n_cells;
    const int ny = grid.y.n_cells;
    FilePtr fp = open_out(path);
    std::FILE* f = fp.get();
    std::fprintf(f, "# vtk DataFile Version 3.0\n");
    std::fprintf(f, "structured grid solution\n");
    std::fprintf(f, "ASCII\n");
    std::fprintf(f, "DATASET STRUCTURED_POINTS\n");
    std::fprintf(f, "DIMENSIONS %d %d 1\n", nx, ny);
    std::fprintf(f, "ORIGIN %.15g %.15g 0\n", grid.x.center(0),
                 grid.y.center(0));
    std::fprintf(f, "SPACING %.15g %.15g 1\n", grid.x.dx(), grid.y.dx());
    std::fprintf(f, "POINT_DATA %d\n", nx * ny);

    const char* names[4] = {"rho", "u", "v", "p"};
    const int n_vars = euler ? 4 : 1;
    for (int v = 0; v < n_vars; ++v) {
        std::fprintf(f, "SCALARS %s double 1\n", names[v]);
        std::fprintf(f, "LOOKUP_TABLE default\n");
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const PrimitiveState w = cell_prim(q, gas, euler, i, j);
                const double val = v == 0   ? w.rho
                                   : v == 1 ? w.u
                                   : v == 2 ? w.v
                                            : w.p;
                std::fprintf(f, "%.15g\n", val);
            }
    }
}

} // namespace hocus
