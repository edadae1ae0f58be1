// Times one right-hand-side evaluation with the OpenMP line sweeps against
// the serial reference path on a 2D Euler case.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "hocus/cases.hpp"
#include "hocus/integrator.hpp"

using namespace hocus;

namespace {

double time_rhs(CellField& q, CellField& rhs, const Grid2D& grid,
                const BoundarySpec& bc, const Physics& phys,
                const SchemeConfig& cfg, int reps) {
    // warm-up evaluation to populate caches and page in the fields
    compute_rhs(q, rhs, grid, bc, phys, cfg, 0.0);
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r)
        compute_rhs(q, rhs, grid, bc, phys, cfg, 0.0);
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    return dt.count() / reps;
}

} // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 256;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 10;

    const CaseSpec cs = make_case("riemann2d_config3");
    const Grid2D grid = make_grid(cs, n, n);
    CellField q = init_field(cs, grid);
    CellField rhs = q;
    const Physics phys = make_physics(cs);

    SchemeConfig cfg;
    cfg.scheme = Scheme::hocus6;

    cfg.parallel = false;
    const double serial = time_rhs(q, rhs, grid, cs.bc, phys, cfg, reps);
    cfg.parallel = true;
    const double parallel = time_rhs(q, rhs, grid, cs.bc, phys, cfg, reps);

    std::printf("grid %dx%d, %d reps\n", n, n, reps);
    std::printf("serial   %.3f ms/rhs\n", serial * 1e3);
    std::printf("parallel %.3f ms/rhs\n", parallel * 1e3);
    std::printf("speedup  %.2fx\n", serial / parallel);
    return 0;
}
