#include "hocus/boundary.hpp"

namespace hocus {

namespace {

void check_paired(const BoundaryCondition& lo, const BoundaryCondition& hi,
                  const char* axis) {
    if ((lo.type == BcType::periodic) != (hi.type == BcType::periodic))
        throw SolverError(std::string("periodic boundary on axis ") + axis +
                          " must be paired");
}

void set_state(CellField& q, int i, int j, const PrimitiveState& w,
               const GasModel& gas, bool euler) {
    if (euler) {
        const ConservativeState c = prim_to_cons(w, gas);
        q(0, i, j) = c.rho;
        q(1, i, j) = c.mx;
        q(2, i, j) = c.my;
        q(3, i, j) = c.E;
    } else {
        q(0, i, j) = w.rho;
    }
}

// Mirror across the wall; negate the wall-normal momentum of Euler fields.
void mirror_x(CellField& q, int ghost, int image, int j, bool euler) {
    for (int c = 0; c < q.n_comp(); ++c) {
        const double sign = (euler && c == 1) ? -1.0 : 1.0;
        q(c, ghost, j) = sign * q(c, image, j);
    }
}

} // namespace

void fill_ghosts(CellField& q, const Grid2D& grid, const BoundarySpec& bc,
                 const GasModel& gas, bool euler, double t) {
    const int nx = q.nx(), ny = q.ny(), ng = q.n_ghost();
    check_paired(bc.x_lo, bc.x_hi, "x");
    if (ny > 1) check_paired(bc.y_lo, bc.y_hi, "y");

    for (int j = 0; j < ny; ++j) {
        const double yj = grid.y.center(j);
        for (int m = 1; m <= ng; ++m) {
            switch (bc.x_lo.type) {
            case BcType::periodic:
                for (int c = 0; c < q.n_comp(); ++c) q(c, -m, j) = q(c, nx - m, j);
                break;
            case BcType::zero_gradient:
                for (int c = 0; c < q.n_comp(); ++c) q(c, -m, j) = q(c, 0, j);
                break;
            case BcType::reflective:
                mirror_x(q, -m, m - 1, j, euler);
                break;
            case BcType::fixed_state:
                set_state(q, -m, j, bc.x_lo.state, gas, euler);
                break;
            case BcType::time_dependent: {
                const auto w = bc.x_lo.ghost_state(yj, t);
                if (w) set_state(q, -m, j, *w, gas, euler);
                else mirror_x(q, -m, m - 1, j, euler);
                break;
            }
            }
            switch (bc.x_hi.type) {
            case BcType::periodic:
                for (int c = 0; c < q.n_comp(); ++c) q(c, nx + m - 1, j) = q(c, m - 1, j);
                break;
            case BcType::zero_gradient:
                for (int c = 0; c < q.n_comp(); ++c) q(c, nx + m - 1, j) = q(c, nx - 1, j);
                break;
            case BcType::reflective:
                mirror_x(q, nx + m - 1, nx - m, j, euler);
                break;
            case BcType::fixed_state:
                set_state(q, nx + m - 1, j, bc.x_hi.state, gas, euler);
                break;
            case BcType::time_dependent: {
                const auto w = bc.x_hi.ghost_state(yj, t);
                if (w) set_state(q, nx + m - 1, j, *w, gas, euler);
                else mirror_x(q, nx + m - 1, nx - m, j, euler);
                break;
            }
            }
        }
    }

    if (ny == 1) return;

    for (int i = 0; i < nx; ++i) {
        const double xi = grid.x.center(i);
        for (int m = 1; m <= ng; ++m) {
            switch (bc.y_lo.type) {
            case BcType::periodic:
                for (int c = 0; c < q.n_comp(); ++c) q(c, i, -m) = q(c, i, ny - m);
                break;
            case BcType::zero_gradient:
                for (int c = 0; c < q.n_comp(); ++c) q(c, i, -m) = q(c, i, 0);
                break;
            case BcType::reflective:
                for (int c = 0; c < q.n_comp(); ++c) {
                    const double sign = (euler && c == 2) ? -1.0 : 1.0;
                    q(c, i, -m) = sign * q(c, i, m - 1);
                }
                break;
            case BcType::fixed_state:
                set_state(q, i, -m, bc.y_lo.state, gas, euler);
                break;
            case BcType::time_dependent: {
                const auto w = bc.y_lo.ghost_state(xi, t);
                if (w) set_state(q, i, -m, *w, gas, euler);
                else
                    for (int c = 0; c < q.n_comp(); ++c) {
                        const double sign = (euler && c == 2) ? -1.0 : 1.0;
                        q(c, i, -m) = sign * q(c, i, m - 1);
                    }
                break;
            }
            }
            switch (bc.y_hi.type) {
            case BcType::periodic:
                for (int c = 0; c < q.n_comp(); ++c) q(c, i, ny + m - 1) = q(c, i, m - 1);
                break;
            case BcType::zero_gradient:
                for (int c = 0; c < q.n_comp(); ++c) q(c, i, ny + m - 1) = q(c, i, ny - 1);
                break;
            case BcType::reflective:
                for (int c = 0; c < q.n_comp(); ++c) {
                    const double sign = (euler && c == 2) ? -1.0 : 1.0;
                    q(c, i, ny + m - 1) = sign * q(c, i, ny - m);
                }
                break;
            case BcType::fixed_state:
                set_state(q, i, ny + m - 1, bc.y_hi.state, gas, euler);
                break;
            case BcType::time_dependent: {
                const auto w = bc.y_hi.ghost_state(xi, t);
                if (w) set_state(q, i, ny + m - 1, *w, gas, euler);
                else
                    for (int c = 0; c < q.n_comp(); ++c) {
                        const double sign = (euler && c == 2) ? -1.0 : 1.0;
                        q(c, i, ny + m - 1) = sign * q(c, i, ny - m);
                    }
                break;
            }
            }
        }
    }
}

} // namespace hocus
