#pragma once

#include "hocus/euler.hpp"

namespace hocus {

struct RiemannSolution {
    double p_star = 0.0;
    double u_star = 0.0;
    double residual = 0.0; // |f(p_star)| at convergence
};

// Star region of the 1D Riemann problem (x-direction; v is passive).
// Throws SolverError when the data generate vacuum.
RiemannSolution solve_riemann(const PrimitiveState& wl,
                              const PrimitiveState& wr, const GasModel& gas);

// Self-similar solution sampled at xi = x/t; v passes through from the side
// of the contact the sample falls on.
PrimitiveState sample_riemann(const PrimitiveState& wl,
                              const PrimitiveState& wr,
                              const RiemannSolution& sol, double xi,
                              const GasModel& gas);

} // namespace hocus
