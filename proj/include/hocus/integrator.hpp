#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>

#include "hocus/boundary.hpp"
#include "hocus/field.hpp"
#include "hocus/grid.hpp"

namespace hocus {

enum class Scheme {
    mp5,
    weno_z,
    c5,
    c6,
    hocus5,
    hocus6,
    hocus6_extra,
    hocus_tvd,
    c5t2,
    hocus_wenoz
};
enum class RiemannSolver { hllc, glf };

Scheme scheme_from_string(const std::string& s); // throws SolverError
const char* to_string(Scheme s);
RiemannSolver riemann_from_string(const std::string& s);
const char* to_string(RiemannSolver s);

struct SchemeConfig {
    Scheme scheme = Scheme::hocus6;
    RiemannSolver riemann = RiemannSolver::hllc;
    double cfl = 0.2;
    // Limiter steepening parameter; < 0 selects the scheme default (4 for
    // plain mp5, 7 everywhere a compact candidate is involved).
    double alpha = -1.0;
    // Systems only: reconstruct the MP5 candidate (and plain WENO-Z) in
    // characteristic variables with a frozen per-interface frame.
    bool characteristic = true;
    double thinc_beta1 = 1.1;
    double thinc_beta2 = 1.6;
    double wenoz_threshold = 1e6;
    bool parallel = true; // line-parallel sweeps; false = serial reference

    double effective_alpha() const {
        if (alpha >= 0.0) return alpha;
        return scheme == Scheme::mp5 ? 4.0 : 7.0;
    }
};

// Per-cell source contribution in conservative components.
using SourceFn = std::function<std::array<double, 4>(double x, double y,
                                                     const PrimitiveState& w)>;

struct Physics {
    bool euler = true;
    GasModel gas;
    SourceFn source; // empty: none
};

struct RhsStats {
    // Net inflow through the domain boundary per component (already scaled
    // by face areas), plus the volume integral of the source: together the
    // exact time derivative of the conserved totals.
    std::array<double, 4> boundary_net{};
    std::array<double, 4> source_net{};
    long triggered = 0; // cells the BVD selection replaced
    long fallback = 0;  // interface sides reset to the adjacent cell average
    long guarded = 0;   // faces blended toward the local LF flux
};

// Semi-discrete residual dQ/dt on the interior of q (ghosts are refilled at
// time t). rhs must share q's shape.
//
// dt > 0 arms the update positivity guard for Euler runs: any face whose
// share of the forward-Euler update of size dt would drive an adjacent
// cell's density or pressure out of the physical region is blended toward
// the local Lax-Friedrichs flux (conservation is untouched; the blend is
// per face). Both guards report through RhsStats and stay exactly inactive
// on resolved flows; dt = 0 gives the pure semi-discrete residual.
RhsStats compute_rhs(CellField& q, CellField& rhs, const Grid2D& grid,
                     const BoundarySpec& bc, const Physics& phys,
                     const SchemeConfig& cfg, double t, double dt = 0.0);

// CFL time step: cfl * min over cells of dx/(|u|+c) (and dy/(|v|+c) in 2D);
// unit advection speed for scalar problems.
double compute_dt(const CellField& q, const Grid2D& grid, const Physics& phys,
                  double cfl);

struct StepStats {
    // Stage-weighted (1/6, 1/6, 2/3) boundary+source nets; multiplied by dt
    // this is the step's exact change of the conserved totals.
    std::array<double, 4> weighted_net{};
    long triggered = 0;
    long fallback = 0;
    long guarded = 0;
};

// One TVD-RK3 step from time t. q1, q2, rhs are scratch fields of q's shape.
StepStats rk3_step(CellField& q, CellField& q1, CellField& q2, CellField& rhs,
                   const Grid2D& grid, const BoundarySpec& bc,
                   const Physics& phys, const SchemeConfig& cfg, double t,
                   double dt);

struct RunOptions {
    double t_end = 0.0;
    double fixed_dt = 0.0; // > 0 overrides the CFL step (convergence studies)
    long max_steps = std::numeric_limits<long>::max();
    long snapshot_every = 0; // step interval; 0 = none
    std::function<void(const CellField&, double t, long step)> snapshot;
};

struct RunReport {
    long steps = 0;
    double end_time = 0.0;
    long long triggered_total = 0;
    long long triggered_after_first_step = 0;
    long long fallback_total = 0; // first-order interface-state resets
    long long guarded_total = 0;  // positivity-blended faces
    std::array<double, 4> initial_total{}; // cell-volume-weighted sums
    std::array<double, 4> final_total{};
    std::array<double, 4> accumulated_net{}; // time integral of boundary+source
    double wall_seconds = 0.0;
};

// Advances q to t_end (final step clipped to land exactly).
RunReport run_simulation(CellField& q, const Grid2D& grid,
                         const BoundarySpec& bc, const Physics& phys,
                         const SchemeConfig& cfg, const RunOptions& opt);

} // namespace hocus
