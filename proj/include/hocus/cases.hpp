#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hocus/boundary.hpp"
#include "hocus/euler.hpp"
#include "hocus/field.hpp"
#include "hocus/grid.hpp"
#include "hocus/integrator.hpp"

namespace hocus {

// A complete benchmark setup: domain, gas, initial and boundary data, end
// time, default grid, and a reference solution when one exists. Scalar
// advection cases carry their value in PrimitiveState::rho.
struct CaseSpec {
    std::string name;
    bool euler = true;
    int dim = 1;
    GasModel gas;
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    int default_nx = 100, default_ny = 1;
    double t_end = 1.0;
    double cfl = 0.2;
    BoundarySpec bc;
    SourceFn source;
    std::function<PrimitiveState(double x, double y)> initial;
    // Pointwise exact solution (analytic or exact-Riemann sampled); null if
    // the case has no closed-form reference.
    std::function<PrimitiveState(double x, double y, double t)> exact;
    // Fine-grid resolution for a reference self-run; 0 if not applicable.
    int reference_nx = 0;
};

CaseSpec make_case(const std::string& name);
std::vector<std::string> case_names();

Grid2D make_grid(const CaseSpec& cs, int nx, int ny);
CellField init_field(const CaseSpec& cs, const Grid2D& grid);
Physics make_physics(const CaseSpec& cs);

struct ReferenceRun {
    Grid2D grid;
    CellField field;
};

// Fine-grid WENO-Z self-run, the reference recipe for cases without a
// closed-form solution: reference_nx cells wide, keeping the default grid's
// aspect ratio.
ReferenceRun run_reference(const CaseSpec& cs, double t_end,
                           bool parallel = true);

// Component-0 value (density for Euler, the advected scalar otherwise) of a
// reference run, multilinearly interpolated at (x, y) with edge clamping.
double sample_density(const ReferenceRun& ref, double x, double y);

// L1 error against the case's exact solution at time t: the mean absolute
// cell error for scalar cases, summed over the four conservative components
// for Euler cases.
double convergence_error(const CaseSpec& cs, const CellField& q,
                         const Grid2D& grid, double t);

} // namespace hocus
