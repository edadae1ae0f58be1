#pragma once

#include <functional>
#include <optional>

#include "hocus/euler.hpp"
#include "hocus/field.hpp"
#include "hocus/grid.hpp"

namespace hocus {

enum class BcType { periodic, zero_gradient, reflective, fixed_state, time_dependent };

struct BoundaryCondition {
    BcType type = BcType::periodic;
    // fixed_state: prescribed primitive state for every ghost cell on the side.
    PrimitiveState state;
    // time_dependent: called with the coordinate running along the side and the
    // current time; nullopt falls back to reflective mirroring at that position
    // (the double-Mach lower wall mixes a prescribed state with a solid wall).
    std::function<std::optional<PrimitiveState>(double, double)> ghost_state;
};

struct BoundarySpec {
    BoundaryCondition x_lo, x_hi, y_lo, y_hi;
};

// Fills every ghost layer of q from the interior, the prescribed states, or
// the periodic image. Fields hold conservative variables when euler is true
// (reflective sides negate the wall-normal momentum); scalar fields mirror
// values as-is. Periodic sides must be paired.
void fill_ghosts(CellField& q, const Grid2D& grid, const BoundarySpec& bc,
                 const GasModel& gas, bool euler, double t);

} // namespace hocus
