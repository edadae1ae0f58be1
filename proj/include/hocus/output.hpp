#pragma once

#include <string>

#include "hocus/euler.hpp"
#include "hocus/field.hpp"
#include "hocus/grid.hpp"

namespace hocus {

// Cell-center CSV with 15-significant-digit values. Headers: "x,u" for 1D
// scalar fields, "x,rho,u,p" for 1D Euler, "x,y,rho,u,v,p" for 2D Euler
// (primitive variables).
void write_csv(const std::string& path, const CellField& q, const Grid2D& grid,
               const GasModel& gas, bool euler);

// Single row j of a 2D field in the 2D CSV layout.
void write_slice_csv(const std::string& path, const CellField& q,
                     const Grid2D& grid, const GasModel& gas, bool euler,
                     int j);

// Legacy VTK STRUCTURED_POINTS (ASCII) with one scalar array per variable,
// sampled at cell centers.
void write_vtk(const std::string& path, const CellField& q, const Grid2D& grid,
               const GasModel& gas, bool euler);

} // namespace hocus
