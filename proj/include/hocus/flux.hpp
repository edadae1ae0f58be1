#pragma once

#include <array>

#include "hocus/euler.hpp"

namespace hocus {

// Flux in global momentum components: (mass, x-momentum, y-momentum, energy).
using FluxVector = std::array<double, 4>;

// Inviscid flux through a face with unit normal (nx, ny).
FluxVector physical_flux(const PrimitiveState& w, double nx, double ny,
                         const GasModel& gas);

// HLLC approximate Riemann flux. Signal speeds are the Roe-average Einfeldt
// bounds; the tangential velocity rides unchanged through each star state.
FluxVector hllc_flux(const PrimitiveState& wl, const PrimitiveState& wr,
                     double nx, double ny, const GasModel& gas);

// Global Lax-Friedrichs flux; alpha must bound |u_n| + c over the whole
// field for the current stage.
FluxVector glf_flux(const PrimitiveState& wl, const PrimitiveState& wr,
                    double nx, double ny, const GasModel& gas, double alpha);

} // namespace hocus
