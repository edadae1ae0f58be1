#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace hocus {

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a state leaves the physical region (rho <= 0 or p <= 0).
struct InvalidStateError : SolverError {
    explicit InvalidStateError(const std::string& what) : SolverError(what) {}
};

struct GasModel {
    double gamma = 1.4;
};

struct PrimitiveState {
    double rho = 0.0;
    double u = 0.0;
    double v = 0.0;
    double p = 0.0;
};

struct ConservativeState {
    double rho = 0.0;
    double mx = 0.0;
    double my = 0.0;
    double E = 0.0;
};

ConservativeState prim_to_cons(const PrimitiveState& w, const GasModel& gas);
PrimitiveState cons_to_prim(const ConservativeState& q, const GasModel& gas);
double sound_speed(const PrimitiveState& w, const GasModel& gas);

// Frozen arithmetic-average state used to project one interface's stencil
// into characteristic variables. Tangent (lx,ly) = (-ny, nx).
struct InterfaceFrame {
    double nx = 1.0, ny = 0.0;
    double lx = 0.0, ly = 1.0;
    double rho = 0.0, u = 0.0, v = 0.0, p = 0.0, c = 0.0;
};

InterfaceFrame interface_frame(const PrimitiveState& w_left,
                               const PrimitiveState& w_right,
                               double nx, double ny, const GasModel& gas);

// Characteristic variables of the primitive vector (rho, u, v, p) in the
// given frame; from_characteristic inverts exactly (L*R = I).
std::array<double, 4> to_characteristic(const InterfaceFrame& f,
                                        const std::array<double, 4>& w);
std::array<double, 4> from_characteristic(const InterfaceFrame& f,
                                          const std::array<double, 4>& W);

struct RoeAverages {
    double u = 0.0, v = 0.0, H = 0.0, c = 0.0;
};

RoeAverages roe_average(const PrimitiveState& w_left,
                        const PrimitiveState& w_right, const GasModel& gas);

} // namespace hocus
