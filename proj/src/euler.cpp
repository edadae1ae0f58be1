#include "hocus/euler.hpp"

#include <cmath>

namespace hocus {

ConservativeState prim_to_cons(const PrimitiveState& w, const GasModel& gas) {
    ConservativeState q;
    q.rho = w.rho;
    q.mx = w.rho * w.u;
    q.my = w.rho * w.v;
    q.E = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    return q;
}

PrimitiveState cons_to_prim(const ConservativeState& q, const GasModel& gas) {
    if (!(q.rho > 0.0))
        throw InvalidStateError("non-positive density " + std::to_string(q.rho));
    PrimitiveState w;
    w.rho = q.rho;
    w.u = q.mx / q.rho;
    w.v = q.my / q.rho;
    w.p = (gas.gamma - 1.0) * (q.E - 0.5 * (q.mx * q.mx + q.my * q.my) / q.rho);
    if (!(w.p > 0.0))
        throw InvalidStateError("non-positive pressure " + std::to_string(w.p));
    return w;
}

double sound_speed(const PrimitiveState& w, const GasModel& gas) {
    return std::sqrt(gas.gamma * w.p / w.rho);
}

InterfaceFrame interface_frame(const PrimitiveState& w_left,
                               const PrimitiveState& w_right,
                               double nx, double ny, const GasModel& gas) {
    InterfaceFrame f;
    f.nx = nx;
    f.ny = ny;
    f.lx = -ny;
    f.ly = nx;
    f.rho = 0.5 * (w_left.rho + w_right.rho);
    f.u = 0.5 * (w_left.u + w_right.u);
    f.v = 0.5 * (w_left.v + w_right.v);
    f.p = 0.5 * (w_left.p + w_right.p);
    f.c = std::sqrt(gas.gamma * f.p / f.rho);
    return f;
}

std::array<double, 4> to_characteristic(const InterfaceFrame& f,
                                        const std::array<double, 4>& w) {
    const double a = f.rho / (2.0 * f.c);
    const double b = 1.0 / (2.0 * f.c * f.c);
    return {
        -f.nx * a * w[1] - f.ny * a * w[2] + b * w[3],
        w[0] - w[3] / (f.c * f.c),
        f.nx * a * w[1] + f.ny * a * w[2] + b * w[3],
        f.rho * (f.lx * w[1] + f.ly * w[2]),
    };
}

std::array<double, 4> from_characteristic(const InterfaceFrame& f,
                                          const std::array<double, 4>& W) {
    const double cr = f.c / f.rho;
    return {
        W[0] + W[1] + W[2],
        -f.nx * cr * W[0] + f.nx * cr * W[2] + f.lx / f.rho * W[3],
        -f.ny * cr * W[0] + f.ny * cr * W[2] + f.ly / f.rho * W[3],
        f.c * f.c * (W[0] + W[2]),
    };
}

RoeAverages roe_average(const PrimitiveState& w_left,
                        const PrimitiveState& w_right, const GasModel& gas) {
    const double sl = std::sqrt(w_left.rho);
    const double sr = std::sqrt(w_right.rho);
    const double inv = 1.0 / (sl + sr);
    const double HL = (prim_to_cons(w_left, gas).E + w_left.p) / w_left.rho;
    const double HR = (prim_to_cons(w_right, gas).E + w_right.p) / w_right.rho;
    RoeAverages r;
    r.u = (sl * w_left.u + sr * w_right.u) * inv;
    r.v = (sl * w_left.v + sr * w_right.v) * inv;
    r.H = (sl * HL + sr * HR) * inv;
    r.c = std::sqrt((gas.gamma - 1.0) * (r.H - 0.5 * (r.u * r.u + r.v * r.v)));
    return r;
}

} // namespace hocus
