#include "hocus/flux.hpp"

#include <algorithm>
#include <cmath>

namespace hocus {

FluxVector physical_flux(const PrimitiveState& w, double nx, double ny,
                         const GasModel& gas) {
    const double un = w.u * nx + w.v * ny;
    const double E = w.p / (gas.gamma - 1.0) +
                     0.5 * w.rho * (w.u * w.u + w.v * w.v);
    return {w.rho * un, w.rho * un * w.u + w.p * nx,
            w.rho * un * w.v + w.p * ny, (E + w.p) * un};
}

namespace {

// State and flux in the rotated frame (normal, tangential).
struct Rotated {
    double rho, un, ut, p, E, c;
};

Rotated rotate(const PrimitiveState& w, double nx, double ny,
               const GasModel& gas) {
    Rotated r;
    r.rho = w.rho;
    r.un = w.u * nx + w.v * ny;
    r.ut = w.u * (-ny) + w.v * nx;
    r.p = w.p;
    r.E = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    r.c = sound_speed(w, gas);
    return r;
}

// (mass, normal momentum, tangential momentum, energy) flux of one state.
std::array<double, 4> frame_flux(const Rotated& s) {
    return {s.rho * s.un, s.rho * s.un * s.un + s.p, s.rho * s.un * s.ut,
            (s.E + s.p) * s.un};
}

std::array<double, 4> frame_cons(const Rotated& s) {
    return {s.rho, s.rho * s.un, s.rho * s.ut, s.E};
}

FluxVector rotate_back(const std::array<double, 4>& f, double nx, double ny) {
    return {f[0], f[1] * nx + f[2] * (-ny), f[1] * ny + f[2] * nx, f[3]};
}

} // namespace

FluxVector hllc_flux(const PrimitiveState& wl, const PrimitiveState& wr,
                     double nx, double ny, const GasModel& gas) {
    const Rotated L = rotate(wl, nx, ny, gas);
    const Rotated R = rotate(wr, nx, ny, gas);

    const RoeAverages roe = roe_average(wl, wr, gas);
    const double roe_un = roe.u * nx + roe.v * ny;
    const double s_l = std::min(L.un - L.c, roe_un - roe.c);
    const double s_r = std::max(R.un + R.c, roe_un + roe.c);
    const double s_star =
        (R.p - L.p + L.rho * L.un * (s_l - L.un) - R.rho * R.un * (s_r - R.un)) /
        (L.rho * (s_l - L.un) - R.rho * (s_r - R.un));

    std::array<double, 4> f;
    if (s_l >= 0.0) {
        f = frame_flux(L);
    } else if (s_r <= 0.0) {
        f = frame_flux(R);
    } else {
        const Rotated& K = (s_star >= 0.0) ? L : R;
        const double s_k = (s_star >= 0.0) ? s_l : s_r;
        const double coef = K.rho * (s_k - K.un) / (s_k - s_star);
        const std::array<double, 4> q_star = {
            coef, coef * s_star, coef * K.ut,
            coef * (K.E / K.rho +
                    (s_star - K.un) * (s_star + K.p / (K.rho * (s_k - K.un))))};
        const std::array<double, 4> fk = frame_flux(K);
        const std::array<double, 4> qk = frame_cons(K);
        for (int i = 0; i < 4; ++i) f[i] = fk[i] + s_k * (q_star[i] - qk[i]);
    }
    return rotate_back(f, nx, ny);
}

FluxVector glf_flux(const PrimitiveState& wl, const PrimitiveState& wr,
                    double nx, double ny, const GasModel& gas, double alpha) {
    const FluxVector fl = physical_flux(wl, nx, ny, gas);
    const FluxVector fr = physical_flux(wr, nx, ny, gas);
    const ConservativeState ql = prim_to_cons(wl, gas);
    const ConservativeState qr = prim_to_cons(wr, gas);
    const std::array<double, 4> dq = {qr.rho - ql.rho, qr.mx - ql.mx,
                                      qr.my - ql.my, qr.E - ql.E};
    FluxVector f;
    for (int i = 0; i < 4; ++i) f[i] = 0.5 * (fl[i] + fr[i]);
    f[0] -= 0.5 * alpha * dq[0];
    f[1] -= 0.5 * alpha * dq[1];
    f[2] -= 0.5 * alpha * dq[2];
    f[3] -= 0.5 * alpha * dq[3];
    return f;
}

} // namespace hocus
