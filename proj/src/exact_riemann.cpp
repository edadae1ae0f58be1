#include "hocus/exact_riemann.hpp"

#include <algorithm>
#include <cmath>

namespace hocus {

namespace {

struct Side {
    double rho, u, p, c;
};

// Velocity change across the wave connecting the side state to pressure p,
// and its derivative with respect to p.
void pressure_fn(double p, const Side& s, double g, double& f, double& df) {
    if (p > s.p) {
        const double a = 2.0 / ((g + 1.0) * s.rho);
        const double b = s.p * (g - 1.0) / (g + 1.0);
        const double root = std::sqrt(a / (p + b));
        f = (p - s.p) * root;
        df = root * (1.0 - 0.5 * (p - s.p) / (b + p));
    } else {
        const double pr = p / s.p;
        f = (2.0 * s.c / (g - 1.0)) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
        df = std::pow(pr, -(g + 1.0) / (2.0 * g)) / (s.rho * s.c);
    }
}

double initial_guess(const Side& l, const Side& r, double g) {
    constexpr double tol = 1e-8;
    const double du = r.u - l.u;
    const double p_pv = std::max(
        tol, 0.5 * (l.p + r.p) - 0.125 * du * (l.rho + r.rho) * (l.c + r.c));
    const double p_min = std::min(l.p, r.p);
    const double p_max = std::max(l.p, r.p);
    if (p_max / p_min <= 2.0 && p_pv >= p_min && p_pv <= p_max) return p_pv;
    if (p_pv < p_min) {
        // Two-rarefaction approximation.
        const double z = (g - 1.0) / (2.0 * g);
        const double num = l.c + r.c - 0.5 * (g - 1.0) * du;
        const double den = l.c / std::pow(l.p, z) + r.c / std::pow(r.p, z);
        return std::pow(num / den, 1.0 / z);
    }
    // Two-shock approximation.
    const double gl = std::sqrt((2.0 / ((g + 1.0) * l.rho)) /
                                (p_pv + l.p * (g - 1.0) / (g + 1.0)));
    const double gr = std::sqrt((2.0 / ((g + 1.0) * r.rho)) /
                                (p_pv + r.p * (g - 1.0) / (g + 1.0)));
    return std::max(tol, (gl * l.p + gr * r.p - du) / (gl + gr));
}

} // namespace

RiemannSolution solve_riemann(const PrimitiveState& wl,
                              const PrimitiveState& wr, const GasModel& gas) {
    const double g = gas.gamma;
    const Side l{wl.rho, wl.u, wl.p, sound_speed(wl, gas)};
    const Side r{wr.rho, wr.u, wr.p, sound_speed(wr, gas)};
    const double du = r.u - l.u;
    if ((2.0 / (g - 1.0)) * (l.c + r.c) <= du)
        throw SolverError("riemann problem generates vacuum");

    double p = initial_guess(l, r, g);
    double fl, dfl, fr, dfr;
    for (int it = 0; it < 100; ++it) {
        pressure_fn(p, l, g, fl, dfl);
        pressure_fn(p, r, g, fr, dfr);
        const double f = fl + fr + du;
        const double step = f / (dfl + dfr);
        double p_new = p - step;
        if (p_new <= 0.0) p_new = 0.5 * p; // damp instead of leaving p > 0
        const double change = std::abs(p_new - p) / (0.5 * (p + p_new));
        p = p_new;
        if (change < 1e-15) break;
    }
    pressure_fn(p, l, g, fl, dfl);
    pressure_fn(p, r, g, fr, dfr);
    RiemannSolution sol;
    sol.p_star = p;
    sol.u_star = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
    sol.residual = std::abs(fl + fr + du);
    return sol;
}

PrimitiveState sample_riemann(const PrimitiveState& wl,
                              const PrimitiveState& wr,
                              const RiemannSolution& sol, double xi,
                              const GasModel& gas) {
    const double g = gas.gamma;
    const double p_star = sol.p_star;
    const double u_star = sol.u_star;
    const double gm = g - 1.0;
    const double gp = g + 1.0;

    PrimitiveState w;
    if (xi <= u_star) {
        const Side s{wl.rho, wl.u, wl.p, sound_speed(wl, gas)};
        w.v = wl.v;
        if (p_star > s.p) {
            const double shock =
                s.u - s.c * std::sqrt(gp / (2.0 * g) * (p_star / s.p) +
                                      gm / (2.0 * g));
            if (xi <= shock) return wl;
            w.rho = s.rho * ((p_star / s.p + gm / gp) /
                             (gm / gp * (p_star / s.p) + 1.0));
            w.u = u_star;
            w.p = p_star;
        } else {
            const double head = s.u - s.c;
            const double c_star = s.c * std::pow(p_star / s.p, gm / (2.0 * g));
            const double tail = u_star - c_star;
            if (xi <= head) return wl;
            if (xi >= tail) {
                w.rho = s.rho * std::pow(p_star / s.p, 1.0 / g);
                w.u = u_star;
                w.p = p_star;
            } else {
                const double fac = 2.0 / gp + gm / (gp * s.c) * (s.u - xi);
                w.rho = s.rho * std::pow(fac, 2.0 / gm);
                w.u = 2.0 / gp * (s.c + 0.5 * gm * s.u + xi);
                w.p = s.p * std::pow(fac, 2.0 * g / gm);
            }
        }
    } else {
        const Side s{wr.rho, wr.u, wr.p, sound_speed(wr, gas)};
        w.v = wr.v;
        if (p_star > s.p) {
            const double shock =
                s.u + s.c * std::sqrt(gp / (2.0 * g) * (p_star / s.p) +
                                      gm / (2.0 * g));
            if (xi >= shock) return wr;
            w.rho = s.rho * ((p_star / s.p + gm / gp) /
                             (gm / gp * (p_star / s.p) + 1.0));
            w.u = u_star;
            w.p = p_star;
        } else {
            const double head = s.u + s.c;
            const double c_star = s.c * std::pow(p_star / s.p, gm / (2.0 * g));
            const double tail = u_star + c_star;
            if (xi >= head) return wr;
            if (xi <= tail) {
                w.rho = s.rho * std::pow(p_star / s.p, 1.0 / g);
                w.u = u_star;
                w.p = p_star;
            } else {
                const double fac = 2.0 / gp - gm / (gp * s.c) * (s.u - xi);
                w.rho = s.rho * std::pow(fac, 2.0 / gm);
                w.u = 2.0 / gp * (-s.c + 0.5 * gm * s.u + xi);
                w.p = s.p * std::pow(fac, 2.0 * g / gm);
            }
        }
    }
    return w;
}

} // namespace hocus
