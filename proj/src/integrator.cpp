#include "hocus/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <vector>

#include "hocus/bvd.hpp"
#include "hocus/flux.hpp"
#include "hocus/reconstruction.hpp"

namespace hocus {

Scheme scheme_from_string(const std::string& s) {
    if (s == "mp5") return Scheme::mp5;
    if (s == "weno_z") return Scheme::weno_z;
    if (s == "c5") return Scheme::c5;
    if (s == "c6") return Scheme::c6;
    if (s == "hocus5") return Scheme::hocus5;
    if (s == "hocus6") return Scheme::hocus6;
    if (s == "hocus6_extra") return Scheme::hocus6_extra;
    if (s == "hocus_tvd") return Scheme::hocus_tvd;
    if (s == "c5t2") return Scheme::c5t2;
    if (s == "hocus_wenoz") return Scheme::hocus_wenoz;
    throw SolverError("unknown scheme: " + s);
}

const char* to_string(Scheme s) {
    switch (s) {
    case Scheme::mp5: return "mp5";
    case Scheme::weno_z: return "weno_z";
    case Scheme::c5: return "c5";
    case Scheme::c6: return "c6";
    case Scheme::hocus5: return "hocus5";
    case Scheme::hocus6: return "hocus6";
    case Scheme::hocus6_extra: return "hocus6_extra";
    case Scheme::hocus_tvd: return "hocus_tvd";
    case Scheme::c5t2: return "c5t2";
    case Scheme::hocus_wenoz: return "hocus_wenoz";
    }
    return "?";
}

RiemannSolver riemann_from_string(const std::string& s) {
    if (s == "hllc") return RiemannSolver::hllc;
    if (s == "glf") return RiemannSolver::glf;
    throw SolverError("unknown riemann solver: " + s);
}

const char* to_string(RiemannSolver s) {
    return s == RiemannSolver::hllc ? "hllc" : "glf";
}

namespace {

struct LineWork {
    std::vector<std::vector<double>> line; // per component, ghosts included
    std::vector<LineView> views;
    std::vector<LinePair> base, shock, c5p, aux1, aux2;
    std::vector<FluxVector> flux;
    ReconScratch scratch;
};

void ensure(std::vector<LinePair>& pairs, int nc, int n) {
    pairs.resize(nc);
    for (auto& p : pairs) {
        p.left.resize(n + 1);
        p.right.resize(n + 1);
    }
}

// MP5 or WENO-Z pair in characteristic variables: per interface, a frozen
// frame from the two adjacent cells projects the whole six-cell stencil.
void characteristic_pair(const std::vector<LineView>& cells, double fn_x,
                         double fn_y, const GasModel& gas, bool use_weno,
                         double alpha, std::vector<LinePair>& out) {
    const int n = cells[0].n;
    for (int k = 0; k <= n; ++k) {
        const PrimitiveState wa{cells[0][k - 1], cells[1][k - 1],
                                cells[2][k - 1], cells[3][k - 1]};
        const PrimitiveState wb{cells[0][k], cells[1][k], cells[2][k],
                                cells[3][k]};
        const InterfaceFrame f = interface_frame(wa, wb, fn_x, fn_y, gas);
        double W[4][6];
        for (int m = 0; m < 6; ++m) {
            const std::array<double, 4> w = {
                cells[0][k - 3 + m], cells[1][k - 3 + m], cells[2][k - 3 + m],
                cells[3][k - 3 + m]};
            const std::array<double, 4> ch = to_characteristic(f, w);
            for (int c = 0; c < 4; ++c) W[c][m] = ch[c];
        }
        std::array<double, 4> chl, chr;
        for (int c = 0; c < 4; ++c) {
            if (use_weno) {
                chl[c] = weno_z(W[c][0], W[c][1], W[c][2], W[c][3], W[c][4]);
                chr[c] = weno_z(W[c][5], W[c][4], W[c][3], W[c][2], W[c][1]);
            } else {
                chl[c] =
                    mp5_limit(W[c][0], W[c][1], W[c][2], W[c][3], W[c][4], alpha);
                chr[c] =
                    mp5_limit(W[c][5], W[c][4], W[c][3], W[c][2], W[c][1], alpha);
            }
        }
        const std::array<double, 4> wl = from_characteristic(f, chl);
        const std::array<double, 4> wr = from_characteristic(f, chr);
        for (int c = 0; c < 4; ++c) {
            out[c].left[k] = wl[c];
            out[c].right[k] = wr[c];
        }
    }
}

// Builds w.base as the final interface pair for one line whose component
// views are already set. periodic marks a line whose two ends are the same
// physical face, which makes the selector windows wrap. Returns the BVD
// trigger count.
long build_interfaces(const SchemeConfig& cfg, const Physics& phys,
                      double fn_x, double fn_y, bool periodic, LineWork& w) {
    const int nc = static_cast<int>(w.views.size());
    const int n = w.views[0].n;
    const double alpha = cfg.effective_alpha();
    const bool char_proj = phys.euler && cfg.characteristic && nc == 4;
    ensure(w.base, nc, n);

    switch (cfg.scheme) {
    case Scheme::mp5:
    case Scheme::weno_z: {
        const bool weno = cfg.scheme == Scheme::weno_z;
        if (char_proj) {
            characteristic_pair(w.views, fn_x, fn_y, phys.gas, weno, alpha,
                                w.base);
        } else {
            for (int c = 0; c < nc; ++c) {
                if (weno)
                    reconstruct_weno_z(w.views[c], w.base[c].left,
                                       w.base[c].right);
                else
                    reconstruct_mp5(w.views[c], alpha, w.base[c].left,
                                    w.base[c].right);
            }
        }
        return 0;
    }
    case Scheme::c5:
        for (int c = 0; c < nc; ++c)
            reconstruct_c5(w.views[c], alpha, w.base[c].left, w.base[c].right,
                           w.scratch);
        return 0;
    case Scheme::c6: {
        ensure(w.c5p, nc, n);
        for (int c = 0; c < nc; ++c) {
            reconstruct_c5(w.views[c], alpha, w.c5p[c].left, w.c5p[c].right,
                           w.scratch);
            average_c6(w.c5p[c].left, w.c5p[c].right, w.base[c].left,
                       w.base[c].right);
        }
        return 0;
    }
    case Scheme::hocus5:
    case Scheme::hocus6:
    case Scheme::hocus6_extra:
    case Scheme::hocus_tvd: {
        ensure(w.c5p, nc, n);
        ensure(w.shock, nc, n);
        for (int c = 0; c < nc; ++c)
            reconstruct_c5(w.views[c], alpha, w.c5p[c].left, w.c5p[c].right,
                           w.scratch);
        if (cfg.scheme == Scheme::hocus5) {
            for (int c = 0; c < nc; ++c) w.base[c] = w.c5p[c];
        } else {
            for (int c = 0; c < nc; ++c)
                average_c6(w.c5p[c].left, w.c5p[c].right, w.base[c].left,
                           w.base[c].right);
        }
        if (cfg.scheme == Scheme::hocus_tvd) {
            for (int c = 0; c < nc; ++c)
                reconstruct_muscl(w.views[c], w.shock[c].left,
                                  w.shock[c].right);
        } else if (char_proj) {
            characteristic_pair(w.views, fn_x, fn_y, phys.gas, false, alpha,
                                w.shock);
        } else {
            for (int c = 0; c < nc; ++c)
                reconstruct_mp5(w.views[c], alpha, w.shock[c].left,
                                w.shock[c].right);
        }
        const std::vector<LineView>* gate =
            cfg.scheme == Scheme::hocus6_extra ? &w.views : nullptr;
        return select_hocus(n, periodic, w.base, w.shock, w.c5p, gate);
    }
    case Scheme::c5t2: {
        ensure(w.aux1, nc, n);
        ensure(w.aux2, nc, n);
        for (int c = 0; c < nc; ++c) {
            reconstruct_c5(w.views[c], alpha, w.base[c].left, w.base[c].right,
                           w.scratch);
            reconstruct_thinc(w.views[c], cfg.thinc_beta1, w.aux1[c].left,
                              w.aux1[c].right);
            reconstruct_thinc(w.views[c], cfg.thinc_beta2, w.aux2[c].left,
                              w.aux2[c].right);
        }
        return select_c5t2(n, periodic, w.base, w.aux1, w.aux2);
    }
    case Scheme::hocus_wenoz: {
        ensure(w.c5p, nc, n);
        ensure(w.aux1, nc, n);
        for (int c = 0; c < nc; ++c) {
            reconstruct_c5(w.views[c], alpha, w.c5p[c].left, w.c5p[c].right,
                           w.scratch);
            average_c6(w.c5p[c].left, w.c5p[c].right, w.base[c].left,
                       w.base[c].right);
            reconstruct_weno_z(w.views[c], w.aux1[c].left, w.aux1[c].right);
        }
        return select_hocus_wenoz(n, periodic, w.base, w.aux1, w.views,
                                  cfg.wenoz_threshold);
    }
    }
    return 0;
}

struct SweepCtx {
    const Grid2D* grid;
    const Physics* phys;
    const SchemeConfig* cfg;
    CellField* q;
    CellField* rhs;
    double alpha_x = 0.0, alpha_y = 0.0; // GLF signal-speed bounds
    double dt = 0.0;                     // > 0 arms the update guard
    int split = 2; // adjacent faces sharing one cell's update (2 in 1D, 4 in 2D)
    bool periodic_x = false, periodic_y = false;
};

struct LineResult {
    std::array<double, 4> net{};
    long trig = 0;
    long fallback = 0;
    long guarded = 0;
};

// Cell average (ghosts included) of the gathered primitive line.
PrimitiveState cell_prim(const LineWork& w, int c) {
    const int ng = w.views[0].n_ghost;
    return {w.line[0][c + ng], w.line[1][c + ng], w.line[2][c + ng],
            w.line[3][c + ng]};
}

// An interface side whose reconstructed density or pressure left the
// physical region is reset to its adjacent cell average; the cell averages
// themselves were validated on gather.
long interface_flux(const SweepCtx& ctx, int n, double fn_x, double fn_y,
                    double glf_alpha, LineWork& w) {
    w.flux.resize(n + 1);
    long fallback = 0;
    if (ctx.phys->euler) {
        for (int k = 0; k <= n; ++k) {
            PrimitiveState wl{w.base[0].left[k], w.base[1].left[k],
                              w.base[2].left[k], w.base[3].left[k]};
            PrimitiveState wr{w.base[0].right[k], w.base[1].right[k],
                              w.base[2].right[k], w.base[3].right[k]};
            if (!(wl.rho > 0.0) || !(wl.p > 0.0)) {
                wl = cell_prim(w, k - 1);
                ++fallback;
            }
            if (!(wr.rho > 0.0) || !(wr.p > 0.0)) {
                wr = cell_prim(w, k);
                ++fallback;
            }
            w.flux[k] = ctx.cfg->riemann == RiemannSolver::glf
                            ? glf_flux(wl, wr, fn_x, fn_y, ctx.phys->gas,
                                       glf_alpha)
                            : hllc_flux(wl, wr, fn_x, fn_y, ctx.phys->gas);
        }
    } else {
        // Scalar advection at unit speed: upwind flux is the left value.
        for (int k = 0; k <= n; ++k)
            w.flux[k] = {w.base[0].left[k], 0.0, 0.0, 0.0};
    }
    return fallback;
}

// Update positivity guard. The stage update of each cell splits into
// per-face parts, U - split*lambda*(F_face - F(U)) on the upwind side and
// the mirrored form on the other, whose average telescopes back to the full
// update; each part depends on one face only. Any face whose part would
// push density or pressure of an adjacent interior cell below a relative
// floor is blended toward the local Lax-Friedrichs flux by the largest
// admissible convex weight. Both cells see the same blended flux, so
// conservation is exact; a face the split keeps physical is untouched.
long guard_fluxes(const SweepCtx& ctx, int n, double fn_x, double fn_y,
                  double dxy, const char* dir, LineWork& w) {
    if (!ctx.phys->euler || !(ctx.dt > 0.0)) return 0;
    const GasModel gas = ctx.phys->gas;
    const double lam = static_cast<double>(ctx.split) * ctx.dt / dxy;

    struct Side {
        ConservativeState cs;
        FluxVector pivot; // physical flux of the cell average
        double sign;      // +1: face is the cell's right face
        double floor_rho, floor_p;
    };
    auto part_ok = [&](const Side& s, const FluxVector& f) {
        const double r = s.cs.rho - s.sign * lam * (f[0] - s.pivot[0]);
        if (!(r > s.floor_rho)) return false;
        const double mx = s.cs.mx - s.sign * lam * (f[1] - s.pivot[1]);
        const double my = s.cs.my - s.sign * lam * (f[2] - s.pivot[2]);
        const double e = s.cs.E - s.sign * lam * (f[3] - s.pivot[3]);
        const double p = (gas.gamma - 1.0) * (e - 0.5 * (mx * mx + my * my) / r);
        return p > s.floor_p;
    };

    long guarded = 0;
    for (int k = 0; k <= n; ++k) {
        Side sides[2];
        int ns = 0;
        for (int s = 0; s < 2; ++s) {
            const int c = k - 1 + s; // ghost-adjacent parts are not updated
            if (c < 0 || c >= n) continue;
            const PrimitiveState pw = cell_prim(w, c);
            Side& sd = sides[ns++];
            sd.cs = prim_to_cons(pw, gas);
            sd.pivot = physical_flux(pw, fn_x, fn_y, gas);
            sd.sign = s == 0 ? 1.0 : -1.0;
            sd.floor_rho = 1e-12 * pw.rho;
            sd.floor_p = 1e-12 * pw.p;
        }
        bool ok = true;
        for (int s = 0; s < ns; ++s) ok = ok && part_ok(sides[s], w.flux[k]);
        if (ok) continue;

        const PrimitiveState cl = cell_prim(w, k - 1);
        const PrimitiveState cr = cell_prim(w, k);
        const double al =
            std::abs(cl.u * fn_x + cl.v * fn_y) + sound_speed(cl, gas);
        const double ar =
            std::abs(cr.u * fn_x + cr.v * fn_y) + sound_speed(cr, gas);
        const FluxVector lo =
            glf_flux(cl, cr, fn_x, fn_y, gas, std::max(al, ar));
        auto blend = [&](double th) {
            if (th == 0.0) return lo;
            FluxVector f;
            for (int c = 0; c < 4; ++c)
                f[c] = th * w.flux[k][c] + (1.0 - th) * lo[c];
            return f;
        };
        auto ok_at = [&](double th) {
            const FluxVector f = blend(th);
            for (int s = 0; s < ns; ++s)
                if (!part_ok(sides[s], f)) return false;
            return true;
        };
        if (!ok_at(0.0))
            throw InvalidStateError(
                std::string("first-order update leaves the physical region "
                            "in ") +
                dir + " sweep at interface " + std::to_string(k));
        double th_lo = 0.0, th_hi = 1.0;
        for (int it = 0; it < 48; ++it) {
            const double mid = 0.5 * (th_lo + th_hi);
            (ok_at(mid) ? th_lo : th_hi) = mid;
        }
        w.flux[k] = blend(th_lo);
        ++guarded;
    }
    return guarded;
}

LineResult process_x_line(const SweepCtx& ctx, int j, LineWork& w) {
    const CellField& q = *ctx.q;
    const int nx = ctx.grid->x.n_cells;
    const int ng = q.n_ghost();
    const int nc = ctx.phys->euler ? 4 : 1;
    w.line.resize(nc);
    for (auto& l : w.line) l.resize(nx + 2 * ng);
    if (ctx.phys->euler) {
        for (int i = -ng; i < nx + ng; ++i) {
            PrimitiveState pw;
            try {
                pw = cons_to_prim(
                    {q(0, i, j), q(1, i, j), q(2, i, j), q(3, i, j)},
                    ctx.phys->gas);
            } catch (const InvalidStateError& e) {
                throw InvalidStateError(std::string(e.what()) + " at cell (" +
                                        std::to_string(i) + ", " +
                                        std::to_string(j) + ")");
            }
            w.line[0][i + ng] = pw.rho;
            w.line[1][i + ng] = pw.u;
            w.line[2][i + ng] = pw.v;
            w.line[3][i + ng] = pw.p;
        }
    } else {
        for (int i = -ng; i < nx + ng; ++i) w.line[0][i + ng] = q(0, i, j);
    }
    w.views.resize(nc);
    for (int c = 0; c < nc; ++c)
        w.views[c] = LineView{w.line[c].data() + ng, nx, ng};

    LineResult res;
    res.trig = build_interfaces(*ctx.cfg, *ctx.phys, 1.0, 0.0, ctx.periodic_x, w);
    res.fallback = interface_flux(ctx, nx, 1.0, 0.0, ctx.alpha_x, w);
    res.guarded = guard_fluxes(ctx, nx, 1.0, 0.0, ctx.grid->x.dx(), "x", w);

    CellField& rhs = *ctx.rhs;
    const double inv_dx = 1.0 / ctx.grid->x.dx();
    for (int c = 0; c < nc; ++c)
        for (int i = 0; i < nx; ++i)
            rhs(c, i, j) = -(w.flux[i + 1][c] - w.flux[i][c]) * inv_dx;
    for (int c = 0; c < nc; ++c) res.net[c] = w.flux[0][c] - w.flux[nx][c];
    return res;
}

LineResult process_y_line(const SweepCtx& ctx, int i, LineWork& w) {
    const CellField& q = *ctx.q;
    const int ny = ctx.grid->y.n_cells;
    const int ng = q.n_ghost();
    const int nc = ctx.phys->euler ? 4 : 1;
    w.line.resize(nc);
    for (auto& l : w.line) l.resize(ny + 2 * ng);
    if (ctx.phys->euler) {
        for (int j = -ng; j < ny + ng; ++j) {
            PrimitiveState pw;
            try {
                pw = cons_to_prim(
                    {q(0, i, j), q(1, i, j), q(2, i, j), q(3, i, j)},
                    ctx.phys->gas);
            } catch (const InvalidStateError& e) {
                throw InvalidStateError(std::string(e.what()) + " at cell (" +
                                        std::to_string(i) + ", " +
                                        std::to_string(j) + ")");
            }
            w.line[0][j + ng] = pw.rho;
            w.line[1][j + ng] = pw.u;
            w.line[2][j + ng] = pw.v;
            w.line[3][j + ng] = pw.p;
        }
    } else {
        for (int j = -ng; j < ny + ng; ++j) w.line[0][j + ng] = q(0, i, j);
    }
    w.views.resize(nc);
    for (int c = 0; c < nc; ++c)
        w.views[c] = LineView{w.line[c].data() + ng, ny, ng};

    LineResult res;
    res.trig = build_interfaces(*ctx.cfg, *ctx.phys, 0.0, 1.0, ctx.periodic_y, w);
    res.fallback = interface_flux(ctx, ny, 0.0, 1.0, ctx.alpha_y, w);
    res.guarded = guard_fluxes(ctx, ny, 0.0, 1.0, ctx.grid->y.dx(), "y", w);

    CellField& rhs = *ctx.rhs;
    const double inv_dy = 1.0 / ctx.grid->y.dx();
    for (int c = 0; c < nc; ++c)
        for (int j = 0; j < ny; ++j)
            rhs(c, i, j) -= (w.flux[j + 1][c] - w.flux[j][c]) * inv_dy;
    for (int c = 0; c < nc; ++c) res.net[c] = w.flux[0][c] - w.flux[ny][c];
    return res;
}

// Runs fn over line indices 0..count-1, OpenMP-parallel when requested; the
// serial path is a plain loop kept as the reference implementation.
template <class Fn>
void run_lines(int count, bool parallel, const Fn& fn) {
#ifdef _OPENMP
    if (parallel) {
        std::exception_ptr err = nullptr;
        std::atomic<bool> failed{false};
#pragma omp parallel
        {
            LineWork w;
#pragma omp for schedule(static)
            for (int i = 0; i < count; ++i) {
                if (failed.load(std::memory_order_relaxed)) continue;
                try {
                    fn(i, w);
                } catch (...) {
                    failed.store(true, std::memory_order_relaxed);
#pragma omp critical(hocus_line_error)
                    {
                        if (!err) err = std::current_exception();
                    }
                }
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#else
    (void)parallel;
#endif
    LineWork w;
    for (int i = 0; i < count; ++i) fn(i, w);
}

} // namespace

RhsStats compute_rhs(CellField& q, CellField& rhs, const Grid2D& grid,
                     const BoundarySpec& bc, const Physics& phys,
                     const SchemeConfig& cfg, double t, double dt) {
    fill_ghosts(q, grid, bc, phys.gas, phys.euler, t);
    const int nx = grid.x.n_cells;
    const int ny = grid.y.n_cells;

    SweepCtx ctx{&grid, &phys, &cfg, &q, &rhs, 0.0, 0.0};
    ctx.dt = dt;
    ctx.split = ny > 1 ? 4 : 2;
    ctx.periodic_x = bc.x_lo.type == BcType::periodic &&
                     bc.x_hi.type == BcType::periodic;
    ctx.periodic_y = bc.y_lo.type == BcType::periodic &&
                     bc.y_hi.type == BcType::periodic;
    if (phys.euler && cfg.riemann == RiemannSolver::glf) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const PrimitiveState w = cons_to_prim(
                    {q(0, i, j), q(1, i, j), q(2, i, j), q(3, i, j)},
                    phys.gas);
                const double c = sound_speed(w, phys.gas);
                ctx.alpha_x = std::max(ctx.alpha_x, std::abs(w.u) + c);
                ctx.alpha_y = std::max(ctx.alpha_y, std::abs(w.v) + c);
            }
    }

    RhsStats stats;
    {
        std::vector<LineResult> rows(ny);
        run_lines(ny, cfg.parallel,
                  [&](int j, LineWork& w) { rows[j] = process_x_line(ctx, j, w); });
        const double dy = grid.y.dx();
        for (int j = 0; j < ny; ++j) {
            stats.triggered += rows[j].trig;
            stats.fallback += rows[j].fallback;
            stats.guarded += rows[j].guarded;
            for (int c = 0; c < 4; ++c)
                stats.boundary_net[c] += dy * rows[j].net[c];
        }
    }
    if (ny > 1) {
        std::vector<LineResult> cols(nx);
        run_lines(nx, cfg.parallel,
                  [&](int i, LineWork& w) { cols[i] = process_y_line(ctx, i, w); });
        const double dx = grid.x.dx();
        for (int i = 0; i < nx; ++i) {
            stats.triggered += cols[i].trig;
            stats.fallback += cols[i].fallback;
            stats.guarded += cols[i].guarded;
            for (int c = 0; c < 4; ++c)
                stats.boundary_net[c] += dx * cols[i].net[c];
        }
    }

    if (phys.source) {
        const double cell = grid.x.dx() * grid.y.dx();
        const int nc = phys.euler ? 4 : 1;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                PrimitiveState w;
                if (phys.euler)
                    w = cons_to_prim(
                        {q(0, i, j), q(1, i, j), q(2, i, j), q(3, i, j)},
                        phys.gas);
                else
                    w.rho = q(0, i, j);
                const std::array<double, 4> s =
                    phys.source(grid.x.center(i), grid.y.center(j), w);
                for (int c = 0; c < nc; ++c) {
                    rhs(c, i, j) += s[c];
                    stats.source_net[c] += s[c] * cell;
                }
            }
    }
    return stats;
}

double compute_dt(const CellField& q, const Grid2D& grid, const Physics& phys,
                  double cfl) {
    const int nx = grid.x.n_cells;
    const int ny = grid.y.n_cells;
    const double dx = grid.x.dx();
    const double dy = grid.y.dx();
    double dt = std::numeric_limits<double>::max();
    if (phys.euler) {
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const PrimitiveState w = cons_to_prim(
                    {q(0, i, j), q(1, i, j), q(2, i, j), q(3, i, j)},
                    phys.gas);
                const double c = sound_speed(w, phys.gas);
                dt = std::min(dt, dx / (std::abs(w.u) + c));
                if (ny > 1) dt = std::min(dt, dy / (std::abs(w.v) + c));
            }
    } else {
        dt = dx; // unit advection speed
        if (ny > 1) dt = std::min(dt, dy);
    }
    return cfl * dt;
}

StepStats rk3_step(CellField& q, CellField& q1, CellField& q2, CellField& rhs,
                   const Grid2D& grid, const BoundarySpec& bc,
                   const Physics& phys, const SchemeConfig& cfg, double t,
                   double dt) {
    const int nx = grid.x.n_cells;
    const int ny = grid.y.n_cells;
    const int nc = q.n_comp();

    // Each stage is a forward-Euler update of size dt inside a convex
    // combination, so passing the full dt arms the guard for exactly the
    // update each stage applies.
    const RhsStats s0 = compute_rhs(q, rhs, grid, bc, phys, cfg, t, dt);
    for (int c = 0; c < nc; ++c)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                q1(c, i, j) = q(c, i, j) + dt * rhs(c, i, j);

    const RhsStats s1 = compute_rhs(q1, rhs, grid, bc, phys, cfg, t + dt, dt);
    for (int c = 0; c < nc; ++c)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                q2(c, i, j) = 0.75 * q(c, i, j) + 0.25 * q1(c, i, j) +
                              0.25 * dt * rhs(c, i, j);

    const RhsStats s2 =
        compute_rhs(q2, rhs, grid, bc, phys, cfg, t + 0.5 * dt, dt);
    for (int c = 0; c < nc; ++c)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                q(c, i, j) = (1.0 / 3.0) * q(c, i, j) +
                             (2.0 / 3.0) * q2(c, i, j) +
                             (2.0 / 3.0) * dt * rhs(c, i, j);

    StepStats out;
    out.triggered = s0.triggered + s1.triggered + s2.triggered;
    out.fallback = s0.fallback + s1.fallback + s2.fallback;
    out.guarded = s0.guarded + s1.guarded + s2.guarded;
    for (int c = 0; c < 4; ++c)
        out.weighted_net[c] =
            (s0.boundary_net[c] + s0.source_net[c]) / 6.0 +
            (s1.boundary_net[c] + s1.source_net[c]) / 6.0 +
            (s2.boundary_net[c] + s2.source_net[c]) * (2.0 / 3.0);
    return out;
}

RunReport run_simulation(CellField& q, const Grid2D& grid,
                         const BoundarySpec& bc, const Physics& phys,
                         const SchemeConfig& cfg, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    const double cell = grid.x.dx() * grid.y.dx();
    const int nc = q.n_comp();
    for (int c = 0; c < nc; ++c)
        rep.initial_total[c] = q.interior_sum(c) * cell;

    CellField q1 = q, q2 = q, rhs = q;
    double t = 0.0;
    while (rep.steps < opt.max_steps) {
        const double remaining = opt.t_end - t;
        if (remaining <= opt.t_end * 1e-14) break;
        double dt = opt.fixed_dt > 0.0 ? opt.fixed_dt
                                       : compute_dt(q, grid, phys, cfg.cfl);
        if (dt > remaining) dt = remaining;
        const StepStats st =
            rk3_step(q, q1, q2, rhs, grid, bc, phys, cfg, t, dt);
        for (int c = 0; c < 4; ++c)
            rep.accumulated_net[c] += dt * st.weighted_net[c];
        rep.triggered_total += st.triggered;
        if (rep.steps > 0) rep.triggered_after_first_step += st.triggered;
        rep.fallback_total += st.fallback;
        rep.guarded_total += st.guarded;
        t += dt;
        ++rep.steps;
        if (opt.snapshot_every > 0 && opt.snapshot &&
            rep.steps % opt.snapshot_every == 0)
            opt.snapshot(q, t, rep.steps);
    }
    rep.end_time = t;
    for (int c = 0; c < nc; ++c) rep.final_total[c] = q.interior_sum(c) * cell;
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
}

} // namespace hocus
