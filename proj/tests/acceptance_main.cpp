// Acceptance gate for the solver library. Nine checks, one [PASS]/[FAIL]
// line each on stdout, exit code = number of failures. Progress chatter goes
// to stderr so the verdict stays machine-readable.
//
// Every tolerance is written next to the data it guards. The pinned error
// ladders were frozen from reference runs of this code; the factor-of-2
// bands and +-0.35 order windows absorb platform and compiler drift without
// letting a scheme regress by an order of accuracy.
//
// With no arguments all nine checks run (roughly an hour of CPU, dominated
// by the 2d convergence ladder). Numeric arguments select a subset, e.g.
// "acceptance 4 9" while iterating on one criterion.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hocus/cases.hpp"
#include "hocus/exact_riemann.hpp"
#include "hocus/flux.hpp"
#include "hocus/integrator.hpp"
#include "hocus/reconstruction.hpp"

using namespace hocus;

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void note(const std::string& msg) {
        if (!detail.empty()) detail += "; ";
        detail += msg;
    }
    void fail(const std::string& msg) {
        pass = false;
        note(msg);
    }
};

int g_failures = 0;

void report(int idx, const char* name, const Outcome& o) {
    if (!o.pass) ++g_failures;
    std::printf("[%s] criterion %d: %s%s%s\n", o.pass ? "PASS" : "FAIL", idx,
                name, o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
}

void progress(const char* f, ...) {
    va_list ap;
    va_start(ap, f);
    std::vfprintf(stderr, f, ap);
    va_end(ap);
    std::fputc('\n', stderr);
    std::fflush(stderr);
}

struct RunOut {
    Grid2D grid;
    CellField q;
    RunReport rep;
    double l1 = -1.0; // against the case's exact solution, when it has one
};

// fixed_dt > 0 pins the step (convergence ladders); 0 steps by the case CFL.
RunOut run_case(const CaseSpec& cs, Scheme scheme, int nx, int ny,
                double fixed_dt = 0.0) {
    RunOut out;
    out.grid = make_grid(cs, nx, ny);
    out.q = init_field(cs, out.grid);
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.cfl = cs.cfl;
    RunOptions opt;
    opt.t_end = cs.t_end;
    opt.fixed_dt = fixed_dt;
    out.rep = run_simulation(out.q, out.grid, cs.bc, make_physics(cs), cfg, opt);
    if (cs.exact) out.l1 = convergence_error(cs, out.q, out.grid, cs.t_end);
    return out;
}

bool all_finite(const CellField& q) {
    for (int c = 0; c < q.n_comp(); ++c)
        for (int j = 0; j < q.ny(); ++j)
            for (int i = 0; i < q.nx(); ++i)
                if (!std::isfinite(q(c, i, j))) return false;
    return true;
}

void density_range(const CellField& q, double& lo, double& hi) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (int j = 0; j < q.ny(); ++j)
        for (int i = 0; i < q.nx(); ++i) {
            lo = std::min(lo, q(0, i, j));
            hi = std::max(hi, q(0, i, j));
        }
}

// Relative conservation-audit defect: |final - initial - net inflow| scaled
// by the largest initial total. Zero up to roundoff when the bookkeeping and
// the update agree.
double drift_rel(const RunReport& rep, int nc) {
    double scale = 0.0;
    for (int c = 0; c < nc; ++c)
        scale = std::max(scale, std::abs(rep.initial_total[c]));
    if (scale <= 0.0) scale = 1.0;
    double worst = 0.0;
    for (int c = 0; c < nc; ++c)
        worst = std::max(worst,
                         std::abs(rep.final_total[c] - rep.initial_total[c] -
                                  rep.accumulated_net[c]) /
                             scale);
    return worst;
}

// ---------------------------------------------------------------------------
// criterion 1: smooth advection ladder, six schemes, N = 40..320, dt = 0.1dx^2

std::array<long long, 4> g_gauss_h6_trig{}; // reused by criterion 5

void criterion_1() {
    Outcome o;
    struct Row {
        Scheme s;
        const char* name;
        std::array<double, 4> pin; // pinned L1 at N = 40, 80, 160, 320
        double order_lo, order_hi; // finest-pair window; 0 = error check only
    };
    const Row rows[] = {
        {Scheme::mp5, "mp5", {1.04e-2, 1.30e-3, 4.71e-5, 1.51e-6}, 4.62, 5.32},
        {Scheme::weno_z, "weno_z", {1.00e-2, 1.29e-3, 4.71e-5, 1.51e-6}, 0, 0},
        {Scheme::c5, "c5", {4.95e-3, 1.78e-4, 5.13e-6, 1.55e-7}, 4.70, 5.40},
        {Scheme::hocus5, "hocus5", {5.94e-3, 1.82e-4, 5.16e-6, 1.55e-7}, 4.70,
         5.40},
        {Scheme::c6, "c6", {2.45e-3, 3.49e-5, 4.94e-7, 7.19e-9}, 5.75, 6.45},
        {Scheme::hocus6, "hocus6", {3.28e-3, 3.99e-5, 5.98e-7, 1.05e-8}, 5.48,
         6.32},
    };
    const int sizes[4] = {40, 80, 160, 320};
    const CaseSpec cs = make_case("gaussian_advect");
    for (const Row& r : rows) {
        std::array<double, 4> l1{};
        for (int i = 0; i < 4; ++i) {
            Grid2D g = make_grid(cs, sizes[i], 1);
            RunOut run =
                run_case(cs, r.s, sizes[i], 1, 0.1 * g.x.dx() * g.x.dx());
            l1[i] = run.l1;
            if (r.s == Scheme::hocus6)
                g_gauss_h6_trig[i] = run.rep.triggered_after_first_step;
            progress("  [c1] %s n=%d l1=%.6e trig_after=%lld wall=%.1fs",
                     r.name, sizes[i], l1[i],
                     run.rep.triggered_after_first_step, run.rep.wall_seconds);
            if (!(l1[i] > r.pin[i] / 2.0 && l1[i] < r.pin[i] * 2.0))
                o.fail(fmt("%s n=%d l1 %.3e outside factor 2 of %.3e", r.name,
                           sizes[i], l1[i], r.pin[i]));
        }
        if (r.order_lo > 0.0) {
            const double order = std::log2(l1[2] / l1[3]);
            if (!(order >= r.order_lo && order <= r.order_hi))
                o.fail(fmt("%s finest-pair order %.2f outside [%.2f, %.2f]",
                           r.name, order, r.order_lo, r.order_hi));
        }
    }
    report(1, "smooth advection errors and orders match the pinned ladder", o);
}

// ---------------------------------------------------------------------------
// criterion 2: critical-point profile; hybrid schemes must reproduce their
// unlimited base scheme, the explicit schemes must hold design order

void criterion_2() {
    Outcome o;
    const int sizes[4] = {20, 40, 80, 160};
    const CaseSpec cs = make_case("henrick_critical"); // runs to t = 8

    const Scheme schemes[] = {Scheme::hocus5, Scheme::c5, Scheme::weno_z,
                              Scheme::mp5};
    std::array<std::array<double, 4>, 4> l1{};
    for (int s = 0; s < 4; ++s)
        for (int i = 0; i < 4; ++i) {
            Grid2D g = make_grid(cs, sizes[i], 1);
            RunOut run = run_case(cs, schemes[s], sizes[i], 1,
                                  0.1 * g.x.dx() * g.x.dx());
            l1[s][i] = run.l1;
            progress("  [c2] %s n=%d l1=%.6e", to_string(schemes[s]), sizes[i],
                     run.l1);
        }

    // the hybrid must fall back to the unlimited compact scheme here:
    // agreement to 3 significant figures, i.e. 0.5% relative
    for (int i = 0; i < 4; ++i) {
        const double rel = std::abs(l1[0][i] - l1[1][i]) /
                           std::max(l1[1][i], 1e-300);
        if (rel > 5e-3)
            o.fail(fmt("hocus5 %.4e vs c5 %.4e at n=%d (rel %.1e)", l1[0][i],
                       l1[1][i], sizes[i], rel));
    }
    for (int s = 2; s < 4; ++s) {
        const double order = std::log2(l1[s][2] / l1[s][3]);
        if (order < 4.7)
            o.fail(fmt("%s order %.2f < 4.7 at n=160", to_string(schemes[s]),
                       order));
    }

    // gated sixth-order hybrid at t = 2: the extremum gate must keep it on
    // the linear scheme for every resolved grid (n >= 20)
    CaseSpec cs2 = cs;
    cs2.t_end = 2.0;
    for (int i = 0; i < 4; ++i) {
        Grid2D g = make_grid(cs2, sizes[i], 1);
        const double dt = 0.1 * g.x.dx() * g.x.dx();
        const double extra =
            run_case(cs2, Scheme::hocus6_extra, sizes[i], 1, dt).l1;
        const double base = run_case(cs2, Scheme::c6, sizes[i], 1, dt).l1;
        progress("  [c2] n=%d hocus6_extra=%.6e c6=%.6e", sizes[i], extra,
                 base);
        const double rel = std::abs(extra - base) / std::max(base, 1e-300);
        if (rel > 5e-3)
            o.fail(fmt("hocus6_extra %.4e vs c6 %.4e at n=%d (rel %.1e)",
                       extra, base, sizes[i], rel));
    }
    report(2, "critical-point accuracy and hybrid/linear equivalence", o);
}

// ---------------------------------------------------------------------------
// criterion 3: 2d gas-dynamics convergence of the hybrid schemes

std::array<long long, 2> g_euler_h6_trig{}; // reused by criterion 5

void criterion_3() {
    Outcome o;
    const CaseSpec cs = make_case("euler2d_smooth"); // runs to t = 2
    const int sizes[2] = {80, 160};
    double h5[2], h6[2];
    for (int i = 0; i < 2; ++i) {
        Grid2D g = make_grid(cs, sizes[i], sizes[i]);
        const double dt = 0.1 * g.x.dx() * g.x.dx();
        RunOut a = run_case(cs, Scheme::hocus5, sizes[i], sizes[i], dt);
        h5[i] = a.l1;
        progress("  [c3] hocus5 n=%d l1=%.6e wall=%.0fs", sizes[i], h5[i],
                 a.rep.wall_seconds);
        RunOut b = run_case(cs, Scheme::hocus6, sizes[i], sizes[i], dt);
        h6[i] = b.l1;
        g_euler_h6_trig[i] = b.rep.triggered_after_first_step;
        progress("  [c3] hocus6 n=%d l1=%.6e trig_after=%lld wall=%.0fs",
                 sizes[i], h6[i], b.rep.triggered_after_first_step,
                 b.rep.wall_seconds);
    }
    const double o5 = std::log2(h5[0] / h5[1]);
    const double o6 = std::log2(h6[0] / h6[1]);
    if (o6 < 5.5) o.fail(fmt("hocus6 order %.2f < 5.5", o6));
    if (o5 < 5.0) o.fail(fmt("hocus5 order %.2f < 5.0", o5));
    if (!(h6[0] > 1.04e-8 / 2.0 && h6[0] < 1.04e-8 * 2.0))
        o.fail(fmt("hocus6 l1 %.3e at 80^2 outside factor 2 of 1.04e-8",
                   h6[0]));
    if (!(h5[0] > 2.97e-8 / 2.0 && h5[0] < 2.97e-8 * 2.0))
        o.fail(fmt("hocus5 l1 %.3e at 80^2 outside factor 2 of 2.97e-8",
                   h5[0]));
    report(3, "2d smooth-flow convergence reaches design order", o);
}

// ---------------------------------------------------------------------------
// criterion 4: shock-tube robustness under the sixth-order hybrid

void criterion_4() {
    Outcome o;
    struct Tube {
        const char* name;
        int n;
        bool exact_band; // density bounded by sampled exact-solution extrema
    };
    const Tube tubes[] = {{"sod", 100, true},
                          {"lax", 200, true},
                          {"le_blanc", 200, false},
                          {"blast_waves", 400, false}};
    for (const Tube& t : tubes) {
        const CaseSpec cs = make_case(t.name);
        RunOut run;
        try {
            run = run_case(cs, Scheme::hocus6, t.n, 1);
        } catch (const SolverError& e) {
            o.fail(fmt("%s aborted: %s", t.name, e.what()));
            continue;
        }
        if (!all_finite(run.q)) {
            o.fail(fmt("%s produced non-finite values", t.name));
            continue;
        }
        double lo, hi;
        density_range(run.q, lo, hi);
        progress("  [c4] %s steps=%ld rho=[%.10g, %.10g]", t.name,
                 run.rep.steps, lo, hi);

        if (t.exact_band) {
            // extrema of the exact solution, including any star state that
            // tops both initial densities, from a dense self-similar sweep
            const PrimitiveState wl = cs.initial(cs.x_min + 1e-9, 0.0);
            const PrimitiveState wr = cs.initial(cs.x_max - 1e-9, 0.0);
            const RiemannSolution sol = solve_riemann(wl, wr, cs.gas);
            double elo = std::min(wl.rho, wr.rho);
            double ehi = std::max(wl.rho, wr.rho);
            const int m = 2000000;
            for (int k = 0; k <= m; ++k) {
                const double xi = -10.0 + 20.0 * k / m;
                const double rho = sample_riemann(wl, wr, sol, xi, cs.gas).rho;
                elo = std::min(elo, rho);
                ehi = std::max(ehi, rho);
            }
            if (lo < elo - 1e-3 || hi > ehi + 1e-3)
                o.fail(fmt("%s rho [%.6g, %.6g] outside exact band "
                           "[%.6g, %.6g] + 1e-3",
                           t.name, lo, hi, elo, ehi));
        } else if (std::strcmp(t.name, "le_blanc") == 0) {
            // the exact solution never leaves the initial density range, so
            // the run must stay inside it up to 1e-6 relative slack
            const double band_lo = 1e-3 * (1.0 - 1e-6);
            const double band_hi = 1.0 + 1e-6;
            if (lo < band_lo || hi > band_hi)
                o.fail(fmt("le_blanc rho [%.12g, %.12g] outside "
                           "[%.12g, %.12g]",
                           lo, hi, band_lo, band_hi));
        }
    }
    report(4, "shock tubes complete inside exact-solution density bounds", o);
}

// ---------------------------------------------------------------------------
// criterion 5: the hybrid indicator must go quiet on smooth runs once the
// first step has settled (counts collected during criteria 1 and 3)

void criterion_5() {
    Outcome o;
    const int gauss_sizes[4] = {40, 80, 160, 320};
    for (int i = 0; i < 4; ++i)
        if (g_gauss_h6_trig[i] != 0)
            o.fail(fmt("gaussian n=%d: %lld cells after first step",
                       gauss_sizes[i], g_gauss_h6_trig[i]));
    const int euler_sizes[2] = {80, 160};
    for (int i = 0; i < 2; ++i)
        if (g_euler_h6_trig[i] != 0)
            o.fail(fmt("euler2d n=%d^2: %lld cells after first step",
                       euler_sizes[i], g_euler_h6_trig[i]));
    report(5, "hybrid indicator stays quiet on smooth runs", o);
}

// ---------------------------------------------------------------------------
// criterion 6: conservation over a long periodic run

void criterion_6() {
    Outcome o;
    const CaseSpec cs = make_case("euler2d_smooth");
    Grid2D grid = make_grid(cs, 40, 40);
    CellField q = init_field(cs, grid);
    SchemeConfig cfg;
    cfg.cfl = cs.cfl;
    RunOptions opt;
    opt.t_end = 1e30; // step count, not time, ends this run
    opt.max_steps = 1000;
    const RunReport rep =
        run_simulation(q, grid, cs.bc, make_physics(cs), cfg, opt);
    if (rep.steps != 1000) o.fail(fmt("ran %ld steps, wanted 1000", rep.steps));
    const char* names[4] = {"mass", "x-momentum", "y-momentum", "energy"};
    for (int c = 0; c < 4; ++c) {
        const double rel =
            std::abs(rep.final_total[c] - rep.initial_total[c]) /
            std::abs(rep.initial_total[c]);
        progress("  [c6] %s rel drift %.3e", names[c], rel);
        if (!(rel <= 1e-12))
            o.fail(fmt("%s drifted by %.3e relative", names[c], rel));
    }
    report(6, "periodic totals conserved to 1e-12 over 1000 steps", o);
}

// ---------------------------------------------------------------------------
// criterion 7: dissipation ordering on a shock/acoustic interaction and on
// the four-feature advection profile

void criterion_7() {
    Outcome o;
    {
        const CaseSpec cs = make_case("titarev_toro2");
        progress("  [c7] building n=%d reference...", cs.reference_nx);
        const ReferenceRun ref = run_reference(cs, cs.t_end);
        auto l2_density = [&](Scheme s) {
            RunOut run = run_case(cs, s, 400, 1);
            double acc = 0.0;
            for (int i = 0; i < run.grid.x.n_cells; ++i) {
                const double d = run.q(0, i, 0) -
                                 sample_density(ref, run.grid.x.center(i),
                                                run.grid.y.center(0));
                acc += d * d;
            }
            return std::sqrt(acc / run.grid.x.n_cells);
        };
        const double mp5 = l2_density(Scheme::mp5);
        const double h5 = l2_density(Scheme::hocus5);
        const double h6 = l2_density(Scheme::hocus6);
        progress("  [c7] l2(rho): mp5=%.6e hocus5=%.6e hocus6=%.6e", mp5, h5,
                 h6);
        if (!(h6 < h5 && h5 < mp5))
            o.fail(fmt("l2 not ordered: hocus6 %.3e, hocus5 %.3e, mp5 %.3e",
                       h6, h5, mp5));
    }
    {
        const CaseSpec cs = make_case("advection_complex"); // t = 2, one lap
        const double h6 = run_case(cs, Scheme::hocus6, 200, 1).l1;
        const double mp5 = run_case(cs, Scheme::mp5, 200, 1).l1;
        const double wz = run_case(cs, Scheme::weno_z, 200, 1).l1;
        progress("  [c7] l1: hocus6=%.6e mp5=%.6e weno_z=%.6e", h6, mp5, wz);
        if (!(h6 < mp5))
            o.fail(fmt("advection l1: hocus6 %.3e !< mp5 %.3e", h6, mp5));
        if (!(h6 < wz))
            o.fail(fmt("advection l1: hocus6 %.3e !< weno_z %.3e", h6, wz));
    }
    report(7, "hybrid scheme is the least dissipative of its family", o);
}

// ---------------------------------------------------------------------------
// criterion 8: desk-scale 2d benchmarks; stability, conservation audit, and
// the symmetry of the radial explosion stand in for figure comparison

void criterion_8() {
    Outcome o;
    struct Bench {
        const char* name;
        int nx, ny;
    };
    const Bench benches[] = {{"double_mach", 384, 96},
                             {"richtmyer_meshkov", 160, 40},
                             {"rayleigh_taylor", 40, 160},
                             {"shock_bubble", 260, 71},
                             {"explosion_2d", 200, 200}};
    for (const Bench& b : benches) {
        const CaseSpec cs = make_case(b.name);
        RunOut run;
        try {
            run = run_case(cs, Scheme::hocus6, b.nx, b.ny);
        } catch (const SolverError& e) {
            o.fail(fmt("%s aborted: %s", b.name, e.what()));
            continue;
        }
        const double drift = drift_rel(run.rep, run.q.n_comp());
        progress("  [c8] %s steps=%ld wall=%.0fs drift=%.2e guarded=%lld",
                 b.name, run.rep.steps, run.rep.wall_seconds, drift,
                 run.rep.guarded_total);
        if (!all_finite(run.q))
            o.fail(fmt("%s produced non-finite values", b.name));
        if (!(drift <= 1e-11))
            o.fail(fmt("%s conservation drift %.3e > 1e-11", b.name, drift));
        if (std::strcmp(b.name, "explosion_2d") == 0) {
            double asym = 0.0;
            for (int j = 0; j < run.q.ny(); ++j)
                for (int i = 0; i < run.q.nx(); ++i)
                    asym = std::max(
                        asym, std::abs(run.q(0, i, j) - run.q(0, j, i)));
            progress("  [c8] explosion_2d x<->y asymmetry %.3e", asym);
            if (!(asym <= 1e-6))
                o.fail(fmt("explosion_2d asymmetry %.3e > 1e-6", asym));
        }
    }
    const char* slow = std::getenv("HOCUS_SLOW");
    if (slow && std::strcmp(slow, "1") == 0) {
        CaseSpec cs = make_case("advection_complex");
        cs.t_end = 500.0; // 250 laps around the periodic domain
        const RunOut run = run_case(cs, Scheme::hocus6, 400, 1);
        progress("  [c8] t=500 advection l1=%.6e steps=%ld", run.l1,
                 run.rep.steps);
        if (!(run.l1 < 0.1))
            o.fail(fmt("t=500 advection l1 %.3e >= 0.1", run.l1));
    } else {
        o.note("long-time advection check skipped (set HOCUS_SLOW=1)");
    }
    report(8, "desk-scale benchmarks stay stable, conservative, symmetric", o);
}

// ---------------------------------------------------------------------------
// criterion 9: oracles. The interface flux against an independent
// transcription, the compact solve against dense elimination, and the
// iterative star-state solver against its own residual.

PrimitiveState random_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> rho(0.1, 5.0);
    std::uniform_real_distribution<double> vel(-2.0, 2.0);
    std::uniform_real_distribution<double> p(0.05, 10.0);
    return {rho(rng), vel(rng), vel(rng), p(rng)};
}

// Reference HLLC evaluation written directly in global momentum components
// (no rotated-frame intermediate), independent of the library path.
std::array<double, 4> hllc_reference(const PrimitiveState& l,
                                     const PrimitiveState& r, double nx,
                                     double ny, const GasModel& gas) {
    const double g = gas.gamma;
    const auto energy = [&](const PrimitiveState& w) {
        return w.p / (g - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    };
    const auto flux = [&](const PrimitiveState& w) {
        const double un = w.u * nx + w.v * ny;
        return std::array<double, 4>{w.rho * un, w.rho * un * w.u + w.p * nx,
                                     w.rho * un * w.v + w.p * ny,
                                     (energy(w) + w.p) * un};
    };
    const double unl = l.u * nx + l.v * ny;
    const double unr = r.u * nx + r.v * ny;
    const double cl = std::sqrt(g * l.p / l.rho);
    const double cr = std::sqrt(g * r.p / r.rho);

    const double sql = std::sqrt(l.rho), sqr = std::sqrt(r.rho);
    const double hl = (energy(l) + l.p) / l.rho;
    const double hr = (energy(r) + r.p) / r.rho;
    const double ur = (sql * l.u + sqr * r.u) / (sql + sqr);
    const double vr = (sql * l.v + sqr * r.v) / (sql + sqr);
    const double hroe = (sql * hl + sqr * hr) / (sql + sqr);
    const double croe =
        std::sqrt((g - 1.0) * (hroe - 0.5 * (ur * ur + vr * vr)));
    const double unroe = ur * nx + vr * ny;

    const double s_l = std::min(unl - cl, unroe - croe);
    const double s_r = std::max(unr + cr, unroe + croe);
    if (s_l >= 0.0) return flux(l);
    if (s_r <= 0.0) return flux(r);

    const double s_m = (r.p - l.p + l.rho * unl * (s_l - unl) -
                        r.rho * unr * (s_r - unr)) /
                       (l.rho * (s_l - unl) - r.rho * (s_r - unr));
    const PrimitiveState& k = s_m >= 0.0 ? l : r;
    const double s_k = s_m >= 0.0 ? s_l : s_r;
    const double unk = k.u * nx + k.v * ny;
    const double utk = -k.u * ny + k.v * nx;
    const double coef = k.rho * (s_k - unk) / (s_k - s_m);
    const double ek = energy(k);
    const double us = s_m * nx - utk * ny;
    const double vs = s_m * ny + utk * nx;
    const std::array<double, 4> qs{
        coef, coef * us, coef * vs,
        coef * (ek / k.rho +
                (s_m - unk) * (s_m + k.p / (k.rho * (s_k - unk))))};
    const std::array<double, 4> qk{k.rho, k.rho * k.u, k.rho * k.v, ek};
    std::array<double, 4> f = flux(k);
    for (int i = 0; i < 4; ++i) f[i] += s_k * (qs[i] - qk[i]);
    return f;
}

std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
    const int m = static_cast<int>(b.size());
    for (int col = 0; col < m; ++col) {
        int piv = col;
        for (int r = col + 1; r < m; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (int r = col + 1; r < m; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c < m; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(m);
    for (int r = m - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < m; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

void criterion_9() {
    Outcome o;
    const GasModel gas{1.4};

    {
        std::mt19937 rng(424242);
        double worst = 0.0;
        for (int it = 0; it < 1000; ++it) {
            const PrimitiveState l = random_state(rng);
            const PrimitiveState r = random_state(rng);
            const double nx = it % 2 ? 0.0 : 1.0;
            const double ny = 1.0 - nx;
            const FluxVector got = hllc_flux(l, r, nx, ny, gas);
            const auto ref = hllc_reference(l, r, nx, ny, gas);
            for (int c = 0; c < 4; ++c)
                worst = std::max(worst, std::abs(got[c] - ref[c]) /
                                            std::max(1.0, std::abs(ref[c])));
        }
        progress("  [c9] hllc worst scaled deviation %.3e", worst);
        if (!(worst <= 1e-13))
            o.fail(fmt("hllc deviates from transcription by %.3e", worst));
    }

    {
        std::mt19937 rng(515151);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        ReconScratch scratch;
        double worst = 0.0;
        for (int it = 0; it < 20; ++it) {
            const int n = 24;
            std::vector<double> store(n + 6);
            for (int i = -3; i < n + 3; ++i)
                store[i + 3] = std::sin(0.4 * i) + 0.2 * d(rng);
            const LineView u{store.data() + 3, n, 3};
            std::vector<double> left, right;
            reconstruct_c5(u, 4.0, left, right, scratch);

            const int m = n + 1;
            std::vector<std::vector<double>> a(m,
                                               std::vector<double>(m, 0.0));
            std::vector<double> b(m, 0.0);
            a[0][0] = 1.0;
            b[0] = mp5_limit(u[-3], u[-2], u[-1], u[0], u[1], 4.0);
            for (int k = 1; k < n; ++k) {
                a[k][k - 1] = 0.5;
                a[k][k] = 1.0;
                a[k][k + 1] = 1.0 / 6.0;
                b[k] = u[k - 2] / 18.0 + u[k - 1] * (19.0 / 18.0) +
                       u[k] * (5.0 / 9.0);
            }
            a[n][n] = 1.0;
            b[n] = mp5_limit(u[n - 3], u[n - 2], u[n - 1], u[n], u[n + 1],
                             4.0);
            const auto ref = dense_solve(a, b);
            for (int k = 0; k <= n; ++k)
                worst = std::max(worst,
                                 std::abs(left[k] - ref[k]) /
                                     std::max(1.0, std::abs(ref[k])));
        }
        progress("  [c9] compact solve worst deviation %.3e", worst);
        if (!(worst <= 1e-12))
            o.fail(fmt("compact solve deviates from dense solve by %.3e",
                       worst));
    }

    {
        std::mt19937 rng(626262);
        double worst = 0.0;
        int done = 0;
        while (done < 100) {
            const PrimitiveState l = random_state(rng);
            const PrimitiveState r = random_state(rng);
            const double cl = std::sqrt(gas.gamma * l.p / l.rho);
            const double cr = std::sqrt(gas.gamma * r.p / r.rho);
            // skip draws within reach of vacuum, which the solver rejects
            if (2.0 * (cl + cr) / (gas.gamma - 1.0) <= r.u - l.u + 1e-9)
                continue;
            const RiemannSolution sol = solve_riemann(l, r, gas);
            worst = std::max(worst, sol.residual);
            ++done;
        }
        progress("  [c9] star-state worst residual %.3e", worst);
        if (!(worst <= 1e-12))
            o.fail(fmt("star-state residual %.3e > 1e-12", worst));
    }

    report(9, "flux, compact-solve, and star-state oracles agree", o);
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    // criterion 5 reads trigger counts collected during 1 and 3
    if (wanted.count(5) > 0) {
        wanted.insert(1);
        wanted.insert(3);
    }
    const auto on = [&](int k) {
        return wanted.empty() || wanted.count(k) > 0;
    };
    if (on(1)) criterion_1();
    if (on(2)) criterion_2();
    if (on(3)) criterion_3();
    if (on(4)) criterion_4();
    if (on(5)) criterion_5();
    if (on(6)) criterion_6();
    if (on(7)) criterion_7();
    if (on(8)) criterion_8();
    if (on(9)) criterion_9();
    return g_failures;
}
