#include "hocus/cases.hpp"

#include <algorithm>
#include <cmath>

#include "hocus/exact_riemann.hpp"

namespace hocus {

namespace {

const double pi = std::acos(-1.0);

BoundaryCondition bc_of(BcType t) { return BoundaryCondition{t, {}, {}}; }

BoundaryCondition bc_fixed(const PrimitiveState& w) {
    return BoundaryCondition{BcType::fixed_state, w, {}};
}

double wrap(double s, double lo, double hi) {
    const double len = hi - lo;
    double r = std::fmod(s - lo, len);
    if (r < 0.0) r += len;
    return lo + r;
}

// Exact solution of a single Riemann problem centred at x0, sampled per point.
std::function<PrimitiveState(double, double, double)>
riemann_reference(PrimitiveState l, PrimitiveState r, double x0, GasModel gas) {
    return [=](double x, double, double t) -> PrimitiveState {
        if (t <= 0.0) return x < x0 ? l : r;
        const RiemannSolution sol = solve_riemann(l, r, gas);
        return sample_riemann(l, r, sol, (x - x0) / t, gas);
    };
}

CaseSpec scalar_periodic(const std::string& name, double x_min, double x_max,
                         double t_end, int n,
                         std::function<double(double)> profile) {
    CaseSpec cs;
    cs.name = name;
    cs.euler = false;
    cs.dim = 1;
    cs.x_min = x_min;
    cs.x_max = x_max;
    cs.default_nx = n;
    cs.t_end = t_end;
    cs.cfl = 0.4;
    cs.bc.x_lo = bc_of(BcType::periodic);
    cs.bc.x_hi = bc_of(BcType::periodic);
    cs.initial = [profile](double x, double) {
        return PrimitiveState{profile(x), 0.0, 0.0, 0.0};
    };
    cs.exact = [profile, x_min, x_max](double x, double, double t) {
        return PrimitiveState{profile(wrap(x - t, x_min, x_max)), 0.0, 0.0, 0.0};
    };
    return cs;
}

CaseSpec shock_tube(const std::string& name, double x_min, double x_max,
                    double split, PrimitiveState l, PrimitiveState r,
                    double t_end, int n, double gamma) {
    CaseSpec cs;
    cs.name = name;
    cs.dim = 1;
    cs.gas.gamma = gamma;
    cs.x_min = x_min;
    cs.x_max = x_max;
    cs.default_nx = n;
    cs.t_end = t_end;
    cs.bc.x_lo = bc_of(BcType::zero_gradient);
    cs.bc.x_hi = bc_of(BcType::zero_gradient);
    cs.initial = [=](double x, double) { return x < split ? l : r; };
    cs.exact = riemann_reference(l, r, split, cs.gas);
    return cs;
}

} // namespace

CaseSpec make_case(const std::string& name) {
    if (name == "advection_complex") {
        CaseSpec cs = scalar_periodic(name, -1.0, 1.0, 2.0, 200, [](double x) {
            if (x >= -0.8 && x <= -0.6)
                return std::exp(-std::log(2.0) * (x + 0.7) * (x + 0.7) / 0.0009);
            if (x >= -0.4 && x <= -0.2) return 1.0;
            if (x >= 0.0 && x <= 0.2) return 1.0 - std::abs(10.0 * (x - 0.1));
            if (x >= 0.4 && x <= 0.6)
                return std::sqrt(
                    std::max(0.0, 1.0 - 100.0 * (x - 0.5) * (x - 0.5)));
            return 0.0;
        });
        cs.cfl = 0.1;
        return cs;
    }
    if (name == "gaussian_advect")
        return scalar_periodic(name, 0.0, 1.0, 1.0, 100, [](double x) {
            return std::exp(-300.0 * (x - 0.5) * (x - 0.5));
        });
    if (name == "henrick_critical")
        return scalar_periodic(name, -1.0, 1.0, 8.0, 80, [](double x) {
            return std::sin(pi * x - std::sin(pi * x) / pi);
        });

    if (name == "titarev_toro" || name == "titarev_toro2") {
        const double freq = name == "titarev_toro" ? 20.0 : 10.0;
        CaseSpec cs;
        cs.name = name;
        cs.dim = 1;
        cs.x_min = -5.0;
        cs.x_max = 5.0;
        cs.default_nx = name == "titarev_toro" ? 1000 : 400;
        cs.reference_nx = name == "titarev_toro" ? 3000 : 1600;
        cs.t_end = 5.0;
        cs.bc.x_lo = bc_of(BcType::zero_gradient);
        cs.bc.x_hi = bc_of(BcType::zero_gradient);
        cs.initial = [freq](double x, double) {
            if (x < -4.5) return PrimitiveState{1.515695, 0.523326, 0.0, 1.805};
            return PrimitiveState{1.0 + 0.1 * std::sin(freq * pi * x), 0.0, 0.0,
                                  1.0};
        };
        return cs;
    }
    if (name == "sod")
        return shock_tube(name, 0.0, 1.0, 0.5, {0.125, 0.0, 0.0, 0.1},
                          {1.0, 0.0, 0.0, 1.0}, 0.2, 100, 1.4);
    if (name == "lax")
        return shock_tube(name, 0.0, 1.0, 0.5, {0.445, 0.698, 0.0, 3.528},
                          {0.5, 0.0, 0.0, 0.571}, 0.14, 200, 1.4);
    if (name == "le_blanc")
        return shock_tube(name, 0.0, 9.0, 3.0, {1.0, 0.0, 0.0, 2.0 / 3.0 * 1e-1},
                          {1e-3, 0.0, 0.0, 2.0 / 3.0 * 1e-10}, 6.0, 200,
                          5.0 / 3.0);
    if (name == "shu_osher") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 1;
        cs.x_min = -5.0;
        cs.x_max = 5.0;
        cs.default_nx = 300;
        cs.reference_nx = 1600;
        cs.t_end = 1.8;
        cs.bc.x_lo = bc_of(BcType::zero_gradient);
        cs.bc.x_hi = bc_of(BcType::zero_gradient);
        cs.initial = [](double x, double) {
            if (x < -4.0)
                return PrimitiveState{3.857143, 2.629369, 0.0, 10.3333};
            return PrimitiveState{1.0 + 0.2 * std::sin(5.0 * x), 0.0, 0.0, 1.0};
        };
        return cs;
    }
    if (name == "blast_waves") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 1;
        cs.default_nx = 400;
        cs.reference_nx = 1600;
        cs.t_end = 0.038;
        cs.bc.x_lo = bc_of(BcType::reflective);
        cs.bc.x_hi = bc_of(BcType::reflective);
        cs.initial = [](double x, double) {
            double p = 0.01;
            if (x < 0.1) p = 1000.0;
            else if (x >= 0.9) p = 100.0;
            return PrimitiveState{1.0, 0.0, 0.0, p};
        };
        return cs;
    }

    if (name == "explosion_2d") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.x_max = 2.0;
        cs.y_max = 2.0;
        cs.default_nx = 400;
        cs.default_ny = 400;
        cs.reference_nx = 1000;
        cs.t_end = 0.25;
        cs.bc.x_lo = cs.bc.x_hi = cs.bc.y_lo = cs.bc.y_hi =
            bc_of(BcType::zero_gradient);
        cs.initial = [](double x, double y) {
            const double r2 = (x - 1.0) * (x - 1.0) + (y - 1.0) * (y - 1.0);
            if (r2 < 0.16) return PrimitiveState{1.0, 0.0, 0.0, 1.0};
            return PrimitiveState{0.125, 0.0, 0.0, 0.1};
        };
        return cs;
    }
    if (name == "euler2d_smooth") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.x_min = -pi;
        cs.x_max = pi;
        cs.y_min = -pi;
        cs.y_max = pi;
        cs.default_nx = 80;
        cs.default_ny = 80;
        cs.t_end = 2.0;
        cs.bc.x_lo = cs.bc.x_hi = cs.bc.y_lo = cs.bc.y_hi =
            bc_of(BcType::periodic);
        cs.initial = [](double x, double y) {
            return PrimitiveState{1.0 + 0.5 * std::sin(x + y), 1.0, 1.0, 1.0};
        };
        cs.exact = [](double x, double y, double t) {
            return PrimitiveState{1.0 + 0.5 * std::sin(x + y - 2.0 * t), 1.0,
                                  1.0, 1.0};
        };
        return cs;
    }
    if (name == "riemann2d_config3") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.default_nx = 400;
        cs.default_ny = 400;
        cs.t_end = 0.8;
        cs.bc.x_lo = cs.bc.x_hi = cs.bc.y_lo = cs.bc.y_hi =
            bc_of(BcType::zero_gradient);
        cs.initial = [](double x, double y) {
            const double q = 4.0 / std::sqrt(11.0);
            if (x > 0.8 && y > 0.8) return PrimitiveState{1.5, 0.0, 0.0, 1.5};
            if (x <= 0.8 && y > 0.8)
                return PrimitiveState{33.0 / 62.0, q, 0.0, 0.3};
            if (x <= 0.8 && y <= 0.8)
                return PrimitiveState{77.0 / 558.0, q, q, 9.0 / 310.0};
            return PrimitiveState{33.0 / 62.0, 0.0, q, 0.3};
        };
        return cs;
    }
    if (name == "shock_entropy_2d") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.x_min = -5.0;
        cs.x_max = 5.0;
        cs.y_min = -1.0;
        cs.y_max = 1.0;
        cs.default_nx = 400;
        cs.default_ny = 80;
        cs.reference_nx = 1600;
        cs.t_end = 1.8;
        cs.bc.x_lo = cs.bc.x_hi = cs.bc.y_lo = cs.bc.y_hi =
            bc_of(BcType::zero_gradient);
        cs.initial = [](double x, double y) {
            if (x < -4.0)
                return PrimitiveState{3.857143, 2.629369, 0.0, 10.3333};
            const double theta = pi / 6.0;
            const double rho =
                1.0 + 0.2 * std::sin(10.0 * x * std::cos(theta) +
                                     10.0 * y * std::sin(theta));
            return PrimitiveState{rho, 0.0, 0.0, 1.0};
        };
        return cs;
    }
    if (name == "richtmyer_meshkov") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.x_max = 4.0;
        cs.default_nx = 320;
        cs.default_ny = 80;
        cs.t_end = 9.0;
        const PrimitiveState heavy{5.04, 0.0, 0.0, 1.0};
        const PrimitiveState light{1.0, 0.0, 0.0, 1.0};
        const PrimitiveState shocked{1.4112, -665.0 / 1556.0, 0.0, 1.628};
        cs.bc.x_lo = bc_fixed(heavy);
        cs.bc.x_hi = bc_fixed(shocked);
        cs.bc.y_lo = bc_of(BcType::periodic);
        cs.bc.y_hi = bc_of(BcType::periodic);
        // Perturbed interface between the heavy and light fluids; a left-moving
        // shock starts at x = 3.2.
        const double amplitude = 0.1, base = 2.9;
        cs.initial = [=](double x, double y) {
            const double x_int =
                base - amplitude * std::sin(2.0 * pi * (y + 0.25));
            if (x < x_int) return heavy;
            if (x < 3.2) return light;
            return shocked;
        };
        return cs;
    }
    if (name == "rayleigh_taylor") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.gas.gamma = 5.0 / 3.0;
        cs.x_max = 0.25;
        cs.default_nx = 80;
        cs.default_ny = 320;
        cs.t_end = 1.95;
        cs.bc.x_lo = bc_of(BcType::reflective);
        cs.bc.x_hi = bc_of(BcType::reflective);
        cs.bc.y_lo = bc_fixed({2.0, 0.0, 0.0, 1.0});
        cs.bc.y_hi = bc_fixed({1.0, 0.0, 0.0, 2.5});
        const double gamma = cs.gas.gamma;
        cs.initial = [gamma](double x, double y) {
            const double rho = y < 0.5 ? 2.0 : 1.0;
            const double p = y < 0.5 ? 2.0 * y + 1.0 : y + 1.5;
            const double c = std::sqrt(gamma * p / rho);
            return PrimitiveState{rho, 0.0,
                                  -0.025 * c * std::cos(8.0 * pi * x), p};
        };
        // Gravity along +y: momentum gains rho, energy gains rho*v.
        cs.source = [](double, double, const PrimitiveState& w) {
            return std::array<double, 4>{0.0, 0.0, w.rho, w.rho * w.v};
        };
        return cs;
    }
    if (name == "shock_bubble") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.x_max = 6.5;
        cs.y_max = 1.78;
        cs.default_nx = 2600; // dx = dy = 0.0025
        cs.default_ny = 712;
        cs.t_end = 3.25;
        const PrimitiveState post{1.3764, -0.3947, 0.0, 1.5698};
        cs.bc.x_lo = bc_of(BcType::zero_gradient);
        cs.bc.x_hi = bc_fixed(post);
        cs.bc.y_lo = bc_of(BcType::reflective);
        cs.bc.y_hi = bc_of(BcType::reflective);
        cs.initial = [post](double x, double y) {
            const double r2 = (x - 3.5) * (x - 3.5) + (y - 0.89) * (y - 0.89);
            if (r2 <= 0.25) return PrimitiveState{0.1819, 0.0, 0.0, 1.0};
            if (x >= 4.5) return post;
            return PrimitiveState{1.0, 0.0, 0.0, 1.0};
        };
        return cs;
    }
    if (name == "double_mach") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.x_max = 4.0;
        cs.default_nx = 1024;
        cs.default_ny = 256;
        cs.t_end = 0.2;
        const PrimitiveState post{8.0, 8.25 * std::cos(pi / 6.0),
                                  -8.25 * std::sin(pi / 6.0), 116.5};
        const PrimitiveState pre{1.4, 0.0, 0.0, 1.0};
        const double x0 = 1.0 / 6.0;
        const double slope = 1.0 / std::tan(pi / 3.0);
        cs.bc.x_lo = bc_fixed(post);
        cs.bc.x_hi = bc_of(BcType::zero_gradient);
        cs.bc.y_lo.type = BcType::time_dependent;
        cs.bc.y_lo.ghost_state =
            [=](double x, double) -> std::optional<PrimitiveState> {
            if (x < x0) return post;
            return std::nullopt; // solid wall from the shock foot onwards
        };
        cs.bc.y_hi.type = BcType::time_dependent;
        cs.bc.y_hi.ghost_state =
            [=](double x, double t) -> std::optional<PrimitiveState> {
            const double x_s = x0 + (1.0 + 20.0 * t) * slope;
            return x < x_s ? post : pre;
        };
        cs.initial = [=](double x, double y) {
            return x < x0 + y * slope ? post : pre;
        };
        return cs;
    }
    if (name == "riemann2d_appendixB") {
        CaseSpec cs;
        cs.name = name;
        cs.dim = 2;
        cs.default_nx = 1000;
        cs.default_ny = 1000;
        cs.t_end = 0.25;
        cs.bc.x_lo = cs.bc.x_hi = cs.bc.y_lo = cs.bc.y_hi =
            bc_of(BcType::zero_gradient);
        cs.initial = [](double x, double y) {
            if (x <= 0.5 && y >= 0.5)
                return PrimitiveState{1.0, -0.6259, 0.1, 1.0};
            if (x < 0.5 && y < 0.5) return PrimitiveState{0.8, 0.1, 0.1, 1.0};
            if (x > 0.5 && y > 0.5)
                return PrimitiveState{0.5197, 0.1, 0.1, 0.4};
            return PrimitiveState{1.0, 0.1, -0.6259, 1.0};
        };
        return cs;
    }
    throw SolverError("unknown case: " + name);
}

std::vector<std::string> case_names() {
    return {"advection_complex", "gaussian_advect",  "henrick_critical",
            "titarev_toro",      "titarev_toro2",    "sod",
            "lax",               "le_blanc",         "shu_osher",
            "blast_waves",       "explosion_2d",     "euler2d_smooth",
            "riemann2d_config3", "shock_entropy_2d", "richtmyer_meshkov",
            "rayleigh_taylor",   "shock_bubble",     "double_mach",
            "riemann2d_appendixB"};
}

Grid2D make_grid(const CaseSpec& cs, int nx, int ny) {
    Grid2D g;
    g.x = Grid1D{cs.x_min, cs.x_max, nx > 0 ? nx : cs.default_nx, 3};
    if (cs.dim == 2)
        g.y = Grid1D{cs.y_min, cs.y_max, ny > 0 ? ny : cs.default_ny, 3};
    else
        g.y = Grid1D{0.0, 1.0, 1, 3};
    return g;
}

CellField init_field(const CaseSpec& cs, const Grid2D& grid) {
    const int nx = grid.x.n_cells;
    const int ny = grid.y.n_cells;
    CellField f(cs.euler ? 4 : 1, nx, ny, grid.x.n_ghost);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const PrimitiveState w =
                cs.initial(grid.x.center(i), grid.y.center(j));
            if (cs.euler) {
                const ConservativeState u = prim_to_cons(w, cs.gas);
                f(0, i, j) = u.rho;
                f(1, i, j) = u.mx;
                f(2, i, j) = u.my;
                f(3, i, j) = u.E;
            } else {
                f(0, i, j) = w.rho;
            }
        }
    return f;
}

Physics make_physics(const CaseSpec& cs) {
    Physics p;
    p.euler = cs.euler;
    p.gas = cs.gas;
    p.source = cs.source;
    return p;
}

ReferenceRun run_reference(const CaseSpec& cs, double t_end, bool parallel) {
    if (cs.reference_nx <= 0)
        throw SolverError("case has no fine-grid reference recipe: " +
                          cs.name);
    const int ny =
        cs.dim == 2 ? cs.reference_nx * cs.default_ny / cs.default_nx : 0;
    ReferenceRun ref;
    ref.grid = make_grid(cs, cs.reference_nx, ny);
    ref.field = init_field(cs, ref.grid);
    SchemeConfig cfg;
    cfg.scheme = Scheme::weno_z;
    cfg.riemann = RiemannSolver::hllc;
    cfg.cfl = cs.cfl;
    cfg.parallel = parallel;
    RunOptions opt;
    opt.t_end = t_end;
    run_simulation(ref.field, ref.grid, cs.bc, make_physics(cs), cfg, opt);
    return ref;
}

double sample_density(const ReferenceRun& ref, double x, double y) {
    auto locate = [](const Grid1D& g, double pos, int& i0) {
        if (g.n_cells == 1) {
            i0 = 0;
            return 0.0;
        }
        double s = (pos - g.center(0)) / g.dx();
        if (s < 0.0) s = 0.0;
        if (s > g.n_cells - 1.0) s = g.n_cells - 1.0;
        i0 = std::min(static_cast<int>(s), g.n_cells - 2);
        return s - i0;
    };
    int i0 = 0, j0 = 0;
    const double fx = locate(ref.grid.x, x, i0);
    const double fy = locate(ref.grid.y, y, j0);
    const CellField& q = ref.field;
    const double v00 = q(0, i0, j0);
    const double v10 = fx > 0.0 ? q(0, i0 + 1, j0) : v00;
    const double v01 = fy > 0.0 ? q(0, i0, j0 + 1) : v00;
    const double v11 = fx > 0.0 ? (fy > 0.0 ? q(0, i0 + 1, j0 + 1) : v10) : v01;
    return (1.0 - fx) * (1.0 - fy) * v00 + fx * (1.0 - fy) * v10 +
           (1.0 - fx) * fy * v01 + fx * fy * v11;
}

double convergence_error(const CaseSpec& cs, const CellField& q,
                         const Grid2D& grid, double t) {
    if (!cs.exact) throw SolverError("case has no exact solution: " + cs.name);
    if (!cs.euler)
        return l1_error(q, 0, grid, [&](double x, double y) {
            return cs.exact(x, y, t).rho;
        });
    double total = 0.0;
    for (int c = 0; c < 4; ++c)
        total += l1_error(q, c, grid, [&](double x, double y) {
            const ConservativeState u = prim_to_cons(cs.exact(x, y, t), cs.gas);
            return c == 0 ? u.rho : c == 1 ? u.mx : c == 2 ? u.my : u.E;
        });
    return total;
}

} // namespace hocus
