#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "hocus/cases.hpp"
#include "hocus/integrator.hpp"
#include "hocus/output.hpp"

namespace {

using nlohmann::json;
using namespace hocus;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string case_name;
    std::string scheme = "hocus6";
    std::string riemann = "hllc";
    int nx = 0, ny = 0; // 0 = case default
    double cfl = -1.0;
    double t_end = -1.0;
    double alpha = -1.0;
    std::string out = "out";
    std::string report;
    long snapshot_every = 0;
    bool serial = false;
};

void add_common_flags(CLI::App* sub, RunConfig& rc, std::string& config_path) {
    sub->add_option("--case", rc.case_name, "benchmark case name");
    sub->add_option("--scheme", rc.scheme, "reconstruction scheme");
    sub->add_option("--nx", rc.nx, "cells in x (0 = case default)");
    sub->add_option("--ny", rc.ny, "cells in y (0 = case default)");
    sub->add_option("--cfl", rc.cfl, "CFL number (negative = case default)");
    sub->add_option("--t-end", rc.t_end, "end time (negative = case default)");
    sub->add_option("--riemann", rc.riemann, "riemann solver: hllc or glf");
    sub->add_option("--alpha", rc.alpha, "MP5 alpha (negative = scheme default)");
    sub->add_option("--out", rc.out, "output directory");
    sub->add_option("--config", config_path, "JSON config file; flags override");
    sub->add_option("--report", rc.report, "write a JSON run report here");
    sub->add_flag("--serial", rc.serial, "use the serial reference sweeps");
}

void merge_json(CLI::App* sub, const std::string& path, RunConfig& rc) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad config JSON: ") + e.what());
    }
    auto take = [&](const char* key, const char* flag, auto& field) {
        if (j.contains(key) && sub->count(flag) == 0) j.at(key).get_to(field);
    };
    take("case", "--case", rc.case_name);
    take("scheme", "--scheme", rc.scheme);
    take("riemann", "--riemann", rc.riemann);
    take("nx", "--nx", rc.nx);
    take("ny", "--ny", rc.ny);
    take("cfl", "--cfl", rc.cfl);
    take("t_end", "--t-end", rc.t_end);
    take("alpha", "--alpha", rc.alpha);
    take("out", "--out", rc.out);
    take("snapshot_every", "--snapshot-every", rc.snapshot_every);
}

struct Setup {
    CaseSpec cs;
    SchemeConfig cfg;
    double t_end = 0.0;
};

// Name lookups happen here so that typos surface as usage errors, not
// numerical ones.
Setup resolve(const RunConfig& rc) {
    if (rc.case_name.empty()) throw UsageError("--case is required");
    Setup s;
    try {
        s.cs = make_case(rc.case_name);
        s.cfg.scheme = scheme_from_string(rc.scheme);
        s.cfg.riemann = riemann_from_string(rc.riemann);
    } catch (const SolverError& e) {
        throw UsageError(e.what());
    }
    s.cfg.cfl = rc.cfl > 0.0 ? rc.cfl : s.cs.cfl;
    s.cfg.alpha = rc.alpha;
    s.cfg.parallel = !rc.serial;
    s.t_end = rc.t_end >= 0.0 ? rc.t_end : s.cs.t_end;
    return s;
}

std::vector<std::string> write_outputs(const CellField& q, const Grid2D& grid,
                                       const CaseSpec& cs,
                                       const std::string& base) {
    std::vector<std::string> files;
    if (grid.y.n_cells == 1) {
        files.push_back(base + ".csv");
        write_csv(files.back(), q, grid, cs.gas, cs.euler);
    } else {
        files.push_back(base + ".vtk");
        write_vtk(files.back(), q, grid, cs.gas, cs.euler);
        files.push_back(base + "_slice.csv");
        write_slice_csv(files.back(), q, grid, cs.gas, cs.euler,
                        grid.y.n_cells / 2);
    }
    return files;
}

std::array<double, 4> drift_rel(const RunReport& rep, int nc) {
    double scale = 0.0;
    for (int c = 0; c < nc; ++c)
        scale = std::max(scale, std::abs(rep.initial_total[c]));
    if (scale <= 0.0) scale = 1.0;
    std::array<double, 4> d{};
    for (int c = 0; c < nc; ++c)
        d[c] = std::abs(rep.final_total[c] - rep.initial_total[c] -
                        rep.accumulated_net[c]) /
               scale;
    return d;
}

int do_run(const RunConfig& rc) {
    Setup s = resolve(rc);
    const Grid2D grid = make_grid(s.cs, rc.nx, rc.ny);
    CellField q = init_field(s.cs, grid);
    const Physics phys = make_physics(s.cs);

    std::filesystem::create_directories(rc.out);
    const std::string base = rc.out + "/" + s.cs.name + "_" + rc.scheme;
    std::vector<std::string> files;

    RunOptions opt;
    opt.t_end = s.t_end;
    opt.snapshot_every = rc.snapshot_every;
    if (rc.snapshot_every > 0)
        opt.snapshot = [&](const CellField& f, double, long step) {
            char suffix[32];
            std::snprintf(suffix, sizeof suffix, "_step%06ld", step);
            for (auto& p : write_outputs(f, grid, s.cs, base + suffix))
                files.push_back(p);
        };

    const RunReport rep = run_simulation(q, grid, s.cs.bc, phys, s.cfg, opt);
    for (auto& p : write_outputs(q, grid, s.cs, base)) files.push_back(p);

    const int nc = q.n_comp();
    const std::array<double, 4> drift = drift_rel(rep, nc);
    double drift_max = 0.0;
    for (int c = 0; c < nc; ++c) drift_max = std::max(drift_max, drift[c]);

    std::printf("case=%s scheme=%s grid=%dx%d cfl=%g riemann=%s\n",
                s.cs.name.c_str(), rc.scheme.c_str(), grid.x.n_cells,
                grid.y.n_cells, s.cfg.cfl, rc.riemann.c_str());
    std::printf("steps=%ld t=%.6g wall=%.3fs drift=%.3e triggered=%lld "
                "fallback=%lld guarded=%lld\n",
                rep.steps, rep.end_time, rep.wall_seconds, drift_max,
                rep.triggered_total, rep.fallback_total, rep.guarded_total);
    for (auto& p : files) std::printf("wrote %s\n", p.c_str());

    if (!rc.report.empty()) {
        json j;
        j["case"] = s.cs.name;
        j["scheme"] = rc.scheme;
        j["riemann"] = rc.riemann;
        j["nx"] = grid.x.n_cells;
        j["ny"] = grid.y.n_cells;
        j["cfl"] = s.cfg.cfl;
        j["t_end"] = s.t_end;
        j["steps"] = rep.steps;
        j["end_time"] = rep.end_time;
        j["wall_seconds"] = rep.wall_seconds;
        j["triggered_cells"] = rep.triggered_total;
        j["fallback_interfaces"] = rep.fallback_total;
        j["guarded_faces"] = rep.guarded_total;
        j["conservation_drift"] =
            std::vector<double>(drift.begin(), drift.begin() + nc);
        j["files"] = files;
        std::ofstream(rc.report) << j.dump(2) << "\n";
    }
    return 0;
}

int do_convergence(const RunConfig& rc, const std::vector<int>& sizes) {
    static const std::set<std::string> allowed = {
        "gaussian_advect", "henrick_critical", "euler2d_smooth"};
    if (!allowed.count(rc.case_name))
        throw UsageError("convergence needs an analytic-reference case: "
                         "gaussian_advect, henrick_critical, euler2d_smooth");
    if (sizes.empty()) throw UsageError("--sizes is required");
    Setup s = resolve(rc);

    std::vector<double> errors;
    for (int n : sizes) {
        if (n < 8) throw UsageError("grid size too small: " + std::to_string(n));
        const Grid2D grid = make_grid(s.cs, n, s.cs.dim == 2 ? n : 1);
        CellField q = init_field(s.cs, grid);
        RunOptions opt;
        opt.t_end = s.t_end;
        opt.fixed_dt = 0.1 * grid.x.dx() * grid.x.dx();
        run_simulation(q, grid, s.cs.bc, make_physics(s.cs), s.cfg, opt);
        errors.push_back(convergence_error(s.cs, q, grid, s.t_end));
    }

    std::filesystem::create_directories(rc.out);
    const std::string path =
        rc.out + "/" + s.cs.name + "_" + rc.scheme + "_convergence.csv";
    std::ofstream csv(path);
    csv << "n,l1,order\n";
    std::printf("%8s %14s %8s\n", "n", "l1", "order");
    std::vector<double> orders;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        char order_buf[16] = "-";
        if (k > 0) {
            const double rate = std::log2(errors[k - 1] / errors[k]) /
                                std::log2(double(sizes[k]) / sizes[k - 1]);
            orders.push_back(rate);
            std::snprintf(order_buf, sizeof order_buf, "%.2f", rate);
        }
        std::printf("%8d %14.6e %8s\n", sizes[k], errors[k], order_buf);
        csv << sizes[k] << "," << std::scientific << errors[k] << ","
            << order_buf << "\n";
    }
    std::printf("wrote %s\n", path.c_str());

    if (!rc.report.empty()) {
        json j;
        j["case"] = s.cs.name;
        j["scheme"] = rc.scheme;
        j["sizes"] = sizes;
        j["l1_errors"] = errors;
        j["orders"] = orders;
        std::ofstream(rc.report) << j.dump(2) << "\n";
    }
    return 0;
}

int do_compare(const RunConfig& rc, const std::vector<std::string>& schemes,
               const std::string& metric) {
    static const std::set<std::string> metrics = {"l1_vs_reference",
                                                  "extrema_count", "slice"};
    if (!metrics.count(metric)) throw UsageError("unknown metric: " + metric);
    if (schemes.empty()) throw UsageError("--schemes is required");
    Setup s = resolve(rc);
    for (const auto& name : schemes)
        try {
            scheme_from_string(name);
        } catch (const SolverError& e) {
            throw UsageError(e.what());
        }

    const Grid2D grid = make_grid(s.cs, rc.nx, rc.ny);
    const Physics phys = make_physics(s.cs);
    std::filesystem::create_directories(rc.out);

    std::function<double(double, double)> ref_fn;
    std::optional<ReferenceRun> ref;
    if (metric == "l1_vs_reference") {
        const double t = s.t_end;
        if (s.cs.exact) {
            ref_fn = [&s, t](double x, double y) {
                return s.cs.exact(x, y, t).rho;
            };
        } else if (s.cs.reference_nx > 0) {
            std::printf("computing WENO-Z reference at nx=%d...\n",
                        s.cs.reference_nx);
            ref.emplace(run_reference(s.cs, t, !rc.serial));
            ref_fn = [&ref](double x, double y) {
                return sample_density(*ref, x, y);
            };
        } else {
            throw UsageError("case has no reference solution: " + s.cs.name);
        }
    }

    const char* env = std::getenv("HOCUS_THREADS");
    const int max_threads = env ? std::max(1, std::atoi(env)) : 1;
    const int n_runs = static_cast<int>(schemes.size());
    const int n_threads = std::min(max_threads, n_runs);

    std::vector<CellField> fields(n_runs);
    std::vector<std::exception_ptr> failures(n_runs);
    std::atomic<int> next{0};
    auto worker = [&]() {
        while (true) {
            const int idx = next.fetch_add(1);
            if (idx >= n_runs) break;
            try {
                SchemeConfig cfg = s.cfg;
                cfg.scheme = scheme_from_string(schemes[idx]);
                cfg.parallel = s.cfg.parallel && n_threads == 1;
                CellField q = init_field(s.cs, grid);
                RunOptions opt;
                opt.t_end = s.t_end;
                run_simulation(q, grid, s.cs.bc, phys, cfg, opt);
                fields[idx] = std::move(q);
            } catch (...) {
                failures[idx] = std::current_exception();
            }
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    const std::string path = rc.out + "/" + s.cs.name + "_compare.csv";
    std::ofstream csv(path);
    csv << "scheme,metric,value\n";
    for (int idx = 0; idx < n_runs; ++idx) {
        const CellField& q = fields[idx];
        std::string value;
        if (metric == "l1_vs_reference") {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.15g",
                          l1_error(q, 0, grid, ref_fn));
            value = buf;
        } else if (metric == "extrema_count") {
            const int j = grid.y.n_cells / 2;
            long count = 0;
            for (int i = 1; i < grid.x.n_cells - 1; ++i) {
                const double d1 = q(0, i, j) - q(0, i - 1, j);
                const double d2 = q(0, i + 1, j) - q(0, i, j);
                if (d1 * d2 < 0.0) ++count;
            }
            value = std::to_string(count);
        } else {
            const std::string base =
                rc.out + "/" + s.cs.name + "_" + schemes[idx];
            value = write_outputs(q, grid, s.cs, base).back();
        }
        csv << schemes[idx] << "," << metric << "," << value << "\n";
        std::printf("%-14s %s = %s\n", schemes[idx].c_str(), metric.c_str(),
                    value.c_str());
    }
    std::printf("wrote %s\n", path.c_str());

    if (!rc.report.empty()) {
        json j;
        j["case"] = s.cs.name;
        j["metric"] = metric;
        j["schemes"] = schemes;
        j["table"] = path;
        std::ofstream(rc.report) << j.dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"structured-grid finite-volume solver: scalar advection and "
                 "compressible Euler benchmarks"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string config_path;
    std::vector<int> sizes;
    std::vector<std::string> schemes;
    std::string metric = "l1_vs_reference";

    CLI::App* cmd_run = app.add_subcommand("run", "run one case, write fields");
    add_common_flags(cmd_run, rc, config_path);
    cmd_run->add_option("--snapshot-every", rc.snapshot_every,
                        "write outputs every k steps");

    CLI::App* cmd_conv =
        app.add_subcommand("convergence", "grid-refinement study (dt = 0.1 dx^2)");
    add_common_flags(cmd_conv, rc, config_path);
    cmd_conv->add_option("--sizes", sizes, "grid sizes, e.g. 40,80,160")
        ->delimiter(',');

    CLI::App* cmd_cmp =
        app.add_subcommand("compare", "run several schemes on one case");
    add_common_flags(cmd_cmp, rc, config_path);
    cmd_cmp->add_option("--schemes", schemes, "schemes to compare")
        ->delimiter(',');
    cmd_cmp->add_option("--metric", metric,
                        "l1_vs_reference, extrema_count, or slice");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        if (!config_path.empty()) merge_json(active, config_path, rc);
        if (active == cmd_run) return do_run(rc);
        if (active == cmd_conv) return do_convergence(rc, sizes);
        return do_compare(rc, schemes, metric);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
