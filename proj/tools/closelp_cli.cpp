// closelp: reproduction harness (convergence tables, error fields, heatmaps).
#include "config.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace closelp;
using closelp::cli::json;

namespace {

struct Run {
    std::string config_path;
    std::string out = "out";
    int threads = 0;
    bool serial = false;
    bool check = false;
    int example = 0;
    json config;

    const json& section(const char* key) const
    {
        static const json empty = json::object();
        if (config.contains(key))
            return config.at(key);
        return config.is_object() ? config : empty;
    }
    std::string path(const std::string& name) const { return (fs::path(out) / name).string(); }
};

int report(const std::vector<Check>& checks, bool enforce)
{
    bool ok = true;
    for (const auto& c : checks) {
        const char* tag = c.skipped ? "SKIP" : c.pass ? "PASS" : "FAIL";
        std::printf("%s  %s  [%s]\n", tag, c.name.c_str(), c.detail.c_str());
        ok = ok && (c.pass || c.skipped);
    }
    return enforce && !ok ? 2 : 0;
}

void print_table(const std::vector<ConvergenceRow>& rows, const std::vector<std::string>& cases,
                 const std::vector<std::string>& quantities)
{
    std::vector<int> ns;
    for (const auto& r : rows)
        if (std::find(ns.begin(), ns.end(), r.n) == ns.end())
            ns.push_back(r.n);
    std::printf("%6s", "N");
    for (const auto& c : cases)
        for (const auto& q : quantities)
            std::printf(" %16s", (c + ":" + q).c_str());
    std::printf("\n");
    for (int n : ns) {
        std::printf("%6d", n);
        for (const auto& c : cases)
            for (const auto& q : quantities) {
                const auto* r = find_row(rows, n, c, q);
                if (r)
                    std::printf(" %16.2e", r->max_abs_err);
                else
                    std::printf(" %16s", "-");
            }
        std::printf("\n");
    }
}

int cmd_cauchy(const Run& run)
{
    const auto cfg = cli::parse_cauchy(run.section("cauchy"));
    const auto rows = run_cauchy_test(cfg);
    write_cauchy_csv(run.path("cauchy.csv"), rows);
    std::printf("wrote %s (%zu rows)\n", run.path("cauchy.csv").c_str(), rows.size());
    return report(check_cauchy(rows, cfg.ns.back()), run.check);
}

int cmd_laplace_table(const Run& run)
{
    const auto cfg = cli::parse_laplace_table(run.section("laplace_table"));
    const auto rows = run_laplace_table(cfg);
    write_convergence_csv(run.path("laplace_table.csv"), rows);
    print_table(rows, {"DLP_int", "DLP_ext", "SLP_int", "SLP_ext"}, {"u", "grad"});
    return report(check_laplace_table(rows), run.check);
}

int cmd_stokes(const Run& run)
{
    const json& all = run.section("stokes");
    auto sub = [&](const char* key) -> const json& {
        static const json empty = json::object();
        return all.contains(key) ? all.at(key) : empty;
    };
    switch (run.example) {
    case 1: {
        const auto rows = run_stokes_example1(cli::parse_stokes1(sub("example1")));
        write_convergence_csv(run.path("stokes_example1.csv"), rows);
        print_table(rows, {"gap=0.1", "gap=0.01", "gap=0.001"}, {"close", "native"});
        return report(check_stokes_example1(rows), run.check);
    }
    case 2: {
        const auto rows = run_stokes_example2(cli::parse_stokes2(sub("example2")));
        write_convergence_csv(run.path("stokes_example2.csv"), rows);
        print_table(rows, {"aspect=2", "aspect=4", "aspect=8"}, {"close", "native"});
        return report(check_stokes_example2(rows), run.check);
    }
    case 3: {
        const auto r = run_stokes_example3(cli::parse_stokes3(sub("example3")));
        write_convergence_csv(run.path("stokes_example3.csv"), r.rows);
        print_table(r.rows, {"ext_dirichlet", "int_dirichlet", "ext_neumann", "int_neumann"},
                    {"velocity"});
        for (const auto& [name, sup] : r.data_sup) {
            std::printf("boundary data sup norm %-14s %.3f\n", name.c_str(), sup);
            if (sup < 0.1 || sup > 1.0)
                std::fprintf(stderr, "warning: %s data sup norm %.3f outside [0.1, 1]\n",
                             name.c_str(), sup);
        }
        if (r.field) {
            r.field->write_csv(run.path("stokes_example3_field.csv"));
            r.field->write_ppm(run.out, "stokes_example3_field");
        }
        return report(check_stokes_example3(r), run.check);
    }
    case 4: {
        const auto r = run_stokes_example4(cli::parse_stokes4(sub("example4")));
        std::printf("max grid error %.3e, GMRES %d iterations (residual %.2e), min gap %.3e\n",
                    r.max_err, r.iterations, r.gmres_residual, r.min_gap);
        if (r.field) {
            r.field->write_csv(run.path("stokes_example4_field.csv"));
            r.field->write_ppm(run.out, "stokes_example4_field");
        }
        return report(check_stokes_example4(r), run.check);
    }
    default:
        throw InvalidArgument("--example must be 1, 2, 3 or 4");
    }
}

int cmd_grid(const Run& run)
{
    auto cfg = cli::parse_grid_run(run.section("grid"));
    const Curve& curve = cfg.spec.curves[0];
    cfg.reference.check_side(curve, cfg.spec.side);
    cfg.spec.data = {cfg.spec.condition == Condition::dirichlet ? cfg.reference.dirichlet_data(curve)
                                                                : cfg.reference.neumann_data(curve)};
    const auto sol = solve_bvp(cfg.spec);
    std::printf("solve: relative residual %.2e, rank %ld of %zu\n", sol.relative_residual,
                static_cast<long>(sol.rank), sol.density.size());

    const Curve classify = Curve::analytic(cfg.classify_curve);
    const ErrorGrid base(cfg.grid, {&classify}, cfg.spec.side);
    const auto pts = base.active_points();

    std::vector<Check> checks;
    auto emit = [&](const std::string& stem, const std::vector<double>& err, double tol) {
        ErrorGrid g = base;
        g.set_errors(err);
        g.write_csv(run.path(stem + ".csv"));
        const auto ppm = g.write_ppm(run.out, stem, cfg.color_lo, cfg.color_hi);
        std::printf("%-14s max %.2e  -> %s\n", stem.c_str(), g.max_error(), ppm.c_str());
        if (stem.rfind("close", 0) == 0) {
            const double f = g.fraction_at_most(tol);
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: fraction of points <= %.0e is >= %.2f", stem.c_str(),
                          tol, cfg.check_fraction);
            checks.push_back({buf, f >= cfg.check_fraction, std::to_string(f)});
        }
    };
    auto emit_all = [&](const std::string& prefix, const FieldValues& f) {
        const auto e = bvp_field_errors(cfg.spec, f, cfg.reference, pts);
        if (cfg.spec.equation == Equation::laplace) {
            emit(prefix + "_u", e.u, cfg.check_u);
            emit(prefix + "_grad", e.grad, cfg.check_grad);
        } else {
            emit(prefix + "_velocity", e.velocity, cfg.check_velocity);
        }
    };
    emit_all("close", evaluate_solution(cfg.spec, sol.density, pts));
    if (cfg.native)
        emit_all("native", evaluate_solution_native(cfg.spec, sol.density, pts));
    return report(checks, run.check);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"closelp: close evaluation of 2D Laplace and Stokes layer potentials"};
    app.require_subcommand(1);
    Run run;
    auto add_common = [&](CLI::App* a) {
        a->add_option("--config", run.config_path, "JSON run configuration")->check(CLI::ExistingFile);
        a->add_option("--out", run.out, "Output directory for CSV and PPM artifacts");
        a->add_option("--threads", run.threads, "Worker threads (default: all)")->check(CLI::PositiveNumber);
        a->add_flag("--serial", run.serial, "Single thread, deterministic summation order");
        a->add_flag("--check", run.check, "Exit with code 2 when an acceptance threshold is violated");
    };
    add_common(&app);
    auto* cauchy = app.add_subcommand("cauchy", "Cauchy value/derivative distance sweep");
    auto* table = app.add_subcommand("laplace-table", "Laplace BVP convergence table");
    auto* stokes = app.add_subcommand("stokes", "Stokes examples");
    stokes->add_option("--example", run.example, "Example number (1-4)")->required()->check(CLI::Range(1, 4));
    auto* grid = app.add_subcommand("grid", "Error field of a single BVP on a grid");
    for (auto* s : {cauchy, table, stokes, grid})
        add_common(s);

    CLI11_PARSE(app, argc, argv);

    try {
#ifdef _OPENMP
        if (run.serial)
            omp_set_num_threads(1);
        else if (run.threads > 0)
            omp_set_num_threads(run.threads);
#endif
        run.config = cli::load_config(run.config_path);
        fs::create_directories(run.out);

        const auto t0 = std::chrono::steady_clock::now();
        int rc = 0;
        std::string name;
        if (cauchy->parsed()) {
            name = "cauchy";
            rc = cmd_cauchy(run);
        } else if (table->parsed()) {
            name = "laplace-table";
            rc = cmd_laplace_table(run);
        } else if (stokes->parsed()) {
            name = "stokes example " + std::to_string(run.example);
            rc = cmd_stokes(run);
        } else {
            name = "grid";
            rc = cmd_grid(run);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s: %.2f s\n", name.c_str(), secs);
        std::ofstream(run.path("timing.log"), std::ios::app) << name << "," << secs << "\n";
        return rc;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
