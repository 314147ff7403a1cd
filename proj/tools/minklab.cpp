// minklab: run verification suites and write demo data for external plotting.
//
//   minklab --suite all --seed 1 [--config FILE] [--grid 41x41] [--out report.json] [--json|--csv]
//   minklab demo fig2 --grid 61x61 --out-dir out/
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage or I/O error.

#include "minklab/kinematics.hpp"
#include "minklab/lattice.hpp"
#include "minklab/projective.hpp"
#include "minklab/rigid.hpp"
#include "minklab/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace minklab;

namespace {

constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush())
        throw UsageError("cannot write " + path.string());
}

void emit(const std::string& out, const std::string& text)
{
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
}

std::string num(double x)
{
    std::ostringstream s;
    s.precision(15);
    s << x;
    return s.str();
}

struct DemoOptions
{
    std::string name;
    std::string out_dir = ".";
    std::string grid = "61x61";
    double x0_min = 1.0, x0_max = 2.0, v_final = 0.5, c = 1.0, kappa = 1.0, R = 10.0;
    int rods = 5, steps = 50;
    std::vector<double> sigmas{0.0, 1.0, 2.0};
    std::vector<double> radii{0.1, 0.3, 0.5, 0.7};
};

// Born-rigid rod: every point accelerates along its own hyperbola until the rod reaches v_final.
void demo_rindler(const DemoOptions& o)
{
    if (!(o.x0_min > 0.0 && o.x0_max >= o.x0_min) || o.rods < 1 || o.steps < 1)
        throw PreconditionError("rindler: need 0 < x0-min <= x0-max, rods >= 1, steps >= 1");
    const double lambda_end = rapidity(o.v_final, o.c);
    std::string csv = "x0,lambda,tau,ct,x,velocity,accel\n";
    for (int r = 0; r < o.rods; ++r) {
        const double x0 = o.rods == 1 ? o.x0_min : o.x0_min + (o.x0_max - o.x0_min) * r / (o.rods - 1);
        for (int k = 0; k <= o.steps; ++k) {
            const double lambda = lambda_end * k / o.steps, tau = x0 * lambda / o.c;
            const Vec4 e = boost_killing_flow(x0, tau, o.c);
            csv += num(x0) + "," + num(lambda) + "," + num(tau) + "," + num(e[0]) + "," + num(e[1]) + "," +
                   num(o.c * std::tanh(lambda)) + "," + num(o.c * o.c / x0) + "\n";
        }
    }
    write_file(fs::path(o.out_dir) / "rindler.csv", csv);
    std::cout << "rindler: " << o.rods << " rods, eigentime to v=" << o.v_final << " ranges "
              << eigentime_to_velocity(o.x0_min, o.v_final, o.c) << " .. "
              << eigentime_to_velocity(o.x0_max, o.v_final, o.c) << "\n";
}

// Rotating disk: flow lines of d_t + kappa d_phi with the kinematic invariants along each.
void demo_rotating_disk(const DemoOptions& o)
{
    const auto f = rotation_killing_field(o.kappa, o.c);
    std::string csv = "rho,t,ct,x,y,z,theta_norm,omega_norm,accel_norm,h_psipsi\n";
    for (double rho : o.radii) {
        if (!(o.kappa * rho < o.c) || !(rho > 0.0))
            throw PreconditionError("rotating-disk: radii must satisfy 0 < kappa rho < c");
        const double period = 2.0 * M_PI / o.kappa;
        for (int k = 0; k <= o.steps; ++k) {
            const double t = period * k / o.steps;
            const Vec4 x(o.c * t, rho * std::cos(o.kappa * t), rho * std::sin(o.kappa * t), 0.0);
            const auto d = kinematic_decomposition(f, x);
            const double b = o.kappa * rho / o.c;
            csv += num(rho) + "," + num(t) + "," + num(x[0]) + "," + num(x[1]) + "," + num(x[2]) + "," + num(x[3]) +
                   "," + num(d.theta_norm()) + "," + num(d.omega_norm()) + "," + num(d.accel_norm()) + "," +
                   num(rho * rho / (1.0 - b * b)) + "\n";
        }
    }
    write_file(fs::path(o.out_dir) / "rotating_disk.csv", csv);
    std::cout << "rotating-disk: " << o.radii.size() << " flow lines\n";
}

void demo_fig2(const DemoOptions& o)
{
    const auto [w, h] = parse_extent(o.grid);
    const GridPtr g = IntegerGrid::from_extent(w, h);
    const Fig2Report r = fig2_counterexample(g);
    const fs::path dir(o.out_dir);
    const std::pair<const char*, const Region*> files[] = {
        {"fig2_a", &r.a}, {"fig2_b", &r.b}, {"fig2_b_prime", &r.b_prime}, {"fig2_a_join_b_prime", &r.a_join_b_prime},
        {"fig2_witness", &r.witness}};
    for (const auto& [stem, reg] : files) {
        write_file(dir / (std::string(stem) + ".json"), region_to_json(*reg, 2) + "\n");
        write_file(dir / (std::string(stem) + ".pbm"), region_to_pbm(*reg));
    }
    nlohmann::ordered_json s;
    s["grid"] = o.grid;
    s["scale"] = r.scale;
    s["witness_size"] = r.witness_size;
    s["causal_orthomodularity_fails"] = r.causal_fails;
    s["chronological_analogue_holds"] = r.chronological_holds;
    s["b_near_boundary"] = r.b_near_boundary;
    std::cout << s.dump(2) << "\n";
}

void demo_fl_slab(const DemoOptions& o)
{
    const double T = o.R / o.c;
    std::string csv = "t,t_image,slab,in_expected_image\n";
    const char* names[] = {"past", "early", "late", "singular"};
    for (int k = 0; k <= 4 * o.steps; ++k) {
        const double t = -2.0 * T + 4.0 * T * k / (4 * o.steps);
        SpaceTimePoint e;
        e.t = t;
        const TimeSlab s = time_slab(o.R, o.c, t);
        if (s == TimeSlab::singular) {
            csv += num(t) + ",,singular,false\n";
            continue;
        }
        const double ti = deformation_phi(o.R, o.c, e).t;
        csv += num(t) + "," + num(ti) + "," + names[static_cast<int>(s)] + "," +
               (in_expected_image(s, o.R, o.c, ti) ? "true" : "false") + "\n";
    }
    write_file(fs::path(o.out_dir) / "fl_slab.csv", csv);
    std::cout << "fl-slab: R=" << o.R << ", singular time R/c=" << T << "\n";
}

void demo_image_lines(const DemoOptions& o)
{
    const auto rep = parallelism_breaking_demo(o.sigmas);
    std::string csv = "sigma,dir_s,dir_x,max_s_deviation\n";
    for (const auto& l : rep.lines)
        csv += num(l.sigma) + "," + num(l.direction[0]) + "," + num(l.direction[1]) + "," + num(l.max_s_deviation) +
               "\n";
    write_file(fs::path(o.out_dir) / "image_lines.csv", csv);
    std::cout << csv;
}

int run_demo(const DemoOptions& o)
{
    fs::create_directories(o.out_dir);
    if (o.name == "rindler")
        demo_rindler(o);
    else if (o.name == "rotating-disk")
        demo_rotating_disk(o);
    else if (o.name == "fig2")
        demo_fig2(o);
    else if (o.name == "fl-slab")
        demo_fl_slab(o);
    else if (o.name == "image-lines")
        demo_image_lines(o);
    else
        throw UsageError("unknown demo '" + o.name + "'");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minkowski-space verification toolkit"};
    std::string suite, config_path, out, grid;
    unsigned long long seed = 1;
    bool as_json = false, as_csv = false;
    app.add_option("--suite", suite, "suite to run: core, isometry, kinematics, projective, simultaneity, lattice, "
                                     "rigid, all");
    app.add_option("--seed", seed, "random seed")->capture_default_str();
    app.add_option("--config", config_path, "key=value file with tolerances, steps and sample counts");
    app.add_option("--out", out, "report path (default: stdout)");
    app.add_option("--grid", grid, "lattice grid extent WxH");
    auto* fj = app.add_flag("--json", as_json, "JSON report (default)");
    auto* fc = app.add_flag("--csv", as_csv, "CSV report");
    fj->excludes(fc);

    DemoOptions demo;
    auto* d = app.add_subcommand("demo", "write demo data: rindler, rotating-disk, fig2, fl-slab, image-lines");
    d->add_option("name", demo.name)->required();
    d->add_option("--out-dir", demo.out_dir)->capture_default_str();
    d->add_option("--grid", demo.grid)->capture_default_str();
    d->add_option("--x0-min", demo.x0_min)->capture_default_str();
    d->add_option("--x0-max", demo.x0_max)->capture_default_str();
    d->add_option("--v-final", demo.v_final)->capture_default_str();
    d->add_option("--rods", demo.rods)->capture_default_str();
    d->add_option("--steps", demo.steps)->capture_default_str();
    d->add_option("--kappa", demo.kappa)->capture_default_str();
    d->add_option("--radii", demo.radii)->delimiter(',');
    d->add_option("--sigmas", demo.sigmas)->delimiter(',');
    d->add_option("-R,--radius", demo.R, "Fock-Lorentz length scale")->capture_default_str();
    d->add_option("-c,--speed", demo.c, "invariant speed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*d)
            return run_demo(demo);

        if (suite.empty()) {
            std::cerr << "minklab: --suite is required (or use the demo subcommand)\n";
            return exit_usage;
        }
        if (!known_suite(suite)) {
            std::cerr << "minklab: unknown suite '" << suite << "'\n";
            return exit_usage;
        }
        SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : SuiteConfig::load(config_path);
        if (!grid.empty()) {
            parse_extent(grid);
            cfg.set("grid", grid);
        }
        const SuiteReport rep = run_suite(suite, seed, cfg);
        emit(out, as_csv ? rep.to_csv() : rep.to_json());
        if (!out.empty() && out != "-")
            std::cerr << suite << ": " << (rep.passed() ? "pass" : "FAIL") << " (" << rep.checks.size()
                      << " checks)\n";
        return rep.passed() ? 0 : exit_fail;
    } catch (const UsageError& e) {
        std::cerr << "minklab: " << e.what() << "\n";
        return exit_usage;
    } catch (const PreconditionError& e) {
        std::cerr << "minklab: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "minklab: error: " << e.what() << "\n";
        return exit_usage;
    }
}
