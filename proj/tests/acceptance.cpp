// Acceptance suite: one pass/fail line per criterion.
//
//   acceptance [--only N] [--cli path/to/loewner-ito]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "loewner_ito/admissibility.hpp"
#include "loewner_ito/generator.hpp"
#include "loewner_ito/herglotz.hpp"
#include "loewner_ito/ito_transform.hpp"
#include "loewner_ito/loewner_flow.hpp"
#include "oracles.hpp"

using namespace loewner_ito;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s; // <= 0: no stated limit
    std::function<Outcome()> check;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Eigen::VectorXd vec(std::initializer_list<double> xs)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs)
        v(i++) = x;
    return v;
}

// 1. Closed-form flow oracles.
Outcome closed_form_flows()
{
    const auto p = HerglotzSpec::constant();

    // RK4, h = 1e-3, t <= 3, |z| <= 0.9 on a 5 x 8 polar grid, every grid time.
    const TimeGrid classical_grid(3.0, 3000);
    double classical_err = 0.0;
    for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int k = 0; k < 8; ++k) {
            const Complex z = std::polar(r, 2.0 * std::numbers::pi * k / 8.0);
            const Trajectory t = integrate_classical(z, p, classical_grid, Scheme::RK4);
            if (!t.completed())
                return {false, "classical trajectory exited"};
            for (std::size_t j = 0; j < t.states.size(); ++j)
                classical_err = std::max(
                    classical_err, std::abs(t.states[j] - oracles::linear_flow(z, classical_grid.time(j))));
        }
    }

    // tau = 1 (kappa = 0), Euler, h = 1e-4, z in {0, 0.5}, t in [0, 1].
    const auto tau_one = TauDriver::exponential(vec({0.0}));
    auto riccati_err = [&](std::size_t n_steps, Scheme scheme) {
        const TimeGrid grid(1.0, n_steps);
        const auto noise = generate_ensemble(1, grid, 1, 0);
        double err = 0.0;
        for (const Complex z : {Complex{0.0}, Complex{0.5}}) {
            const Trajectory t = integrate_randomized(z, p, tau_one, noise.path(0), scheme);
            for (std::size_t j = 0; j < t.states.size(); ++j)
                err = std::max(err, std::abs(t.states[j] - oracles::riccati_flow(z, grid.time(j))));
        }
        return err;
    };
    const double randomized_err = riccati_err(10000, Scheme::Euler);

    const bool classical_ok = classical_err <= 1e-8;
    const bool randomized_ok = randomized_err <= 1e-6;
    std::string detail = "classical RK4 max err " + fmt("%.3g", classical_err) + " (<= 1e-8 " +
                         (classical_ok ? "ok" : "FAIL") + "); randomized Euler h=1e-4 max err " +
                         fmt("%.3g", randomized_err) + " (<= 1e-6 " + (randomized_ok ? "ok" : "FAIL") + ")";
    if (!randomized_ok)
        detail += " [diagnostic: Heun h=1e-4 err " + fmt("%.3g", riccati_err(10000, Scheme::Heun)) +
                  ", Euler h=1e-6 err " + fmt("%.3g", riccati_err(1000000, Scheme::Euler)) + "]";
    return {classical_ok && randomized_ok, detail};
}

// 2. Transform equivalence on shared noise.
Outcome transform_equivalence()
{
    const TimeGrid base(0.5, 128); // h = 2^-8
    const auto ensemble = generate_ensemble(2, base, 100, 0);
    const auto report =
        verify_transform(0.0, vec({1.0, 0.5}), HerglotzSpec::single_atom(0.0), ensemble, 5);

    bool monotone = true;
    std::string levels;
    for (std::size_t k = 0; k < report.levels.size(); ++k) {
        const auto& l = report.levels[k];
        levels += fmt(" %.3g", l.rms_discrepancy);
        if (k > 0 && !(l.rms_discrepancy < report.levels[k - 1].rms_discrepancy))
            monotone = false;
    }
    const double order = report.estimated_order.value_or(std::nan(""));
    const double finest = report.levels.back().rms_discrepancy;
    const bool ok = monotone && order >= 0.4 && finest <= 1e-2 &&
                    std::abs(report.levels.back().h - std::ldexp(1.0, -12)) == 0.0;
    return {ok, "rms by level" + levels + "; order " + fmt("%.3f", order) + " (>= 0.4); rms at 2^-12 " +
                    fmt("%.3g", finest) + " (<= 1e-2); monotone " + (monotone ? "yes" : "no") +
                    "; paths used " + std::to_string(report.levels.back().path_count)};
}

// 3. Generator agreement.
Outcome generator_agreement()
{
    const Complex spot = apply_generator(PolynomialTestFunction::monomial(2), 0.5, vec({2.0}),
                                         HerglotzSpec::constant());
    if (std::abs(spot - (-1.75)) > 1e-12)
        return {false, "spot value " + fmt("%.17g", spot.real())};

    const GeneratorOptions options; // h = 1e-3, 8 substeps, N = 1e5
    const TimeGrid grid(options.h, options.substeps);
    const BrownianEnsemble noise1 = generate_ensemble(1, grid, options.n_samples, options.seed);
    const BrownianEnsemble noise2 = generate_ensemble(2, grid, options.n_samples, options.seed);
    std::size_t cases = 0, failures = 0;
    double worst_ratio = 0.0;
    for (std::size_t degree = 1; degree <= 3; ++degree) {
        const auto f = PolynomialTestFunction::monomial(degree);
        for (const Complex z : {Complex{0.0}, Complex{0.3}, Complex{0.2, 0.4}}) {
            for (const auto& kappa : {vec({0.0}), vec({2.0}), vec({1.0, 1.0})}) {
                for (const auto& p : {HerglotzSpec::constant(), HerglotzSpec::single_atom(0.0)}) {
                    const auto r = estimate_generator_mc(f, z, kappa, p, kappa.size() == 1 ? noise1 : noise2);
                    const double bound = 3.0 * r.standard_error + 0.05;
                    const double gap = std::abs(r.mc_estimate - r.closed_form);
                    worst_ratio = std::max(worst_ratio, gap / bound);
                    ++cases;
                    if (!(gap <= bound) || r.flagged)
                        ++failures;
                }
            }
        }
    }
    return {failures == 0, std::to_string(cases - failures) + "/" + std::to_string(cases) +
                               " configurations within 3*stderr + 0.05; worst gap/bound " +
                               fmt("%.3f", worst_ratio) + "; spot value -1.75 ok"};
}

// 4. Admissibility truth table.
Outcome admissibility_table()
{
    const Eigen::VectorXd kappa = vec({2.0, -1.0});
    const auto grid2 = product_grid({-1.0, 0.0, 1.0}, 2);

    const auto analytic = classify(TauDriver::exponential(kappa), grid2, analytic_tolerance);
    const bool a_ok = analytic.admissible && (*analytic.kappa - kappa).cwiseAbs().maxCoeff() <= 1e-10;

    const auto fd_driver = TauDriver::finite_difference_view(TauDriver::exponential(kappa));
    const auto fd = classify(fd_driver, grid2, finite_difference_tolerance, 1e-4);
    const double fd_err = fd.kappa ? (*fd.kappa - kappa).cwiseAbs().maxCoeff() : std::nan("");
    const bool fd_ok = fd.admissible && fd_err <= 1e-4;

    const auto square = classify(TauDriver::square_exponent(), product_grid({-1.0, 0.0, 1.0}, 1), 1e-6);
    const bool sq_ok = !square.admissible && std::abs(square.max_diagonal_residual - 2.0) <= 1e-6;

    const auto product = classify(TauDriver::product_exponent(), unit_cube_grid(2), 1e-6);
    const bool pr_ok = !product.admissible && std::abs(product.max_mixed_residual - 1.0) <= 1e-6 &&
                       product.max_diagonal_residual <= 1e-10;

    return {a_ok && fd_ok && sq_ok && pr_ok,
            std::string("exponential analytic ") + (a_ok ? "ok" : "FAIL") + ", finite-difference kappa err " +
                fmt("%.3g", fd_err) + (fd_ok ? " ok" : " FAIL") + "; square diag residual " +
                fmt("%.12g", square.max_diagonal_residual) + (sq_ok ? " ok" : " FAIL") +
                "; product mixed " + fmt("%.12g", product.max_mixed_residual) + " diag " +
                fmt("%.3g", product.max_diagonal_residual) + (pr_ok ? " ok" : " FAIL")};
}

// 5. Fiber invariance iff admissible.
Outcome fiber_invariance()
{
    double worst_exponential = 0.0;
    for (const auto& kappa : {vec({1.0}), vec({2.0, -1.0}), vec({1.0, 0.5}), vec({0.3, 1.0, -2.0})}) {
        for (const auto& p : {HerglotzSpec::constant(), HerglotzSpec::single_atom(0.0)}) {
            const auto v = fiber_variation(TauDriver::exponential(kappa), p, 0.5, unit_cube_grid(kappa.size()));
            worst_exponential = std::max(worst_exponential, v.max_variation);
        }
    }
    const auto square = fiber_variation(TauDriver::square_exponent(), HerglotzSpec::constant(), 0.5,
                                        unit_cube_grid(1));
    const bool ok = worst_exponential <= 1e-10 && std::abs(square.drift_variation - 1.0) <= 1e-9;
    return {ok, "exponential max variation " + fmt("%.3g", worst_exponential) +
                    " (<= 1e-10); square-exponent drift variation " + fmt("%.15g", square.drift_variation) +
                    " (1 +- 1e-9)"};
}

// 6. Herglotz validation.
Outcome herglotz_validation()
{
    const std::vector<HerglotzSpec> builtins{
        HerglotzSpec::constant(),
        HerglotzSpec::single_atom(0.0),
        HerglotzSpec::single_atom(2.0),
        HerglotzSpec::atomic({{0.0, 0.5}, {std::numbers::pi, 0.5}}),
        HerglotzSpec::atomic({{0.3, 0.2}, {2.0, 0.3}, {-1.1, 0.5}}),
        HerglotzSpec::rational_cayley_plus(1.0)};

    bool ok = true;
    double min_re = INFINITY, worst_origin = 0.0, worst_rel = 0.0;
    const double step = 1e-6;
    for (const auto& p : builtins) {
        const auto v = validate(p);
        ok = ok && v.passed;
        min_re = std::min(min_re, v.min_real_part);
        if (std::holds_alternative<AtomicMeasure>(p.variant()))
            worst_origin = std::max(worst_origin, std::abs(evaluate(p, 0.0) - 1.0));
        for (double r : {0.0, 0.3, 0.6, 0.9}) {
            for (int k = 0; k < 16; ++k) {
                const Complex w = std::polar(r, 2.0 * std::numbers::pi * k / 16.0);
                for (int order = 1; order <= 2; ++order) {
                    const Complex exact = evaluate(p, w, order);
                    const Complex fd =
                        (evaluate(p, w + step, order - 1) - evaluate(p, w - step, order - 1)) / (2.0 * step);
                    const double err = std::abs(exact) > 0.0 ? std::abs(fd - exact) / std::abs(exact)
                                                             : std::abs(fd);
                    worst_rel = std::max(worst_rel, err);
                }
            }
        }
    }
    ok = ok && worst_origin <= 1e-12 && worst_rel <= 1e-6;
    return {ok, "min Re on default grid " + fmt("%.3g", min_re) + " (>= -1e-9); atomic |p(0) - 1| " +
                    fmt("%.3g", worst_origin) + " (<= 1e-12); derivative rel err " + fmt("%.3g", worst_rel) +
                    " (<= 1e-6)"};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 7. CLI determinism, serial and parallel.
Outcome cli_determinism(const std::string& cli)
{
    if (cli.empty())
        return {false, "no --cli binary given"};
    const fs::path dir = fs::temp_directory_path() / "loewner_ito_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "config.json") << R"({
  "seed": 7,
  "herglotz": {"variant": "atomic", "atoms": [{"theta": 0.0, "weight": 0.6}, {"theta": 2.0, "weight": 0.4}]},
  "driver": {"variant": "exponential", "kappa": [1.0, 0.5]},
  "initial_points": [[0.0, 0.0], [0.3, -0.2]],
  "grid": {"t_end": 0.5, "n_steps": 128},
  "ensemble": {"n_paths": 20},
  "simulate": {"mode": "randomized", "scheme": "heun"},
  "verify_transform": {"z": [0.0, 0.0], "levels": 3},
  "generator": {"z": [0.2, 0.1], "f": [0, 0, 1], "n_samples": 20000}
})";

    const std::vector<std::pair<std::string, std::string>> commands{
        {"simulate", "trajectories.csv"},         {"sde", "trajectories.csv"},
        {"verify-transform", "convergence.json"}, {"generator", "generator.json"},
        {"classify", "classifier.json"},          {"validate-herglotz", "validation.json"}};
    std::size_t identical = 0;
    std::string mismatches;
    for (const auto& [cmd, file] : commands) {
        std::vector<std::string> outputs;
        for (const char* threads : {"1", "1", "4", "4"}) {
            const fs::path out = dir / (cmd + "_" + std::to_string(outputs.size()));
            const std::string line = "\"" + cli + "\" " + cmd + " --config \"" + (dir / "config.json").string() +
                                     "\" --threads " + threads + " --out \"" + out.string() + "\" > /dev/null";
            if (std::system(line.c_str()) != 0)
                return {false, cmd + " exited nonzero"};
            outputs.push_back(slurp(out / file));
        }
        const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2] &&
                          outputs[0] == outputs[3];
        identical += same ? 1 : 0;
        if (!same)
            mismatches += " " + cmd;
    }
    fs::remove_all(dir);
    return {identical == commands.size(),
            std::to_string(identical) + "/" + std::to_string(commands.size()) +
                " subcommands byte-identical across 2 serial + 2 four-thread runs" +
                (mismatches.empty() ? "" : "; mismatched:" + mismatches)};
}

} // namespace

int main(int argc, char** argv)
{
    int only = 0;
    std::string cli;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else if (a == "--cli" && i + 1 < argc)
            cli = argv[++i];
        else {
            std::fprintf(stderr, "usage: acceptance [--only N] [--cli PATH]\n");
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "closed-form flow oracles", 5.0, closed_form_flows},
        {2, "transform equivalence (shared noise)", 60.0, transform_equivalence},
        {3, "generator agreement", 120.0, generator_agreement},
        {4, "admissibility truth table", 1.0, admissibility_table},
        {5, "fiber invariance iff admissible", 1.0, fiber_invariance},
        {6, "herglotz validation", 0.0, herglotz_validation},
        {7, "CLI determinism", 0.0, [&] { return cli_determinism(cli); }},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only)
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit_s <= 0.0 || secs < c.time_limit_s;
        const bool pass = o.passed && in_time;
        failed += pass ? 0 : 1;
        std::printf("[%s] criterion %d: %s -- %s; %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), secs,
                    c.time_limit_s > 0.0 ? (in_time ? fmt(" (< %g s)", c.time_limit_s).c_str()
                                                    : fmt(" (limit %g s exceeded)", c.time_limit_s).c_str())
                                         : "");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
