#include "loewner_ito/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "loewner_ito/admissibility.hpp"
#include "loewner_ito/generator.hpp"
#include "loewner_ito/herglotz.hpp"
#include "loewner_ito/ito_transform.hpp"
#include "loewner_ito/json_io.hpp"
#include "loewner_ito/loewner_flow.hpp"
#include "loewner_ito/parallel.hpp"
#include "loewner_ito/stochastic_paths.hpp"
#include "loewner_ito/tau_driver.hpp"

namespace loewner_ito::cli {

namespace fs = std::filesystem;

const std::string& default_config_text()
{
    static const std::string text = R"({
  "seed": 0,
  "herglotz": {"variant": "constant"},
  "driver": {"variant": "exponential", "kappa": [1.0]},
  "initial_points": [[0.5, 0.0]],
  "grid": {"t_end": 1.0, "n_steps": 1000},
  "ensemble": {"n_paths": 1, "dump_increments": false},
  "simulate": {"mode": "classical", "scheme": "rk4"},
  "verify_transform": {"z": [0.0, 0.0], "levels": 5},
  "generator": {"z": [0.0, 0.0], "f": [0.0, 1.0], "h": 0.001, "substeps": 8, "n_samples": 100000},
  "classify": {"grid_axis": [-1.0, 0.0, 1.0], "derivatives": "analytic", "fd_step": 0.0001},
  "validate_herglotz": {"radii": [0.1, 0.3, 0.5, 0.7, 0.9, 0.95], "n_angles": 64}
})";
    return text;
}

namespace {

struct Options {
    std::string command;
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir;
    unsigned threads = 0;
};

// Resolved configuration plus what is needed to anchor error messages.
class Context {
public:
    Context(Json config, std::string path, std::string text, std::vector<std::string> overridden)
        : config_(std::move(config)), path_(std::move(path)), text_(std::move(text)),
          overridden_(std::move(overridden)) {}

    const Json& config() const { return config_; }
    std::uint64_t seed() const { return config_.at("seed").get<std::uint64_t>(); }

    // "<file>:<line>" of the first occurrence of the top-level key, or the override naming it.
    std::string anchor(const std::string& key) const
    {
        for (const std::string& o : overridden_)
            if (o == key || o.rfind(key + ".", 0) == 0)
                return "--set " + o;
        const auto pos = text_.find('"' + key + '"');
        if (pos == std::string::npos)
            return path_ + " (default)";
        const auto line = 1 + std::count(text_.begin(), text_.begin() + static_cast<long>(pos), '\n');
        return path_ + ":" + std::to_string(line);
    }

    // Parses config[key] with `parse`, rethrowing invariant violations as anchored ConfigErrors.
    template <typename Parse>
    auto section(const std::string& key, Parse&& parse) const
    {
        try {
            if (!config_.contains(key))
                throw InvariantError("missing section");
            return parse(config_.at(key));
        } catch (const ConfigError&) {
            throw;
        } catch (const InvariantError& e) {
            const std::string what = e.what();
            throw ConfigError(anchor(key) + ": " + (what.rfind(key, 0) == 0 ? what : key + ": " + what));
        } catch (const Json::exception& e) {
            throw ConfigError(anchor(key) + ": " + key + ": " + e.what());
        }
    }

private:
    Json config_;
    std::string path_;
    std::string text_;
    std::vector<std::string> overridden_;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_anchored(const std::string& text, const std::string& path)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const std::size_t byte = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto begin = text.begin();
        const auto line = 1 + std::count(begin, begin + static_cast<long>(byte), '\n');
        const auto last_nl = text.rfind('\n', byte == 0 ? 0 : byte - 1);
        const auto column = last_nl == std::string::npos || byte == 0 ? byte + 1 : byte - last_nl;
        throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                          ": malformed config: " + e.what());
    }
}

Context load_config(const Options& opt)
{
    const std::string text = read_file(opt.config_path);
    Json user = parse_anchored(text, opt.config_path);
    if (!user.is_object())
        throw ConfigError(opt.config_path + ":1:1: malformed config: top level must be an object");

    Json config = Json::parse(default_config_text());
    config.merge_patch(user);

    std::vector<std::string> overridden;
    for (const std::string& o : opt.overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set " + o + ": expected key=value");
        const std::string key = o.substr(0, eq);
        const std::string raw = o.substr(eq + 1);
        Json value;
        try {
            value = Json::parse(raw);
        } catch (const Json::parse_error&) {
            value = raw;
        }
        std::string pointer = "/" + key;
        std::replace(pointer.begin(), pointer.end(), '.', '/');
        try {
            config[Json::json_pointer(pointer)] = value;
        } catch (const Json::exception& e) {
            throw ConfigError("--set " + o + ": " + e.what());
        }
        overridden.push_back(key);
    }

    if (const char* env = std::getenv("LOEWNER_ITO_SEED")) {
        char* end = nullptr;
        const unsigned long long s = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw ConfigError("LOEWNER_ITO_SEED: expected a nonnegative integer");
        config["seed"] = static_cast<std::uint64_t>(s);
        overridden.push_back("seed");
    }

    Context ctx(std::move(config), opt.config_path, text, std::move(overridden));
    ctx.section("seed", [](const Json& s) {
        if (!s.is_number_unsigned())
            throw InvariantError("must be a nonnegative integer");
        return 0;
    });
    return ctx;
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << body;
}

void write_report(const fs::path& path, Json report, const Context& ctx)
{
    report["config"] = ctx.config();
    report["seed"] = ctx.seed();
    write_text(path, report.dump(2) + "\n");
}

struct LabelledTrajectory {
    std::size_t path_id;
    Trajectory trajectory;
};

void write_trajectories(const fs::path& path, const std::vector<LabelledTrajectory>& all)
{
    std::string body = "path_id,t,re,im,exited\n";
    for (const auto& [id, traj] : all) {
        const char* exited = traj.completed() ? "0" : "1";
        for (std::size_t j = 0; j < traj.states.size(); ++j) {
            body += std::to_string(id);
            body += ',' + format_double(traj.grid.time(j));
            body += ',' + format_double(traj.states[j].real());
            body += ',' + format_double(traj.states[j].imag());
            body += ',';
            body += exited;
            body += '\n';
        }
    }
    write_text(path, body);
}

std::vector<Complex> initial_points(const Context& ctx)
{
    return ctx.section("initial_points", [](const Json& j) {
        if (!j.is_array() || j.empty())
            throw InvariantError("expected a nonempty array of [re, im] points");
        std::vector<Complex> pts;
        for (const Json& z : j)
            pts.push_back(complex_from_json(z));
        return pts;
    });
}

TimeGrid time_grid(const Context& ctx)
{
    return ctx.section("grid", [](const Json& g) {
        const auto n = g.at("n_steps");
        if (!n.is_number_unsigned())
            throw InvariantError("n_steps must be a positive integer");
        return TimeGrid(g.at("t_end").get<double>(), n.get<std::size_t>());
    });
}

BrownianEnsemble ensemble(const Context& ctx, std::size_t n_dims, const TimeGrid& grid,
                          unsigned threads, const fs::path& out_dir)
{
    const auto [n_paths, dump] = ctx.section("ensemble", [](const Json& e) {
        const auto n = e.at("n_paths");
        if (!n.is_number_unsigned() || n.get<std::size_t>() == 0)
            throw InvariantError("n_paths must be a positive integer");
        return std::pair{n.get<std::size_t>(), e.value("dump_increments", false)};
    });
    BrownianEnsemble e = generate_ensemble(n_dims, grid, n_paths, ctx.seed(), threads);
    if (dump) {
        std::ofstream bin(out_dir / "increments.bin", std::ios::binary);
        write_increments(bin, e);
    }
    return e;
}

Scheme scheme_from(const std::string& name)
{
    if (name == "euler")
        return Scheme::Euler;
    if (name == "heun")
        return Scheme::Heun;
    if (name == "rk4")
        return Scheme::RK4;
    throw InvariantError("scheme must be one of euler, heun, rk4");
}

Eigen::VectorXd kappa_of(const Context& ctx)
{
    if (ctx.config().contains("kappa"))
        return ctx.section("kappa", [](const Json& k) {
            Eigen::VectorXd v = real_vector_from_json(k);
            if (v.size() == 0)
                throw SizingError("must be nonempty");
            return v;
        });
    return ctx.section("driver", [](const Json& d) {
        const TauDriver driver = tau_driver_from_json(d);
        const auto* e = std::get_if<ExponentialDriver>(&driver.variant());
        if (!e)
            throw InvariantError("the diffusion needs an exponential driver or a top-level kappa");
        return e->kappa;
    });
}

int cmd_simulate(const Context& ctx, const Options& opt, std::ostream& out)
{
    const HerglotzSpec p = ctx.section("herglotz", herglotz_from_json);
    const auto points = initial_points(ctx);
    const TimeGrid grid = time_grid(ctx);
    const auto [mode, scheme] = ctx.section("simulate", [](const Json& s) {
        const auto m = s.at("mode").get<std::string>();
        if (m != "classical" && m != "randomized")
            throw InvariantError("mode must be classical or randomized");
        const Scheme sc = scheme_from(s.at("scheme").get<std::string>());
        if (m == "randomized" && sc == Scheme::RK4)
            throw InvariantError("the randomized flow supports euler and heun only");
        return std::pair{m, sc};
    });

    std::vector<LabelledTrajectory> all;
    if (mode == "classical") {
        all.resize(points.size(), {0, Trajectory{grid, {}, std::nullopt}});
        parallel_for(points.size(), opt.threads, [&](std::size_t i) {
            all[i] = {i, integrate_classical(points[i], p, grid, scheme)};
        });
    } else {
        const TauDriver driver = ctx.section("driver", tau_driver_from_json);
        const BrownianEnsemble e =
            ensemble(ctx, static_cast<std::size_t>(driver.n_dims()), grid, opt.threads, opt.out_dir);
        const std::size_t n = points.size() * e.n_paths();
        all.resize(n, {0, Trajectory{grid, {}, std::nullopt}});
        parallel_for(n, opt.threads, [&](std::size_t k) {
            const std::size_t i = k / e.n_paths();
            all[k] = {k, integrate_randomized(points[i], p, driver, e.path(k % e.n_paths()), scheme)};
        });
    }
    const fs::path file = fs::path(opt.out_dir) / "trajectories.csv";
    write_trajectories(file, all);
    out << "wrote " << file.string() << "\n";
    return exit_ok;
}

int cmd_sde(const Context& ctx, const Options& opt, std::ostream& out)
{
    const HerglotzSpec p = ctx.section("herglotz", herglotz_from_json);
    const Eigen::VectorXd kappa = kappa_of(ctx);
    const auto points = initial_points(ctx);
    const TimeGrid grid = time_grid(ctx);
    const BrownianEnsemble e =
        ensemble(ctx, static_cast<std::size_t>(kappa.size()), grid, opt.threads, opt.out_dir);

    const std::size_t n = points.size() * e.n_paths();
    std::vector<LabelledTrajectory> all(n, {0, Trajectory{grid, {}, std::nullopt}});
    parallel_for(n, opt.threads, [&](std::size_t k) {
        all[k] = {k, integrate_sde(points[k / e.n_paths()], kappa, p, e.path(k % e.n_paths()))};
    });
    const fs::path file = fs::path(opt.out_dir) / "trajectories.csv";
    write_trajectories(file, all);
    out << "wrote " << file.string() << "\n";
    return exit_ok;
}

int cmd_verify_transform(const Context& ctx, const Options& opt, std::ostream& out)
{
    const HerglotzSpec p = ctx.section("herglotz", herglotz_from_json);
    const Eigen::VectorXd kappa = kappa_of(ctx);
    const TimeGrid grid = time_grid(ctx);
    const auto [z, levels] = ctx.section("verify_transform", [](const Json& v) {
        const auto l = v.at("levels");
        if (!l.is_number_unsigned() || l.get<std::size_t>() == 0)
            throw InvariantError("levels must be a positive integer");
        return std::pair{complex_from_json(v.at("z")), l.get<std::size_t>()};
    });
    const BrownianEnsemble e =
        ensemble(ctx, static_cast<std::size_t>(kappa.size()), grid, opt.threads, opt.out_dir);

    const ConvergenceReport report = verify_transform(z, kappa, p, e, levels, opt.threads);
    const fs::path file = fs::path(opt.out_dir) / "convergence.json";
    write_report(file, to_json(report), ctx);
    out << "wrote " << file.string() << "\n";
    return exit_ok;
}

int cmd_generator(const Context& ctx, const Options& opt, std::ostream& out)
{
    const HerglotzSpec p = ctx.section("herglotz", herglotz_from_json);
    const Eigen::VectorXd kappa = kappa_of(ctx);
    const auto [f, z, options] = ctx.section("generator", [&](const Json& g) {
        if (!g.at("f").is_array())
            throw InvariantError("f must be an array of coefficients");
        std::vector<Complex> coeffs;
        for (const Json& c : g.at("f"))
            coeffs.push_back(complex_from_json(c));
        GeneratorOptions o;
        o.h = g.at("h").get<double>();
        o.substeps = g.at("substeps").get<std::size_t>();
        o.n_samples = g.at("n_samples").get<std::size_t>();
        o.seed = ctx.seed();
        o.threads = opt.threads;
        if (!(o.h > 0.0 && o.h <= 1e-2))
            throw InvariantError("h must lie in (0, 1e-2]");
        if (o.n_samples < 1000)
            throw InvariantError("n_samples must be >= 1000");
        return std::tuple{PolynomialTestFunction(std::move(coeffs)), complex_from_json(g.at("z")), o};
    });

    const GeneratorReport report = estimate_generator_mc(f, z, kappa, p, options);
    const fs::path file = fs::path(opt.out_dir) / "generator.json";
    write_report(file, to_json(report), ctx);
    out << "wrote " << file.string() << "\n";
    return exit_ok;
}

int cmd_classify(const Context& ctx, const Options& opt, std::ostream& out)
{
    const TauDriver analytic = ctx.section("driver", tau_driver_from_json);
    const auto [driver, grid, tol, fd_step] = ctx.section("classify", [&](const Json& c) {
        const auto mode = c.at("derivatives").get<std::string>();
        if (mode != "analytic" && mode != "finite_difference")
            throw InvariantError("derivatives must be analytic or finite_difference");
        const TauDriver d =
            mode == "analytic" ? analytic : TauDriver::finite_difference_view(analytic);
        std::vector<Eigen::VectorXd> pts;
        if (c.contains("grid") && !c.at("grid").is_null()) {
            for (const Json& y : c.at("grid"))
                pts.push_back(real_vector_from_json(y));
        } else {
            std::vector<double> axis;
            for (const Json& a : c.at("grid_axis"))
                axis.push_back(a.get<double>());
            pts = product_grid(axis, d.n_dims());
        }
        const double t = c.contains("tol") && !c.at("tol").is_null() ? c.at("tol").get<double>()
                                                                      : default_tolerance(d);
        return std::tuple{d, pts, t, c.at("fd_step").get<double>()};
    });

    const ClassifierReport report = classify(driver, grid, tol, fd_step);
    const fs::path file = fs::path(opt.out_dir) / "classifier.json";
    write_report(file, to_json(report), ctx);
    out << "wrote " << file.string() << " (admissible: " << (report.admissible ? "true" : "false")
        << ")\n";
    return exit_ok;
}

int cmd_validate_herglotz(const Context& ctx, const Options& opt, std::ostream& out)
{
    const HerglotzSpec p = ctx.section("herglotz", herglotz_from_json);
    const auto [radii, n_angles] = ctx.section("validate_herglotz", [](const Json& v) {
        return std::pair{v.at("radii").get<std::vector<double>>(), v.at("n_angles").get<int>()};
    });
    HerglotzValidation report;
    try {
        report = validate(p, radii, n_angles);
    } catch (const SizingError& e) {
        throw ConfigError(ctx.anchor("validate_herglotz") + ": validate_herglotz: " + e.what());
    }
    const fs::path file = fs::path(opt.out_dir) / "validation.json";
    write_report(file, to_json(report), ctx);
    out << "wrote " << file.string() << " (passed: " << (report.passed ? "true" : "false") << ")\n";
    return report.passed ? exit_ok : exit_validation;
}

int dispatch(const Options& opt, std::ostream& out)
{
    const Context ctx = load_config(opt);
    fs::create_directories(opt.out_dir);
    if (opt.command == "simulate")
        return cmd_simulate(ctx, opt, out);
    if (opt.command == "sde")
        return cmd_sde(ctx, opt, out);
    if (opt.command == "verify-transform")
        return cmd_verify_transform(ctx, opt, out);
    if (opt.command == "generator")
        return cmd_generator(ctx, opt, out);
    if (opt.command == "classify")
        return cmd_classify(ctx, opt, out);
    return cmd_validate_herglotz(ctx, opt, out);
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Randomized radial Loewner chains and their Ito diffusions", "loewner-ito"};
    app.require_subcommand(1);
    Options opt;

    const std::pair<const char*, const char*> commands[] = {
        {"simulate", "integrate the classical or randomized Loewner flow"},
        {"sde", "integrate the Ito diffusion with Euler-Maruyama"},
        {"verify-transform", "compare randomized flow and diffusion under refinement"},
        {"generator", "Monte Carlo check of the closed-form generator"},
        {"classify", "test a tau driver for admissibility and recover kappa"},
        {"validate-herglotz", "check Re p >= 0 on a polar grid"},
    };
    for (const auto& [name, description] : commands) {
        CLI::App* sub = app.add_subcommand(name, description);
        sub->add_option("--config", opt.config_path, "JSON experiment config")->required();
        sub->add_option("--set", opt.overrides, "dotted-path override key=value")
            ->allow_extra_args(false);
        sub->add_option("--out", opt.out_dir, "output directory")->required();
        sub->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
        sub->callback([&opt, name] { opt.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "loewner-ito: " << e.what() << "\n";
        return exit_validation;
    }

    try {
        return dispatch(opt, out);
    } catch (const InvariantError& e) {
        err << "loewner-ito: " << e.what() << "\n";
        return exit_validation;
    } catch (const std::exception& e) {
        err << "loewner-ito: " << e.what() << "\n";
        return exit_runtime;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"loewner-ito"};
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace loewner_ito::cli
