#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "rotnum/io.hpp"

namespace rotnum::cli {

namespace {

using io::json;

struct Flags {
    std::string config_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
    std::optional<long long> iterations;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
}

const json& section(const json& cfg, const char* name) {
    if (!cfg.contains(name)) throw ValidationError(std::string("config lacks section \"") + name + "\"");
    return cfg.at(name);
}

json optional_section(const json& cfg, const char* name) {
    return cfg.contains(name) ? cfg.at(name) : json::object();
}

int grid_of(const Flags& flags, const json& estimator) {
    int g = flags.grid.value_or(estimator.value("grid", 4096));
    if (g < 2) throw ValidationError("grid must be >= 2");
    return g + (g % 2);  // Simpson needs an even panel count.
}

std::uint64_t seed_of(const Flags& flags, const json& cfg) {
    if (flags.seed) return *flags.seed;
    if (cfg.contains("seed")) return cfg.at("seed").get<std::uint64_t>();
    throw ValidationError("randomized command needs a seed (--seed or \"seed\" in config)");
}

std::string format_or(const Flags& flags, const char* fallback) {
    std::string f = flags.format.empty() ? fallback : flags.format;
    if (f != "json" && f != "csv") throw ValidationError("--format must be json or csv");
    return f;
}

void cmd_rho_circle(const Flags& flags, std::ostream& out) {
    const json cfg = load_config(flags.config_path);
    const auto lift = io::lift_from_json(section(cfg, "lift"));
    const json est_cfg = optional_section(cfg, "estimator");
    const long long m = flags.iterations.value_or(est_cfg.value("iterations", 1000LL));
    const auto est = circle::rho_bracket(lift, est_cfg.value("x0", 0.0), m);
    if (format_or(flags, "json") == "csv") {
        out << "value,lower,upper,iterations\n"
            << io::format_double(est.value) << ',' << io::format_double(est.lower) << ','
            << io::format_double(est.upper) << ',' << est.iterations << '\n';
    } else {
        out << io::to_json(est).dump() << '\n';
    }
}

void cmd_rho_ff(const Flags& flags, std::ostream& out) {
    const json cfg = load_config(flags.config_path);
    const auto sys = io::system_from_json(section(cfg, "system"));
    const json est_cfg = optional_section(cfg, "estimator");
    const long long cycles = flags.iterations.value_or(est_cfg.value("cycles", 100000LL));
    const auto est = skewfibre::rho_ff(sys, cycles, est_cfg.value("start_fibre", 0), est_cfg.value("x0", 0.0));
    json j = io::to_json(est);
    j["n"] = sys.n();
    if (format_or(flags, "json") == "csv") {
        out << "n,value,lower,upper,cycles\n"
            << sys.n() << ',' << io::format_double(est.value) << ',' << io::format_double(est.lower) << ','
            << io::format_double(est.upper) << ',' << est.iterations << '\n';
    } else {
        out << j.dump() << '\n';
    }
}

void cmd_rho_fibred(const Flags& flags, std::ostream& out) {
    const json cfg = load_config(flags.config_path);
    const auto f = io::map_from_json(section(cfg, "map"));
    const int grid = grid_of(flags, optional_section(cfg, "estimator"));
    const int degree = holo::winding_degree(f, grid);
    if (degree != 0) {
        throw ValidationError("rho_1 has winding degree " + std::to_string(degree) +
                              "; the fibred rotation number is undefined");
    }
    const double rho = holo::rho_T(f, grid);
    const double defect = holo::indifference_defect(f, grid);
    if (format_or(flags, "json") == "csv") {
        out << "rho_T,winding_degree,indifference_defect,grid\n"
            << io::format_double(rho) << ',' << degree << ',' << io::format_double(defect) << ',' << grid << '\n';
    } else {
        out << json{{"rho_T", rho}, {"winding_degree", degree}, {"indifference_defect", defect}, {"grid", grid}}.dump()
            << '\n';
    }
}

void cmd_approx(const Flags& flags, std::ostream& out, std::ostream& err) {
    const json cfg = load_config(flags.config_path);
    const auto f = io::map_from_json(section(cfg, "map"));
    const json est_cfg = optional_section(cfg, "estimator");
    const int grid = grid_of(flags, est_cfg);
    approx::ConvergentSequence convs;
    if (est_cfg.contains("convergents") && est_cfg.at("convergents").is_array()) {
        for (const auto& pq : est_cfg.at("convergents")) {
            convs.terms.push_back({pq.at(0).get<long long>(), pq.at(1).get<long long>()});
        }
    } else {
        const auto count = static_cast<int>(flags.iterations.value_or(est_cfg.value("convergents", 12LL)));
        convs = approx::convergents(f.alpha, count);
    }
    const auto table = approx::riemann_convergence(f, convs.terms, est_cfg.value("anchor", 0.0), grid);
    if (format_or(flags, "csv") == "csv") {
        if (convs.terminated) err << "note: " << convs.reason << '\n';
        io::write_csv(out, table);
    } else {
        json j = io::to_json(table);
        j["terminated"] = convs.terminated;
        if (convs.terminated) j["reason"] = convs.reason;
        out << j.dump() << '\n';
    }
}

circle::CircleMapLift shift_homeo(double c) {
    return circle::CircleMapLift::piecewise_linear({{0.0, c}, {1.0, c + 1.0}});
}

void cmd_conjugacy_test(const Flags& flags, std::ostream& out) {
    const json cfg = load_config(flags.config_path);
    const auto mode = cfg.value("mode", std::string("finite_fibre"));
    const json conj = optional_section(cfg, "conjugacy");
    const json est_cfg = optional_section(cfg, "estimator");
    const auto kind = conj.value("kind", std::string("random"));
    const int trials = conj.value("trials", 10);
    if (trials < 1) throw ValidationError("conjugacy trials must be >= 1");
    if (kind != "random" && kind != "identity" && kind != "rigid_shift") {
        throw ValidationError("conjugacy kind must be random, identity or rigid_shift");
    }
    std::mt19937_64 rng(kind == "identity" ? 0 : seed_of(flags, cfg));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    json rows = json::array();
    double worst = 0.0;
    bool passed = true;
    double base_value = 0.0;
    if (mode == "finite_fibre") {
        const auto sys = io::system_from_json(section(cfg, "system"));
        const long long cycles = flags.iterations.value_or(est_cfg.value("cycles", 100000LL));
        const auto base = skewfibre::rho_ff(sys, cycles);
        base_value = base.value;
        const int nodes = conj.value("nodes", 4);
        for (int t = 0; t < trials; ++t) {
            std::vector<circle::CircleMapLift> h;
            for (int i = 0; i < sys.n(); ++i) {
                if (kind == "identity") h.push_back(shift_homeo(0.0));
                else if (kind == "rigid_shift") h.push_back(shift_homeo(unit(rng)));
                else h.push_back(circle::random_pl_homeo(rng, nodes));
            }
            const auto est = skewfibre::rho_ff(skewfibre::conjugate_system(sys, h), cycles);
            const double dist = circular_distance(est.value, base.value);
            const double tol = 0.5 * (est.width() + base.width());
            worst = std::max(worst, dist);
            passed = passed && dist <= tol;
            rows.push_back({{"trial", t}, {"value", est.value}, {"circ_dist", dist}, {"tolerance", tol}});
        }
    } else if (mode == "fibred") {
        const auto f = io::map_from_json(section(cfg, "map"));
        const int grid = grid_of(flags, est_cfg);
        const double tol = conj.value("tolerance", 1e-8);
        base_value = holo::rho_T(f, grid);
        const int degree = conj.value("degree", 2);
        const double amplitude = conj.value("amplitude", 0.3);
        for (int t = 0; t < trials; ++t) {
            holo::CoeffFn c;
            if (kind == "rigid_shift") {
                c = holo::phase_exponential(unit(rng), {});
            } else if (kind == "random") {
                // exp of a complex trig poly: nonvanishing with zero winding.
                auto re = holo::random_real_trig_poly(rng, degree, amplitude);
                auto im = holo::random_real_trig_poly(rng, degree, amplitude);
                c = holo::CoeffFn::exp_of(re + im * holo::complex{0.0, 1.0});
            }
            const double value = holo::rho_T(holo::conjugate_linear_part(f, c, grid), grid);
            const double dist = circular_distance(value, base_value);
            worst = std::max(worst, dist);
            passed = passed && dist <= tol;
            rows.push_back({{"trial", t}, {"value", value}, {"circ_dist", dist}, {"tolerance", tol}});
        }
    } else {
        throw ValidationError("mode must be finite_fibre or fibred");
    }
    if (format_or(flags, "json") == "csv") {
        out << "trial,value,circ_dist,tolerance\n";
        for (const auto& r : rows) {
            out << r["trial"].get<int>() << ',' << io::format_double(r["value"].get<double>()) << ','
                << io::format_double(r["circ_dist"].get<double>()) << ','
                << io::format_double(r["tolerance"].get<double>()) << '\n';
        }
    } else {
        out << json{{"mode", mode}, {"kind", kind}, {"base", base_value}, {"trials", rows},
                    {"max_circ_dist", worst}, {"passed", passed}}
                   .dump()
            << '\n';
    }
}

void cmd_orbit(const Flags& flags, std::ostream& out) {
    const json cfg = load_config(flags.config_path);
    const auto f = io::map_from_json(section(cfg, "map"));
    const json o = optional_section(cfg, "orbit");
    orbit::ArgAdvanceOptions opts;
    opts.margin = o.value("margin", opts.margin);
    opts.r_min = o.value("r_min", opts.r_min);
    opts.r_max = o.value("r_max", opts.r_max);
    const bool csv = format_or(flags, "json") == "csv";
    opts.record_trace = csv;
    holo::complex z0{0.1, 0.0};
    if (o.contains("z0")) z0 = {o.at("z0").value("re", 0.0), o.at("z0").value("im", 0.0)};
    const long long m = flags.iterations.value_or(o.value("iterations", 100000LL));
    const auto res = orbit::arg_advance(f, o.value("theta0", 0.0), z0, m, opts);
    if (csv) {
        io::write_csv(out, res.trace);
    } else {
        json j = io::to_json(res.estimate);
        j["value_mod1"] = mod1(res.estimate.value);
        out << j.dump() << '\n';
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotation numbers of circle maps, finite-fibre systems and fibred holomorphic maps", "rotnum"};
    app.require_subcommand(1);
    Flags flags;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config_path, "JSON config file")->required();
        sub->add_option("--format", flags.format, "json or csv");
        sub->add_option("--seed", flags.seed, "RNG seed for randomized commands");
        sub->add_option("--grid", flags.grid, "quadrature / unwrap grid size");
        sub->add_option("--iterations", flags.iterations, "iteration count override");
    };
    auto* rho_circle = app.add_subcommand("rho-circle", "rotation number bracket of a circle lift");
    auto* rho_ff = app.add_subcommand("rho-ff", "finite fibres rotation number");
    auto* rho_fibred = app.add_subcommand("rho-fibred", "fibred rotation number with diagnostics");
    auto* approx_cmd = app.add_subcommand("approx", "Riemann-sum convergence over convergents");
    auto* conj = app.add_subcommand("conjugacy-test", "rotation numbers under random conjugacies");
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit argument-advance estimator");
    for (auto* sub : {rho_circle, rho_ff, rho_fibred, approx_cmd, conj, orbit_cmd}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream cli_out;
        const int code = app.exit(e, cli_out, err);
        out << cli_out.str();
        return code == 0 ? ok : validation_failure;
    }

    try {
        if (rho_circle->parsed()) cmd_rho_circle(flags, out);
        else if (rho_ff->parsed()) cmd_rho_ff(flags, out);
        else if (rho_fibred->parsed()) cmd_rho_fibred(flags, out);
        else if (approx_cmd->parsed()) cmd_approx(flags, out, err);
        else if (conj->parsed()) cmd_conjugacy_test(flags, out);
        else if (orbit_cmd->parsed()) cmd_orbit(flags, out);
    } catch (const NumericalError& e) {
        err << "rotnum: numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const ValidationError& e) {
        err << "rotnum: " << e.what() << '\n';
        return validation_failure;
    } catch (const io::json::exception& e) {
        err << "rotnum: malformed config: " << e.what() << '\n';
        return validation_failure;
    }
    return ok;
}

}  // namespace rotnum::cli
