#include "spinstar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "spinstar/errors.hpp"
#include "spinstar/exact.hpp"
#include "spinstar/oracle.hpp"
#include "spinstar/thermo.hpp"
#include "spinstar/util.hpp"

namespace spinstar {

namespace {

using nlohmann::json;

const std::set<std::string>& known_modes() {
    static const std::set<std::string> modes = {"exact", "limit",  "tcl2",
                                                "naive", "oracle", "compare"};
    return modes;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw std::invalid_argument("write failed: " + path);
}

void emit_error(const std::string& kind, const std::string& message) {
    std::fprintf(stderr, "%s\n",
                 json{{"error", kind}, {"message", message}}.dump().c_str());
}

// one method, one "rho11" column; extra bookkeeping lands in meta
Trajectory evaluate_method(const std::string& name, const TimeGrid& grid,
                           const ModelParams& params, const XState& x0,
                           const RunConfig& config,
                           std::map<std::string, std::string>& meta) {
    if (name == "exact") return exact_trajectory(grid, params, x0);
    if (name == "limit") return limit_trajectory(grid, params, x0);
    if (name == "naive") return naive_trajectory(grid, params, x0);
    if (name == "tcl2") {
        Tcl2Options opt;
        opt.step = config.tcl2_step;
        opt.coeff_mode = config.coeff_mode;
        opt.inhom_mode = config.inhom_mode;
        Tcl2Result res = integrate_tcl2(grid, params, x0, opt);
        meta["tcl2_max_drift"] = fmt17(res.max_drift);
        for (const auto& [k, v] : res.trajectory.metadata) meta[k] = v;
        return std::move(res.trajectory);
    }
    // oracle: dense diagonalization while the full space fits, sector
    // blocks beyond that
    if (params.bath_size <= 10) {
        meta["oracle_method"] = "dense";
        return dense_trajectory(grid, params, x0);
    }
    meta["oracle_method"] = "block";
    return block_trajectory(grid, params, x0);
}

json config_json(const RunConfig& config) {
    json j;
    j["mode"] = config.mode;
    j["n"] = config.bath_size;
    j["alpha"] = config.alpha;
    if (config.state.custom) {
        const XState& x = config.state.literal;
        j["custom_state"] = {
            {"rho11", x.rho11},       {"rho22", x.rho22},
            {"rho33", x.rho33},       {"rho44", x.rho44},
            {"rho23_re", x.rho23.real()}, {"rho23_im", x.rho23.imag()},
            {"rho14_re", x.rho14.real()}, {"rho14_im", x.rho14.imag()},
        };
    } else {
        j["family"] = family_name(config.state.family);
        j["theta"] = config.state.theta;
        j["beta"] = config.state.beta;
    }
    j["tmax"] = config.t_max;
    j["steps"] = config.steps;
    if (config.mode == "compare") j["methods"] = config.method_list();
    j["coeff_mode"] = coeff_mode_name(config.coeff_mode);
    j["inhom_mode"] = inhom_mode_name(config.inhom_mode);
    j["tcl2_step"] = config.tcl2_step;
    j["assert"] = config.assert_enabled;
    j["assert_tol"] = config.assert_tol;
    j["seed"] = config.seed;
    j["out"] = config.out;
    return j;
}

} // namespace

XState StateSpec::resolve() const {
    if (custom) {
        literal.validate();
        return literal;
    }
    return build_state(family, theta, beta);
}

std::string StateSpec::describe() const {
    if (custom) return "custom";
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s theta=%.6g beta=%.6g",
                  family_name(family).c_str(), theta, beta);
    return buf;
}

std::vector<std::string> RunConfig::method_list() const {
    if (mode != "compare") return {mode};
    if (methods.empty()) return {"exact", "tcl2"};
    return methods;
}

void RunConfig::validate() const {
    if (!known_modes().count(mode))
        throw std::invalid_argument("unknown mode: " + mode);
    if (bath_size < 1) throw std::invalid_argument("bath size must be >= 1");
    if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
    if (t_max <= 0.0) throw std::invalid_argument("tmax must be > 0");
    if (steps < 2) throw std::invalid_argument("steps must be >= 2");
    if (assert_tol <= 0.0) throw std::invalid_argument("assert tolerance must be > 0");
    if (out.empty()) throw std::invalid_argument("output path is empty");
    const auto names = method_list();
    std::set<std::string> seen;
    for (const auto& m : names) {
        if (m == "compare" || !known_modes().count(m))
            throw std::invalid_argument("unknown method: " + m);
        if (!seen.insert(m).second)
            throw std::invalid_argument("duplicate method: " + m);
    }
    if (mode == "compare" && names.size() < 2)
        throw std::invalid_argument("compare mode needs at least two methods");
    (void)state.resolve(); // rejects unphysical literals
}

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                    e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    static const std::set<std::string> known = {
        "mode",   "n",          "alpha",     "family",    "theta",
        "beta",   "custom_state", "tmax",    "steps",     "methods",
        "coeff_mode", "inhom_mode", "tcl2_step", "assert", "assert_tol",
        "seed",   "out"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw std::invalid_argument("unknown config key: " + k);

    RunConfig c;
    try {
        if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
        if (j.contains("n")) c.bath_size = j.at("n").get<int>();
        if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
        if (j.contains("family"))
            c.state.family = parse_family(j.at("family").get<std::string>());
        if (j.contains("theta")) c.state.theta = j.at("theta").get<double>();
        if (j.contains("beta")) c.state.beta = j.at("beta").get<double>();
        if (j.contains("custom_state")) {
            const json& s = j.at("custom_state");
            c.state.custom = true;
            c.state.literal.rho11 = s.value("rho11", 0.0);
            c.state.literal.rho22 = s.value("rho22", 0.0);
            c.state.literal.rho33 = s.value("rho33", 0.0);
            c.state.literal.rho44 = s.value("rho44", 0.0);
            c.state.literal.rho23 = {s.value("rho23_re", 0.0), s.value("rho23_im", 0.0)};
            c.state.literal.rho14 = {s.value("rho14_re", 0.0), s.value("rho14_im", 0.0)};
        }
        if (j.contains("tmax")) c.t_max = j.at("tmax").get<double>();
        if (j.contains("steps")) c.steps = j.at("steps").get<int>();
        if (j.contains("methods"))
            c.methods = j.at("methods").get<std::vector<std::string>>();
        if (j.contains("coeff_mode"))
            c.coeff_mode = parse_coeff_mode(j.at("coeff_mode").get<std::string>());
        if (j.contains("inhom_mode"))
            c.inhom_mode = parse_inhom_mode(j.at("inhom_mode").get<std::string>());
        if (j.contains("tcl2_step")) c.tcl2_step = j.at("tcl2_step").get<double>();
        if (j.contains("assert")) c.assert_enabled = j.at("assert").get<bool>();
        if (j.contains("assert_tol")) c.assert_tol = j.at("assert_tol").get<double>();
        if (j.contains("seed")) c.seed = j.at("seed").get<unsigned long>();
        if (j.contains("out")) c.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad config value: ") + e.what());
    }
    return c;
}

std::string config_to_json(const RunConfig& config) {
    return config_json(config).dump(2) + "\n";
}

Trajectory execute(const RunConfig& config) {
    config.validate();
    const ModelParams params{1.0, config.alpha, config.bath_size};
    const XState x0 = config.state.resolve();
    const TimeGrid grid = make_grid(config.t_max, config.steps);
    const auto names = config.method_list();

    Trajectory out;
    out.grid = grid;
    out.metadata["mode"] = config.mode;
    out.metadata["n"] = std::to_string(config.bath_size);
    out.metadata["alpha_over_gamma"] = fmt17(config.alpha);
    out.metadata["state"] = config.state.describe();
    out.metadata["t_max_gamma"] = fmt17(config.t_max);
    out.metadata["steps"] = std::to_string(config.steps);

    std::vector<std::string> warnings;
    for (const auto& name : names) {
        Trajectory part =
            evaluate_method(name, grid, params, x0, config, out.metadata);
        out.columns.push_back({name, part.column("rho11").values});
    }
    for (const auto& name : names)
        if (name == "limit" && config.alpha > 1.0) {
            out.metadata["limit_validity"] = "questionable";
            warnings.push_back(
                "limit_validity=questionable: the closed-form limit assumes "
                "alpha <~ gamma");
            break;
        }
    for (const auto& col : out.columns) {
        const auto [lo, hi] =
            std::minmax_element(col.values.begin(), col.values.end());
        if (*lo < -1e-9 || *hi > 1.0 + 1e-9)
            warnings.push_back("population_range=" + col.name +
                               " leaves [0,1] beyond 1e-9");
    }

    if (config.mode == "compare") {
        const std::size_t base = names.size();
        for (std::size_t a = 0; a < base; ++a)
            for (std::size_t b = a + 1; b < base; ++b) {
                const auto& va = out.columns[a].values;
                const auto& vb = out.columns[b].values;
                Column dev;
                dev.name = "absdev_" + names[a] + "_" + names[b];
                dev.values.resize(va.size());
                for (std::size_t i = 0; i < va.size(); ++i)
                    dev.values[i] = std::abs(va[i] - vb[i]);
                const DeviationMetrics m = deviation(grid, va, vb);
                out.metadata["dev_" + names[a] + "_" + names[b] + "_max"] =
                    fmt17(m.max_abs);
                out.metadata["dev_" + names[a] + "_" + names[b] + "_at"] =
                    fmt17(m.t_at_max);
                out.columns.push_back(std::move(dev));
            }
    }
    if (!warnings.empty()) {
        std::string joined;
        for (const auto& w : warnings) {
            if (!joined.empty()) joined += "; ";
            joined += w;
        }
        out.metadata["warnings"] = joined;
    }
    return out;
}

std::string render_csv(const Trajectory& traj) {
    std::string s = "t_gamma";
    for (const auto& col : traj.columns) {
        s += ',';
        s += col.name;
    }
    s += '\n';
    for (std::size_t i = 0; i < traj.grid.t.size(); ++i) {
        s += fmt17(traj.grid.t[i]);
        for (const auto& col : traj.columns) {
            s += ',';
            s += fmt17(col.values[i]);
        }
        s += '\n';
    }
    return s;
}

int run_and_emit(const RunConfig& config) {
    const Trajectory traj = execute(config);
    write_file(config.out, render_csv(traj));

    json side;
    side["config"] = config_json(config);
    side["columns"] = json::array({"t_gamma"});
    for (const auto& col : traj.columns) side["columns"].push_back(col.name);
    side["metadata"] = traj.metadata;

    int code = 0;
    if (config.mode == "compare") {
        json checks = json::array();
        const auto names = config.method_list();
        for (std::size_t a = 0; a < names.size(); ++a)
            for (std::size_t b = a + 1; b < names.size(); ++b) {
                const double max_abs = std::stod(traj.metadata.at(
                    "dev_" + names[a] + "_" + names[b] + "_max"));
                const bool ok = max_abs <= config.assert_tol;
                if (config.assert_enabled && !ok) code = 4;
                checks.push_back({{"pair", names[a] + "/" + names[b]},
                                  {"max_abs", max_abs},
                                  {"tol", config.assert_tol},
                                  {"within_tol", ok}});
            }
        side["assert"] = {{"enabled", config.assert_enabled},
                          {"checks", checks},
                          {"violated", code == 4}};
    }
    write_file(config.out + ".meta.json", side.dump(2) + "\n");
    return code;
}

namespace {

RunConfig curve_config(const std::string& mode, int n, double alpha,
                       StateFamily fam, double theta, double beta, double tmax,
                       int steps) {
    RunConfig c;
    c.mode = mode;
    c.bath_size = n;
    c.alpha = alpha;
    c.state.family = fam;
    c.state.theta = theta;
    c.state.beta = beta;
    c.t_max = tmax;
    c.steps = steps;
    return c;
}

constexpr double kPi = std::numbers::pi;

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

} // namespace

std::vector<std::string> figure_names() {
    return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"};
}

FigureRecipe figure_recipe(const std::string& name) {
    FigureRecipe r;
    r.name = name;
    const auto phi_p = StateFamily::phi_plus;
    const auto phi_m = StateFamily::phi_minus;
    if (name == "fig2") {
        r.note = "exact solver, N=50, state phi+ (theta=pi/2, beta=0), "
                 "alpha/gamma in {0, 1/4, 1, 100}";
        for (double a : {0.0, 0.25, 1.0, 100.0})
            r.curves.push_back({"alpha_" + short_num(a),
                                curve_config("exact", 50, a, phi_p, kPi / 2, 0.0,
                                             20.0, 401)});
        return r;
    }
    if (name == "fig3") {
        r.note = "exact solver, N=50, state phi+ (theta=pi/3, beta=0), "
                 "alpha/gamma in {2, 1, 1/2, 1/4}";
        for (double a : {2.0, 1.0, 0.5, 0.25})
            r.curves.push_back({"alpha_" + short_num(a),
                                curve_config("exact", 50, a, phi_p, kPi / 3, 0.0,
                                             20.0, 401)});
        return r;
    }
    if (name == "fig4") {
        r.note = "bath-size sweep at alpha=gamma/2, state phi+ (theta=pi/3, "
                 "beta=0): exact N=10, exact N=50, thermodynamic limit";
        r.curves.push_back({"exact_n10", curve_config("exact", 10, 0.5, phi_p,
                                                      kPi / 3, 0.0, 10.0, 201)});
        r.curves.push_back({"exact_n50", curve_config("exact", 50, 0.5, phi_p,
                                                      kPi / 3, 0.0, 10.0, 201)});
        r.curves.push_back({"limit", curve_config("limit", 50, 0.5, phi_p,
                                                  kPi / 3, 0.0, 10.0, 201)});
        return r;
    }
    if (name == "fig5") {
        r.note = "initial-correlation sweep, exact solver, N=50, alpha=gamma, "
                 "state phi+ (theta=pi/3), beta in {0, pi/2, pi/4, pi/6}";
        const std::pair<const char*, double> betas[] = {
            {"beta_0", 0.0},
            {"beta_pi2", kPi / 2},
            {"beta_pi4", kPi / 4},
            {"beta_pi6", kPi / 6},
        };
        for (const auto& [label, beta] : betas)
            r.curves.push_back({label, curve_config("exact", 50, 1.0, phi_p,
                                                    kPi / 3, beta, 10.0, 201)});
        return r;
    }
    if (name == "fig6") {
        r.note = "initial-correlation sweep in the thermodynamic limit, "
                 "alpha=gamma/4, state phi- (theta=pi/3), beta in {0, pi/4, pi/2}";
        const std::pair<const char*, double> betas[] = {
            {"beta_0", 0.0},
            {"beta_pi4", kPi / 4},
            {"beta_pi2", kPi / 2},
        };
        for (const auto& [label, beta] : betas)
            r.curves.push_back({label, curve_config("limit", 1, 0.25, phi_m,
                                                    kPi / 3, beta, 10.0, 201)});
        return r;
    }
    if (name == "fig7") {
        r.note = "tcl2 vs exact, N=20, alpha=gamma/2, state phi+ (theta=pi/3), "
                 "beta in {pi/2, pi/3, pi}";
        const std::pair<const char*, double> betas[] = {
            {"pi2", kPi / 2},
            {"pi3", kPi / 3},
            {"pi", kPi},
        };
        for (const auto& [tag, beta] : betas) {
            r.curves.push_back({std::string("exact_beta_") + tag,
                                curve_config("exact", 20, 0.5, phi_p, kPi / 3,
                                             beta, 2.0, 81)});
            r.curves.push_back({std::string("tcl2_beta_") + tag,
                                curve_config("tcl2", 20, 0.5, phi_p, kPi / 3,
                                             beta, 2.0, 81)});
        }
        return r;
    }
    if (name == "fig8" || name == "fig9") {
        const bool long_time = name == "fig9";
        const double tmax = long_time ? 30.0 : 2.0;
        const int steps = long_time ? 301 : 81;
        r.note = std::string(long_time ? "long-time " : "") +
                 "tcl2 vs exact, N=20, state phi+ (theta=pi, beta=0), "
                 "alpha/gamma in {1/2, 2, 10}; note: theta=pi makes this the "
                 "product state |-+> (sin theta = 0), which is intentional";
        const std::pair<const char*, double> alphas[] = {
            {"0.5", 0.5},
            {"2", 2.0},
            {"10", 10.0},
        };
        for (const auto& [tag, a] : alphas) {
            r.curves.push_back({std::string("exact_alpha_") + tag,
                                curve_config("exact", 20, a, phi_p, kPi, 0.0,
                                             tmax, steps)});
            r.curves.push_back({std::string("tcl2_alpha_") + tag,
                                curve_config("tcl2", 20, a, phi_p, kPi, 0.0,
                                             tmax, steps)});
        }
        return r;
    }
    throw std::invalid_argument("unknown figure: " + name +
                                " (expected fig2 .. fig9)");
}

int write_figure(const std::string& name, const std::string& out_dir) {
    const FigureRecipe recipe = figure_recipe(name);
    std::filesystem::create_directories(out_dir);

    Trajectory fig;
    json curves = json::array();
    std::string warnings;
    for (const auto& curve : recipe.curves) {
        const Trajectory t = execute(curve.config);
        if (fig.grid.t.empty()) fig.grid = t.grid;
        fig.columns.push_back(
            {curve.label, t.column(curve.config.mode).values});
        json entry;
        entry["label"] = curve.label;
        entry["config"] = config_json(curve.config);
        entry["metadata"] = t.metadata;
        curves.push_back(std::move(entry));
        const auto w = t.metadata.find("warnings");
        if (w != t.metadata.end()) {
            if (!warnings.empty()) warnings += "; ";
            warnings += curve.label + ": " + w->second;
        }
    }
    const std::string csv_path = out_dir + "/" + recipe.name + ".csv";
    write_file(csv_path, render_csv(fig));

    json side;
    side["figure"] = recipe.name;
    side["note"] = recipe.note;
    side["columns"] = json::array({"t_gamma"});
    for (const auto& col : fig.columns) side["columns"].push_back(col.name);
    side["curves"] = std::move(curves);
    if (!warnings.empty()) side["warnings"] = warnings;
    write_file(csv_path + ".meta.json", side.dump(2) + "\n");
    return 0;
}

int selftest(unsigned long seed, int cases) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log_alpha(std::log(0.01),
                                                     std::log(100.0));
    const int sizes[] = {1, 2, 3, 4, 6};
    const TimeGrid grid = make_grid(10.0, 9);
    int failures = 0;
    for (int c = 0; c < cases; ++c) {
        const int n = sizes[c % 5];
        const ModelParams params{1.0, std::exp(log_alpha(rng)), n};
        const XState x0 = random_xstate(rng);
        double exact_dev = 0.0, block_dev = 0.0;
        for (double t : grid.t) {
            const double dense = dense_population(t, params, x0);
            exact_dev =
                std::max(exact_dev, std::abs(exact_population(t, params, x0) - dense));
            block_dev =
                std::max(block_dev, std::abs(block_population(t, params, x0) - dense));
        }
        const bool ok = exact_dev < 1e-9 && block_dev < 1e-10;
        if (!ok) ++failures;
        std::printf("[%s] n=%d alpha=%9.3e exact|dense=%9.3e block|dense=%9.3e\n",
                    ok ? "ok" : "FAIL", n, params.alpha, exact_dev, block_dev);
    }
    std::printf("selftest: %d/%d cases within tolerance\n", cases - failures,
                cases);
    return failures == 0 ? 0 : 1;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"spin-star reduced dynamics toolkit (gamma = 1 units)"};
    app.require_subcommand(1);

    auto* run_cmd = app.add_subcommand(
        "run", "evaluate one configuration, write CSV plus JSON sidecar");
    std::string config_path;
    RunConfig flags;
    std::string family = "phi+", coeff = "published",
                inhom = "degeneracy_weighted";
    std::vector<std::string> methods;
    bool assert_flag = false;
    run_cmd->add_option("--config", config_path,
                        "JSON config file; explicit flags override its keys");
    run_cmd->add_option("--mode", flags.mode,
                        "exact|limit|tcl2|naive|oracle|compare");
    run_cmd->add_option("--n", flags.bath_size, "bath spin count");
    run_cmd->add_option("--alpha", flags.alpha, "alpha/gamma");
    run_cmd->add_option("--family", family, "phi+|phi-|psi+|psi-");
    run_cmd->add_option("--theta", flags.state.theta, "state angle theta");
    run_cmd->add_option("--beta", flags.state.beta, "state phase beta");
    run_cmd->add_option("--tmax", flags.t_max, "grid end, units of 1/gamma");
    run_cmd->add_option("--steps", flags.steps, "grid points incl. t=0");
    run_cmd->add_option("--methods", methods, "compare-mode method list")
        ->delimiter(',');
    run_cmd->add_option("--coeff-mode", coeff, "published|symmetric");
    run_cmd->add_option("--inhom-mode", inhom,
                        "published|degeneracy_weighted");
    run_cmd->add_option("--tcl2-step", flags.tcl2_step,
                        "integrator step; 0 = automatic");
    run_cmd->add_flag("--assert", assert_flag,
                      "compare mode: exit 4 when any pair exceeds the tolerance");
    run_cmd->add_option("--assert-tol", flags.assert_tol,
                        "tolerance for --assert");
    run_cmd->add_option("--seed", flags.seed, "echoed into metadata");
    run_cmd->add_option("--out", flags.out, "CSV output path");

    auto* fig_cmd = app.add_subcommand(
        "figure", "write the data batch behind one bundled curve set");
    std::string fig_name;
    std::string out_dir = ".";
    fig_cmd->add_option("name", fig_name, "fig2 .. fig9, or all")->required();
    fig_cmd->add_option("--out-dir", out_dir, "output directory");

    auto* self_cmd = app.add_subcommand(
        "selftest", "closed form vs brute force oracle spot checks");
    unsigned long self_seed = 1;
    int self_cases = 20;
    self_cmd->add_option("--seed", self_seed, "random seed");
    self_cmd->add_option("--cases", self_cases, "number of random cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        emit_error("config", e.what());
        return 2;
    }

    try {
        if (run_cmd->parsed()) {
            RunConfig config;
            if (run_cmd->count("--config"))
                config = config_from_json(slurp(config_path));
            const auto present = [&](const char* flag) {
                return run_cmd->count(flag) > 0;
            };
            if (present("--mode")) config.mode = flags.mode;
            if (present("--n")) config.bath_size = flags.bath_size;
            if (present("--alpha")) config.alpha = flags.alpha;
            if (present("--family")) {
                config.state.family = parse_family(family);
                config.state.custom = false;
            }
            if (present("--theta")) {
                config.state.theta = flags.state.theta;
                config.state.custom = false;
            }
            if (present("--beta")) {
                config.state.beta = flags.state.beta;
                config.state.custom = false;
            }
            if (present("--tmax")) config.t_max = flags.t_max;
            if (present("--steps")) config.steps = flags.steps;
            if (present("--methods")) config.methods = methods;
            if (present("--coeff-mode"))
                config.coeff_mode = parse_coeff_mode(coeff);
            if (present("--inhom-mode"))
                config.inhom_mode = parse_inhom_mode(inhom);
            if (present("--tcl2-step")) config.tcl2_step = flags.tcl2_step;
            if (assert_flag) config.assert_enabled = true;
            if (present("--assert-tol")) config.assert_tol = flags.assert_tol;
            if (present("--seed")) config.seed = flags.seed;
            if (present("--out")) config.out = flags.out;
            return run_and_emit(config);
        }
        if (fig_cmd->parsed()) {
            if (fig_name == "all") {
                // batch semantics: keep going, report the worst outcome
                int worst = 0;
                for (const auto& n : figure_names()) {
                    try {
                        worst = std::max(worst, write_figure(n, out_dir));
                    } catch (const std::invalid_argument& e) {
                        emit_error("config", e.what());
                        worst = std::max(worst, 2);
                    } catch (const std::exception& e) {
                        emit_error("solver", e.what());
                        worst = std::max(worst, 3);
                    }
                }
                return worst;
            }
            return write_figure(fig_name, out_dir);
        }
        return selftest(self_seed, self_cases);
    } catch (const std::invalid_argument& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("solver", e.what());
        return 3;
    }
}

} // namespace spinstar
