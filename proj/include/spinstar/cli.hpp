#pragma once

#include <string>
#include <vector>

#include "spinstar/model.hpp"
#include "spinstar/states.hpp"
#include "spinstar/tcl2.hpp"
#include "spinstar/trajectory.hpp"

namespace spinstar {

// Initial S+I state: either a prepared family or a literal X matrix.
struct StateSpec {
    bool custom = false;
    StateFamily family = StateFamily::phi_plus;
    double theta = 0.0;
    double beta = 0.0;
    XState literal;

    XState resolve() const;
    std::string describe() const;
};

// One run of the toolkit.  Everything is in units of gamma: alpha holds
// alpha/gamma and t_max holds gamma*t_max (gamma = 1 internally).
struct RunConfig {
    std::string mode = "exact"; // exact|limit|tcl2|naive|oracle|compare
    int bath_size = 1;
    double alpha = 0.5;
    StateSpec state;
    double t_max = 10.0;
    int steps = 201;
    std::vector<std::string> methods; // compare mode; default {exact, tcl2}
    CoeffMode coeff_mode = CoeffMode::published;
    InhomMode inhom_mode = InhomMode::degeneracy_weighted;
    double tcl2_step = 0.0; // 0 = automatic
    bool assert_enabled = false;
    double assert_tol = 1e-9;
    unsigned long seed = 0;
    std::string out = "run.csv";

    void validate() const; // throws std::invalid_argument
    std::vector<std::string> method_list() const;
};

// Flat JSON object with one key per flag; unknown keys are rejected.
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);

// Evaluates every requested method on the shared grid.  Compare mode
// appends one |a - b| column per method pair and deviation metrics in
// the metadata.  Solver failures propagate as the spinstar exceptions.
Trajectory execute(const RunConfig& config);

// CSV is t_gamma plus one column per series, 17 significant digits, LF.
std::string render_csv(const Trajectory& traj);

// Full run: evaluate, write <out> and the <out>.meta.json sidecar.
// Returns 0, or 4 when --assert is set and a compare pair exceeds the
// tolerance (the files are still written).
int run_and_emit(const RunConfig& config);

struct FigureCurve {
    std::string label; // column name in the figure CSV
    RunConfig config;  // single-method mode
};

struct FigureRecipe {
    std::string name;
    std::string note; // parameter provenance, goes into the sidecar
    std::vector<FigureCurve> curves;
};

// fig2 .. fig9 parameter sets.
FigureRecipe figure_recipe(const std::string& name);
std::vector<std::string> figure_names();

// Writes <dir>/<name>.csv plus sidecar; returns a process exit code.
int write_figure(const std::string& name, const std::string& out_dir);

// Closed form vs brute force spot checks; prints one line per case.
int selftest(unsigned long seed, int cases);

int cli_main(int argc, char** argv);

} // namespace spinstar
