#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "spinstar/cli.hpp"

// Path of the binary under test, taken from the trailing command line
// argument before doctest sees the rest.
const char* g_cli_binary = nullptr;

int main(int argc, char** argv) {
    if (argc > 1 && argv[argc - 1][0] != '-') {
        g_cli_binary = argv[argc - 1];
        --argc;
    }
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int code = -1;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// no process output capture beyond exit codes unless asked; stdout is
// routed to a scratch file, stderr is left alone so failures stay visible
RunResult run_cli(const std::string& args, bool keep_stderr = false) {
    REQUIRE(g_cli_binary != nullptr);
    static int counter = 0;
    const fs::path cap = fs::temp_directory_path() /
                         ("spinstar_cli_out_" + std::to_string(counter++));
    std::string cmd = std::string(g_cli_binary) + " " + args + " >" +
                      cap.string();
    if (!keep_stderr) cmd += " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(cap);
    fs::remove(cap);
    return r;
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "spinstar_cli_scratch";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("run writes csv and sidecar, bytes stable across reruns") {
    const fs::path dir = scratch_dir();
    const std::string out = (dir / "stable.csv").string();
    const std::string args =
        "run --mode exact --n 8 --alpha 0.7 --theta 1.1 --beta 0.4 "
        "--steps 11 --tmax 4 --out " + out;
    REQUIRE(run_cli(args).code == 0);
    const std::string csv1 = slurp(out);
    const std::string meta1 = slurp(out + ".meta.json");
    REQUIRE(run_cli(args).code == 0);
    CHECK(slurp(out) == csv1);
    CHECK(slurp(out + ".meta.json") == meta1);

    // header then 11 rows, LF endings, two columns
    CHECK(csv1.substr(0, csv1.find('\n')) == "t_gamma,exact");
    CHECK(csv1.find('\r') == std::string::npos);
    int lines = 0;
    for (char c : csv1)
        if (c == '\n') ++lines;
    CHECK(lines == 12);
    CHECK(meta1.find("\"alpha\": 0.7") != std::string::npos);
}

TEST_CASE("compare mode emits deviation columns and honors --assert") {
    const fs::path dir = scratch_dir();
    const std::string out = (dir / "cmp.csv").string();
    RunResult ok = run_cli(
        "run --mode compare --methods exact,oracle --n 5 --alpha 1.3 "
        "--steps 9 --tmax 6 --assert --assert-tol 1e-9 --out " + out);
    CHECK(ok.code == 0);
    CHECK(slurp(out).substr(0, slurp(out).find('\n')) ==
          "t_gamma,exact,oracle,absdev_exact_oracle");
    CHECK(slurp(out + ".meta.json").find("dev_exact_oracle_max") !=
          std::string::npos);

    // naive weak-coupling equation is far from exact here: assert must trip
    RunResult bad = run_cli(
        "run --mode compare --methods exact,naive --n 5 --alpha 1.3 "
        "--steps 9 --tmax 6 --assert --assert-tol 1e-9 --out " + out);
    CHECK(bad.code == 4);
    // same run without --assert reports but does not fail
    RunResult soft = run_cli(
        "run --mode compare --methods exact,naive --n 5 --alpha 1.3 "
        "--steps 9 --tmax 6 --out " + out);
    CHECK(soft.code == 0);
}

TEST_CASE("config errors exit 2 with structured stderr") {
    const fs::path dir = scratch_dir();
    CHECK(run_cli("run --mode bogus --out " + (dir / "x.csv").string()).code == 2);
    CHECK(run_cli("run --steps 1 --out " + (dir / "x.csv").string()).code == 2);
    CHECK(run_cli("run --no-such-flag").code == 2);
    CHECK(run_cli("figure fig99 --out-dir " + dir.string()).code == 2);

    const fs::path cfg = dir / "bad.json";
    std::ofstream(cfg) << "{\"mode\": \"exact\", \"mystery\": 3}\n";
    RunResult r = run_cli("run --config " + cfg.string());
    CHECK(r.code == 2);
    CHECK(r.out.find("\"error\":\"config\"") != std::string::npos);
    CHECK(r.out.find("mystery") != std::string::npos);
}

TEST_CASE("solver errors exit 3") {
    const fs::path dir = scratch_dir();
    RunResult r = run_cli("run --mode limit --alpha 0 --out " +
                          (dir / "x.csv").string());
    CHECK(r.code == 3);
    CHECK(r.out.find("\"error\":\"solver\"") != std::string::npos);
}

TEST_CASE("config file keys are overridden by explicit flags") {
    const fs::path dir = scratch_dir();
    const fs::path cfg = dir / "cfg.json";
    const std::string out1 = (dir / "from_cfg.csv").string();
    std::ofstream(cfg) << "{\"mode\": \"exact\", \"n\": 6, \"alpha\": 2.5, "
                          "\"theta\": 0.9, \"steps\": 7, \"tmax\": 3.0, "
                          "\"out\": \"" << out1 << "\"}\n";
    REQUIRE(run_cli("run --config " + cfg.string()).code == 0);
    const std::string meta1 = slurp(out1 + ".meta.json");
    CHECK(meta1.find("\"alpha\": 2.5") != std::string::npos);
    CHECK(meta1.find("\"n\": 6") != std::string::npos);

    const std::string out2 = (dir / "override.csv").string();
    REQUIRE(run_cli("run --config " + cfg.string() + " --alpha 0.25 --out " +
                    out2).code == 0);
    const std::string meta2 = slurp(out2 + ".meta.json");
    CHECK(meta2.find("\"alpha\": 0.25") != std::string::npos);
    CHECK(meta2.find("\"n\": 6") != std::string::npos); // untouched key kept
}

TEST_CASE("limit runs outside the weak-coupling regime carry a warning") {
    const fs::path dir = scratch_dir();
    const std::string out = (dir / "warn.csv").string();
    REQUIRE(run_cli("run --mode limit --alpha 3 --steps 5 --tmax 2 --out " +
                    out).code == 0);
    CHECK(slurp(out + ".meta.json").find("limit_validity") !=
          std::string::npos);
    const std::string out2 = (dir / "nowarn.csv").string();
    REQUIRE(run_cli("run --mode limit --alpha 0.5 --steps 5 --tmax 2 --out " +
                    out2).code == 0);
    CHECK(slurp(out2 + ".meta.json").find("limit_validity") ==
          std::string::npos);
}

TEST_CASE("figure subcommand writes csv plus sidecar") {
    const fs::path dir = scratch_dir() / "figs";
    REQUIRE(run_cli("figure fig4 --out-dir " + dir.string()).code == 0);
    const std::string csv = slurp(dir / "fig4.csv");
    CHECK(csv.substr(0, csv.find('\n')) ==
          "t_gamma,exact_n10,exact_n50,limit");
    const std::string meta = slurp(dir / "fig4.csv.meta.json");
    CHECK(meta.find("\"figure\": \"fig4\"") != std::string::npos);
    CHECK(meta.find("bath-size sweep") != std::string::npos);
}

TEST_CASE("selftest passes and is deterministic for a fixed seed") {
    RunResult a = run_cli("selftest --seed 11 --cases 5");
    RunResult b = run_cli("selftest --seed 11 --cases 5");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("5/5 cases within tolerance") != std::string::npos);
}

TEST_CASE("in-process config round trip") {
    spinstar::RunConfig c;
    c.mode = "compare";
    c.methods = {"exact", "limit", "tcl2"};
    c.bath_size = 12;
    c.alpha = 0.75;
    c.state.theta = 1.3;
    c.state.beta = 0.2;
    c.assert_enabled = true;
    c.assert_tol = 0.05;
    const spinstar::RunConfig back =
        spinstar::config_from_json(spinstar::config_to_json(c));
    CHECK(back.mode == c.mode);
    CHECK(back.methods == c.methods);
    CHECK(back.bath_size == c.bath_size);
    CHECK(back.alpha == doctest::Approx(c.alpha));
    CHECK(back.state.theta == doctest::Approx(c.state.theta));
    CHECK(back.assert_enabled);
    CHECK(back.assert_tol == doctest::Approx(c.assert_tol));

    CHECK_THROWS_AS(spinstar::config_from_json("not json"),
                    std::invalid_argument);
    CHECK_THROWS_AS(spinstar::config_from_json("{\"mode\": 3}"),
                    std::invalid_argument);

    spinstar::RunConfig dup;
    dup.mode = "compare";
    dup.methods = {"exact", "exact"};
    CHECK_THROWS_AS(dup.validate(), std::invalid_argument);
}
