// Acceptance gate: one pass/fail line per criterion. Optional argv[1] is the
// path to the CLI binary, used for the byte-identity part of the determinism
// criterion.
#include "llg1d/verify.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void report(int criterion, const std::string& title, const llg1d::verify::CheckResult& r) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " [criterion " << criterion << "] " << title;
    if (!r.detail.empty())
        std::cout << " -- " << r.detail;
    std::cout << std::endl;
    if (!r.pass)
        ++g_failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Repeat a short CLI ensemble run under two thread counts; outputs must be
// byte-identical.
bool cli_byte_identity(const std::string& cli) {
    const std::string dir = "acceptance_cli_tmp";
    const std::string cfg_path = dir + "/config.json";
    if (std::system(("mkdir -p " + dir).c_str()) != 0)
        return false;
    std::ofstream cfg(cfg_path);
    cfg << R"({
  "grid": {"length": 1.0, "n_points": 9},
  "params": {"alpha": 1.0, "beta": 0.1, "eps": 0.05, "horizon_T": 0.5},
  "noise": {"mode": "three_directions",
            "directions": [[1,0,0],[0,1,0],[0,0,1]]},
  "dt": 0.001, "seed": 42, "n_paths": 4, "record_every": 100,
  "initial": {"type": "uniform", "value": [-1,0,0]}
})";
    cfg.close();
    auto run = [&](const std::string& threads, const std::string& out) {
        std::string cmd = "LLG1D_THREADS=" + threads + " " + cli + " run-sde --config " + cfg_path
                          + " --out " + dir + "/" + out + " >/dev/null";
        return std::system(cmd.c_str()) == 0;
    };
    if (!run("1", "a") || !run("1", "b") || !run("3", "c"))
        return false;
    std::string a = slurp(dir + "/a/trajectory.csv");
    std::string b = slurp(dir + "/b/trajectory.csv");
    std::string c = slurp(dir + "/c/trajectory.csv");
    std::string sa = slurp(dir + "/a/summary.json");
    std::string sb = slurp(dir + "/b/summary.json");
    return !a.empty() && a == b && a == c && sa == sb;
}

} // namespace

int main(int argc, char** argv) {
    using namespace llg1d::verify;

    report(1, "sphere constraint", check_sphere_constraint());
    report(2, "harmonic-maps identity refinement", check_harmonic_identity());
    report(3, "Stratonovich/Ito consistency", check_stratonovich_ito_consistency());
    report(4, "stability of the rest state", check_stability());
    report(5, "exponential decay above the field threshold", check_exponential_decay());
    report(6, "uniformity preservation vs ODE oracle", check_uniformity_preservation());
    report(7, "reversal construction end to end", check_reversal_construction(true));
    report(8, "bound formulas and monotonicity", check_bound_formulas());

    CheckResult det = check_determinism();
    if (det.pass && argc > 1) {
        bool cli_ok = cli_byte_identity(argv[1]);
        det.pass = cli_ok;
        det.detail += cli_ok ? ", CLI outputs byte-identical across reruns and thread counts"
                             : ", CLI outputs NOT byte-identical";
    }
    report(9, "determinism and thread-count invariance", det);

    std::cout << (g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << 9 - g_failures << "/9)" << std::endl;
    return g_failures == 0 ? 0 : 1;
}
