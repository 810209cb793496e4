// Command-line front end: config-driven runs, plan construction, rare-event
// estimation and the verification suite.
#include "llg1d/config.hpp"
#include "llg1d/output.hpp"
#include "llg1d/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace llg1d;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> paths;
    std::optional<int> record_every;
};

RunConfig load_with_overrides(const CommonOpts& o) {
    RunConfig cfg = load_config(o.config_path);
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.paths)
        cfg.n_paths = *o.paths;
    if (o.record_every)
        cfg.record_every = *o.record_every;
    cfg.validate();
    return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

json diag_json(const Diagnostics& d) {
    return {{"l2", d.l2},
            {"h1", d.h1},
            {"linf", d.linf},
            {"energy", d.energy},
            {"sphere_residual", d.sphere_residual},
            {"dist_h1_plus", d.dist_h1_plus},
            {"dist_h1_minus", d.dist_h1_minus}};
}

int cmd_run_det(const CommonOpts& o) {
    RunConfig cfg = load_with_overrides(o);
    if (cfg.params.eps != 0.0)
        throw ConfigError("run-det: eps must be 0 or absent (use run-sde for noisy runs)");
    fs::create_directories(o.out_dir);

    Field m0 = cfg.initial.realize(cfg.grid);
    TrajectoryRecord rec = solve_deterministic(m0, cfg.control, cfg.schedule, cfg.params,
                                               cfg.noise, cfg.grid, cfg.dt, cfg.record_every);

    std::ostringstream csv;
    write_trajectory_csv(csv, rec, 0);
    write_text(fs::path(o.out_dir) / "trajectory.csv", csv.str());
    if (cfg.dump_states) {
        std::ostringstream st;
        write_states_csv(st, rec, cfg.grid, 0);
        write_text(fs::path(o.out_dir) / "states.csv", st.str());
    }

    bool dist_minus_monotone = true, grad_monotone = true;
    double prev_d = rec.diags.front().dist_h1_minus;
    double prev_g = norms(rec.states.front(), cfg.grid).grad_l2;
    for (std::size_t i = 1; i < rec.diags.size(); ++i) {
        double g = norms(rec.states[i], cfg.grid).grad_l2;
        if (rec.diags[i].dist_h1_minus > prev_d + 1e-12)
            dist_minus_monotone = false;
        if (g > prev_g + 1e-12)
            grad_monotone = false;
        prev_d = rec.diags[i].dist_h1_minus;
        prev_g = g;
    }

    json summary;
    summary["final"] = diag_json(rec.diags.back());
    summary["final_time"] = rec.times.back();
    summary["dist_h1_minus_nonincreasing"] = dist_minus_monotone;
    summary["grad_l2_nonincreasing"] = grad_monotone;
    write_text(fs::path(o.out_dir) / "summary.json", summary.dump(2) + "\n");
    std::cout << "run-det: final dist_h1_plus " << format_double(rec.diags.back().dist_h1_plus)
              << ", dist_h1_minus " << format_double(rec.diags.back().dist_h1_minus) << '\n';
    return kExitOk;
}

int cmd_run_sde(const CommonOpts& o) {
    RunConfig cfg = load_with_overrides(o);
    if (cfg.params.eps == 0.0)
        throw ConfigError("run-sde: eps is 0; this is a deterministic problem, use run-det");
    fs::create_directories(o.out_dir);
    SdeRunConfig sc = cfg.to_sde_config();
    Field m0 = cfg.initial.realize(cfg.grid);

    std::ostringstream csv, states;
    json paths = json::array();
    bool any_failed = false;
    double first_fail_time = 0.0;
    for (int i = 0; i < cfg.n_paths; ++i) {
        SdeRunConfig pc = sc;
        pc.seed = cfg.n_paths == 1 ? cfg.seed : split_seed(cfg.seed, static_cast<std::uint64_t>(i));
        json entry;
        entry["path_id"] = i;
        entry["seed"] = pc.seed;
        try {
            TrajectoryRecord rec = simulate_path(pc, m0);
            write_trajectory_csv(csv, rec, static_cast<std::uint64_t>(i), i == 0);
            if (cfg.dump_states)
                write_states_csv(states, rec, cfg.grid, static_cast<std::uint64_t>(i));
            entry["failed"] = false;
            entry["final"] = diag_json(rec.diags.back());
        } catch (const StepFailure& f) {
            if (!any_failed)
                first_fail_time = f.time;
            any_failed = true;
            entry["failed"] = true;
            entry["fail_time"] = f.time;
        }
        paths.push_back(entry);
    }
    write_text(fs::path(o.out_dir) / "trajectory.csv", csv.str());
    if (cfg.dump_states)
        write_text(fs::path(o.out_dir) / "states.csv", states.str());

    json summary;
    summary["scheme"] = cfg.scheme == SdeScheme::heun_stratonovich ? "heun_stratonovich"
                                                                   : "euler_ito_corrected";
    summary["seed"] = cfg.seed;
    summary["n_paths"] = cfg.n_paths;
    summary["paths"] = paths;
    write_text(fs::path(o.out_dir) / "summary.json", summary.dump(2) + "\n");

    if (any_failed) {
        std::cerr << "run-sde: step failure at t=" << format_double(first_fail_time) << '\n';
        return kExitRuntime;
    }
    std::cout << "run-sde: " << cfg.n_paths << " path(s) completed\n";
    return kExitOk;
}

int cmd_build_plan(const CommonOpts& o, double delta, double xi, std::vector<double> eps_list) {
    RunConfig cfg = load_with_overrides(o);
    fs::create_directories(o.out_dir);
    ReversalPlan plan = build_reversal_plan(delta, cfg.params.horizon_T, cfg.params, cfg.noise,
                                            cfg.grid);
    write_text(fs::path(o.out_dir) / "plan.json", serialize_plan(plan) + "\n");

    std::cout << "build-plan: N " << plan.waypoints.n_segments() << ", R " << format_double(plan.R)
              << ", eta " << format_double(plan.waypoints.eta) << ", cost "
              << format_double(plan.cost) << '\n';
    if (eps_list.empty())
        eps_list = {1.0, 0.1, 0.01};
    for (double eps : eps_list)
        std::cout << "  lower bound at eps " << format_double(eps) << " (xi "
                  << format_double(xi) << "): "
                  << format_double(lower_bound_probability(plan.cost, xi, eps)) << '\n';
    return kExitOk;
}

int cmd_estimate(const CommonOpts& o, const std::string& event_name, double radius, double xi) {
    RunConfig cfg = load_with_overrides(o);
    if (cfg.n_paths < 100)
        throw ConfigError("estimate: need at least 100 paths (--paths)");
    fs::create_directories(o.out_dir);
    SdeRunConfig sc = cfg.to_sde_config();
    Field m0 = cfg.initial.realize(cfg.grid);
    EventKind kind = event_name == "exit" ? EventKind::exit : EventKind::reversal;

    EventEstimate est = estimate_event_probability(sc, m0, kind, radius, cfg.n_paths, cfg.seed);

    json summary;
    summary["event"] = event_name;
    summary["radius"] = radius;
    summary["p_hat"] = est.p_hat;
    summary["wilson_lo"] = est.wilson_lo;
    summary["wilson_hi"] = est.wilson_hi;
    summary["n_events"] = est.n_events;
    summary["n_paths"] = est.n_paths;
    summary["n_failures"] = est.n_failures;
    summary["degraded"] = est.degraded;

    std::cout << "estimate: p_hat " << format_double(est.p_hat) << ", wilson ["
              << format_double(est.wilson_lo) << ", " << format_double(est.wilson_hi) << "], "
              << est.n_events << "/" << est.n_paths << " events, " << est.n_failures
              << " failures\n";
    if (est.degraded)
        std::cerr << "estimate: warning: more than 1% of paths failed, estimate degraded\n";

    // analytic companions where the formulas apply
    if (!cfg.control.empty()) {
        double cost = cfg.control.cost();
        double lb = lower_bound_probability(cost, xi, cfg.params.eps);
        summary["lower_bound"] = lb;
        std::cout << "  lower bound (control cost " << format_double(cost) << ", xi "
                  << format_double(xi) << "): " << format_double(lb) << '\n';
    }
    if (kind == EventKind::exit && cfg.noise.mode == NoiseMode::three_directions) {
        try {
            double ub = upper_bound_probability(0.95 * radius, radius, xi, cfg.params.eps,
                                                cfg.params, cfg.noise, cfg.grid);
            summary["upper_bound"] = ub;
            std::cout << "  upper bound (r 0.95*radius, xi " << format_double(xi)
                      << "): " << format_double(ub) << '\n';
        } catch (const std::invalid_argument&) {
            std::cout << "  upper bound: not applicable at these parameters\n";
        }
    }
    write_text(fs::path(o.out_dir) / "estimate.json", summary.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const std::string& level) {
    bool full = level == "full";
    auto results = verify::run_suite(full);
    int failures = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty())
            std::cout << " (" << r.detail << ")";
        std::cout << '\n';
        if (!r.pass)
            ++failures;
    }
    std::cout << results.size() - failures << "/" << results.size() << " checks passed\n";
    return failures == 0 ? kExitOk : kExitRuntime;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D stochastic Landau-Lifshitz-Gilbert laboratory"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub, bool need_config) {
        auto* c = sub->add_option("--config", opts.config_path, "configuration file (JSON)");
        if (need_config)
            c->required();
        sub->add_option("--seed", [&](const std::vector<std::string>& v) {
            opts.seed = std::stoull(v.back());
            return true;
        }, "override the config seed");
        sub->add_option("--paths", [&](const std::vector<std::string>& v) {
            opts.paths = std::stoi(v.back());
            return true;
        }, "override the number of paths");
        sub->add_option("--record-every", [&](const std::vector<std::string>& v) {
            opts.record_every = std::stoi(v.back());
            return true;
        }, "override the recording stride");
        sub->add_option("--out", opts.out_dir, "output directory");
    };

    auto* run_det = app.add_subcommand("run-det", "deterministic / controlled skeleton run");
    add_common(run_det, true);

    auto* run_sde = app.add_subcommand("run-sde", "stochastic run");
    add_common(run_sde, true);

    double delta = 0.1, xi = 0.1, radius = 0.1;
    std::vector<double> eps_list;
    auto* build_plan = app.add_subcommand("build-plan", "construct a reversal field schedule");
    add_common(build_plan, true);
    build_plan->add_option("--delta", delta, "target ball radius around (1,0,0)");
    build_plan->add_option("--xi", xi, "slack in the probability lower bound");
    build_plan->add_option("--eps", eps_list, "noise levels to report the lower bound at");

    std::string event_name = "reversal";
    auto* estimate = app.add_subcommand("estimate", "Monte Carlo event probability");
    add_common(estimate, true);
    estimate->add_option("--event", event_name, "reversal or exit")
        ->check(CLI::IsMember({"reversal", "exit"}));
    estimate->add_option("--radius", radius, "event radius (delta or rho)");
    estimate->add_option("--xi", xi, "slack in the analytic bounds");

    std::string level = "quick";
    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
    verify_cmd->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (run_det->parsed())
            return cmd_run_det(opts);
        if (run_sde->parsed())
            return cmd_run_sde(opts);
        if (build_plan->parsed())
            return cmd_build_plan(opts, delta, xi, eps_list);
        if (estimate->parsed())
            return cmd_estimate(opts, event_name, radius, xi);
        if (verify_cmd->parsed())
            return cmd_verify(level);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const StepFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitValidation;
}
