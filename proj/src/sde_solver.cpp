#include "llg1d/sde_solver.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

namespace llg1d {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t split_seed(std::uint64_t base_seed, std::uint64_t index) {
    return splitmix64(base_seed ^ splitmix64(index));
}

BrownianDriver::BrownianDriver(std::uint64_t seed, int n_channels, double dt, long n_steps)
    : rng_(splitmix64(seed)), gauss_(0.0, 1.0), buf_(n_channels),
      sqrt_dt_(std::sqrt(dt)), n_steps_(n_steps) {}

const std::vector<double>& BrownianDriver::next() {
    for (auto& w : buf_)
        w = sqrt_dt_ * gauss_(rng_);
    ++drawn_;
    return buf_;
}

void SdeRunConfig::validate() const {
    params.validate();
    if (!(params.eps > 0.0))
        throw std::invalid_argument("sde: eps must be positive for stochastic runs");
    noise.validate(grid);
    applied_field.validate();
    control.validate(noise.n_channels());
    if (!(dt > 0.0))
        throw std::invalid_argument("sde: dt must be positive");
    if (record_every < 1)
        throw std::invalid_argument("sde: record_every must be >= 1");
}

// Deterministic drift shared by both schemes: skeleton RHS (field + control).
static Field sde_drift(const Field& m, double t, const SdeRunConfig& cfg) {
    return rhs_skeleton(m, t, cfg.control, cfg.applied_field, cfg.params, cfg.noise, cfg.grid);
}

Field heun_stratonovich_step(const Field& m, double t, double dt,
                             const std::vector<double>& dW, const SdeRunConfig& cfg) {
    const double sq_eps = std::sqrt(cfg.params.eps);
    const int nc = cfg.noise.n_channels();
    const std::size_t n = m.size();

    Field b0 = sde_drift(m, t, cfg);
    Field pred(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 dv = dt * b0[i];
        for (int c = 0; c < nc; ++c)
            dv += (sq_eps * dW[c]) * diffusion_channel_point(m[i], cfg.noise.channel_dir(c, i),
                                                             cfg.params.alpha);
        pred[i] = m[i] + dv;
    }
    Field b1 = sde_drift(pred, t + dt, cfg);
    Field out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 dv = 0.5 * dt * (b0[i] + b1[i]);
        for (int c = 0; c < nc; ++c) {
            Vec3 s0 = diffusion_channel_point(m[i], cfg.noise.channel_dir(c, i), cfg.params.alpha);
            Vec3 s1 = diffusion_channel_point(pred[i], cfg.noise.channel_dir(c, i),
                                              cfg.params.alpha);
            dv += (0.5 * sq_eps * dW[c]) * (s0 + s1);
        }
        out[i] = m[i] + dv;
        if (norm(out[i]) < 1e-6)
            throw StepFailure(t);
        out[i] = normalized(out[i]);
    }
    return out;
}

Field euler_ito_corrected_step(const Field& m, double t, double dt,
                               const std::vector<double>& dW, const SdeRunConfig& cfg) {
    const double sq_eps = std::sqrt(cfg.params.eps);
    const int nc = cfg.noise.n_channels();
    const std::size_t n = m.size();

    Field b0 = sde_drift(m, t, cfg);
    Field corr = ito_correction(m, cfg.noise, cfg.params.alpha);
    Field out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 dv = dt * (b0[i] + (cfg.ito_correction_scale * cfg.params.eps) * corr[i]);
        for (int c = 0; c < nc; ++c)
            dv += (sq_eps * dW[c]) * diffusion_channel_point(m[i], cfg.noise.channel_dir(c, i),
                                                             cfg.params.alpha);
        out[i] = m[i] + dv;
        if (norm(out[i]) < 1e-6)
            throw StepFailure(t);
        out[i] = normalized(out[i]);
    }
    return out;
}

static Diagnostics sde_diagnostics(const Field& m, const SdeRunConfig& cfg, double t) {
    Diagnostics d;
    FieldNorms nm = norms(m, cfg.grid);
    d.l2 = nm.l2;
    d.h1 = nm.h1;
    d.linf = nm.linf;
    d.energy = energy(m, cfg.applied_field.at(t), cfg.params, cfg.grid);
    d.sphere_residual = sphere_residual(m);
    d.dist_h1_plus = dist_h1(m, uniform_field(cfg.grid, {1, 0, 0}), cfg.grid);
    d.dist_h1_minus = dist_h1(m, uniform_field(cfg.grid, {-1, 0, 0}), cfg.grid);
    return d;
}

TrajectoryRecord simulate_path(const SdeRunConfig& cfg, const Field& m0) {
    cfg.validate();
    const long n_steps = std::lround(cfg.params.horizon_T / cfg.dt);
    BrownianDriver driver(cfg.seed, cfg.noise.n_channels(), cfg.dt, n_steps);

    TrajectoryRecord rec;
    Field m = m0;
    rec.times.push_back(0.0);
    rec.states.push_back(m);
    rec.diags.push_back(sde_diagnostics(m, cfg, 0.0));
    double t = 0.0;
    for (long s = 1; s <= n_steps; ++s) {
        const auto& dW = driver.next();
        if (cfg.scheme == SdeScheme::heun_stratonovich)
            m = heun_stratonovich_step(m, t, cfg.dt, dW, cfg);
        else
            m = euler_ito_corrected_step(m, t, cfg.dt, dW, cfg);
        t = s * cfg.dt;
        if (s % cfg.record_every == 0 || s == n_steps) {
            rec.times.push_back(t);
            rec.states.push_back(m);
            rec.diags.push_back(sde_diagnostics(m, cfg, t));
        }
    }
    return rec;
}

int worker_count_from_env() {
    const char* env = std::getenv("LLG1D_THREADS");
    if (env == nullptr)
        return 1;
    int n = std::atoi(env);
    if (n <= 0)
        return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return n;
}

EnsembleResult simulate_ensemble(const SdeRunConfig& cfg, const Field& m0, int n_paths,
                                 std::uint64_t base_seed, double reversal_delta,
                                 int n_threads) {
    if (n_paths < 1)
        throw std::invalid_argument("simulate_ensemble: n_paths must be >= 1");
    if (n_threads < 0)
        n_threads = worker_count_from_env();
    n_threads = std::min(n_threads, n_paths);

    EnsembleResult res;
    res.paths.resize(n_paths);

    auto run_one = [&](int i) {
        PathSummary s;
        s.path_id = static_cast<std::uint64_t>(i);
        SdeRunConfig pc = cfg;
        pc.seed = split_seed(base_seed, static_cast<std::uint64_t>(i));
        try {
            TrajectoryRecord rec = simulate_path(pc, m0);
            s.terminal_dist_plus = rec.diags.back().dist_h1_plus;
            s.terminal_dist_minus = rec.diags.back().dist_h1_minus;
            for (std::size_t k = 0; k < rec.states.size(); ++k)
                s.max_excursion = std::max(s.max_excursion, dist_h1(rec.states[k], m0, cfg.grid));
            s.reversal = s.terminal_dist_plus < reversal_delta;
        } catch (const StepFailure& f) {
            s.failed = true;
            s.fail_time = f.time;
        }
        res.paths[i] = s;
    };

    if (n_threads <= 1) {
        for (int i = 0; i < n_paths; ++i)
            run_one(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int w = 0; w < n_threads; ++w)
            pool.emplace_back([&, w] {
                for (int i = w; i < n_paths; i += n_threads)
                    run_one(i);
            });
        for (auto& th : pool)
            th.join();
    }
    for (const auto& s : res.paths)
        if (s.failed)
            ++res.n_failures;
    return res;
}

} // namespace llg1d
