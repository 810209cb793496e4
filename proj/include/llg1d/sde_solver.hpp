#pragma once

#include "llg1d/det_solver.hpp"

#include <cstdint>
#include <random>

namespace llg1d {

// Reproducible Gaussian increments: fixed (seed, dt, n_steps, n_channels)
// gives a bit-identical sequence.
class BrownianDriver {
  public:
    BrownianDriver(std::uint64_t seed, int n_channels, double dt, long n_steps);

    // Increments for one time step, variance dt per channel.
    const std::vector<double>& next();
    long steps_drawn() const { return drawn_; }

  private:
    std::mt19937_64 rng_;
    std::normal_distribution<double> gauss_;
    std::vector<double> buf_;
    double sqrt_dt_;
    long n_steps_;
    long drawn_ = 0;
};

// Counter-based split: path i of an ensemble uses split_seed(base, i).
std::uint64_t split_seed(std::uint64_t base_seed, std::uint64_t index);

enum class SdeScheme { heun_stratonovich, euler_ito_corrected };

struct SdeRunConfig {
    SdeScheme scheme = SdeScheme::heun_stratonovich;
    PhysicalParams params;
    NoiseModel noise;
    ControlPath control;         // optional deterministic-in-time control
    AppliedFieldSchedule applied_field;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    int record_every = 1;
    Grid1D grid;
    double ito_correction_scale = 1.0; // test hook for the negative control

    void validate() const;
};

Field heun_stratonovich_step(const Field& m, double t, double dt,
                             const std::vector<double>& dW, const SdeRunConfig& cfg);
Field euler_ito_corrected_step(const Field& m, double t, double dt,
                               const std::vector<double>& dW, const SdeRunConfig& cfg);

TrajectoryRecord simulate_path(const SdeRunConfig& cfg, const Field& m0);

struct PathSummary {
    std::uint64_t path_id = 0;
    bool failed = false;
    double fail_time = 0.0;
    double terminal_dist_plus = 0.0;
    double terminal_dist_minus = 0.0;
    double max_excursion = 0.0; // max over recorded times of H1 distance to m0
    bool reversal = false;      // terminal_dist_plus < reversal_delta
};

struct EnsembleResult {
    std::vector<PathSummary> paths;
    int n_failures = 0;
};

// Runs n_paths independent paths; path i is seeded with split_seed(base_seed, i).
// Results are independent of worker count (LLG1D_THREADS, 0 = auto, or the
// explicit n_threads argument when nonnegative).
EnsembleResult simulate_ensemble(const SdeRunConfig& cfg, const Field& m0, int n_paths,
                                 std::uint64_t base_seed, double reversal_delta,
                                 int n_threads = -1);

int worker_count_from_env();

} // namespace llg1d
