#pragma once

#include "llg1d/model.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace llg1d {

// Integrator abort: some node collapsed before renormalization.
struct StepFailure : std::runtime_error {
    double time;
    explicit StepFailure(double t)
        : std::runtime_error("step failure: node norm collapsed at t=" + std::to_string(t)),
          time(t) {}
};

struct MeasurementFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Piecewise-constant control; segment i is active on (b[i], b[i+1]].
// Each segment carries one coefficient per noise channel.
struct ControlPath {
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> segment_values;

    bool empty() const { return segment_values.empty(); }
    std::vector<double> at(double t) const;
    double cost() const; // (1/2) sum |psi_i|^2 * segment length
    void validate(int n_channels) const;
};

struct Diagnostics {
    double l2 = 0.0;
    double h1 = 0.0;
    double linf = 0.0;
    double energy = 0.0;
    double sphere_residual = 0.0;
    double dist_h1_plus = 0.0;  // H1 distance to uniform (+1,0,0)
    double dist_h1_minus = 0.0; // H1 distance to uniform (-1,0,0)
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<Field> states;
    std::vector<Diagnostics> diags;
};

using RhsFn = std::function<Field(const Field&, double)>;

// Drift of the controlled skeleton equation:
// llg_drift(m, effective_field(m, K(t))) + sum_j sigma_j(m) psi_j(t).
Field rhs_skeleton(const Field& m, double t, const ControlPath& psi,
                   const AppliedFieldSchedule& K, const PhysicalParams& p,
                   const NoiseModel& noise, const Grid1D& g);

// Heun step of the supplied RHS followed by nodewise renormalization.
Field step_rk2_projected(const Field& m, double t, double dt, const RhsFn& rhs);

TrajectoryRecord solve_deterministic(const Field& m0, const ControlPath& psi,
                                     const AppliedFieldSchedule& K, const PhysicalParams& p,
                                     const NoiseModel& noise, const Grid1D& g,
                                     double dt, int record_every);

// Spectral-Galerkin cross-run of the same drift: state projected onto the
// first n_modes Neumann eigenmodes, no renormalization. The L2 norm of the
// solution is conserved up to integrator error.
TrajectoryRecord solve_galerkin(const Field& m0, const AppliedFieldSchedule& K,
                                const PhysicalParams& p, const Grid1D& g,
                                int n_modes, double dt, int record_every);

// (1/(2k^2 sqrt(l))) * alpha/(1+2alpha).
double stability_radius(const PhysicalParams& p, const Grid1D& g);

// max( (4b+4ab)/(3a), (2b+4ab-a)/a ).
double field_threshold(const PhysicalParams& p);

// min( a|H|+a-2b-4ab, (3/2)a|H|-2b-2ab ); nonpositive below the threshold.
double decay_rate_gamma(const PhysicalParams& p, double H_mag);

struct UandZCheck {
    bool claim1 = false; // (1-m1^2)/m1^2 + a(1-m1^2)^2/m1^2 - a m1^2 <= 0 everywhere
    bool claim2 = false; // <m(x), zeta> >= 3/4 everywhere
    bool claim3 = false; // (7/8)|m(x)-zeta|^2 <= |m(x) x zeta|^2 everywhere
    bool in_ball = false;
};

UandZCheck check_uandz(const Field& m, const Vec3& zeta, const PhysicalParams& p, const Grid1D& g);

// Least-squares fit of log(h1 distance to reference) against time; returns
// the rate r in distance ~ C exp(-r t). Truncates the window at the first
// nonpositive distance.
double measure_decay(const TrajectoryRecord& traj, const Field& reference, const Grid1D& g);

} // namespace llg1d
