#pragma once

#include "llg1d/sde_solver.hpp"

#include <functional>

namespace llg1d {

// Great-circle waypoints from (-1,0,0) to (1,0,0) with H1-gap margin eta.
struct Waypoints {
    std::vector<Vec3> points; // u^0 .. u^N
    double eta = 0.0;

    int n_segments() const { return static_cast<int>(points.size()) - 1; }
};

struct ReversalPlan {
    Waypoints waypoints;
    double R = 0.0;
    AppliedFieldSchedule schedule; // K(t) on (iT/N, (i+1)T/N]
    ControlPath control;           // phi(t) solving [a1 a2 a3] phi = K segmentwise
    double cost = 0.0;             // (1/2) int |phi|^2
};

Waypoints build_waypoints(double delta, const Grid1D& g);

// Smallest R on a 1.05-geometric grid with (1/k) exp(-gamma(R) T / (2N)) < eta
// and R above field_threshold, times a 1.1 safety factor.
double choose_R(const Waypoints& w, double T, const PhysicalParams& p, const Grid1D& g);

ReversalPlan build_reversal_plan(double delta, double T, const PhysicalParams& p,
                                 const NoiseModel& noise, const Grid1D& g);

double control_cost(const ControlPath& psi);

struct RateUpperBound {
    double cost = 0.0;
    bool achieved = false;
    double terminal_distance = 0.0;
};

using TrajectoryPredicate = std::function<bool(const TrajectoryRecord&)>;

// Runs the skeleton flow under psi; if the trajectory satisfies the predicate,
// the control cost certifies an upper bound for the rate-function infimum.
RateUpperBound rate_upper_bound(const TrajectoryPredicate& target_check, const ControlPath& psi,
                                const Field& m0, const AppliedFieldSchedule& K,
                                const PhysicalParams& p, const NoiseModel& noise,
                                const Grid1D& g, double dt, int record_every);

// exp(-(cost + xi)/eps), clamped to (0,1].
double lower_bound_probability(double cost, double xi, double eps);

// exp((1/eps)(-alpha beta r^2 / (8 max|a^i|^2 l (1+alpha^2)) + xi)), clamped to 1.
double upper_bound_probability(double r, double rho, double xi, double eps,
                               const PhysicalParams& p, const NoiseModel& noise,
                               const Grid1D& g);

enum class EventKind { reversal, exit };

struct EventEstimate {
    double p_hat = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    int n_events = 0;
    int n_paths = 0;
    int n_failures = 0;
    bool degraded = false; // more than 1% of paths failed
};

// Wilson score interval at 95%.
void wilson_interval(int successes, int n, double& lo, double& hi);

EventEstimate estimate_event_probability(const SdeRunConfig& cfg, const Field& m0,
                                         EventKind event, double event_radius,
                                         int n_paths, std::uint64_t base_seed);

} // namespace llg1d
