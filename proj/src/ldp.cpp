#include "llg1d/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace llg1d {

Waypoints build_waypoints(double delta, const Grid1D& g) {
    if (!(delta > 0.0))
        throw std::invalid_argument("build_waypoints: delta must be positive");
    const double k = embedding_constant_k(g.length);
    const double sqrt_l = std::sqrt(g.length);
    // chord between consecutive great-circle points: 2 sin(pi / 2N);
    // require chord * sqrt(l) < 1/k with 10% slack
    int N = 1;
    while (2.0 * std::sin(M_PI / (2.0 * N)) * sqrt_l > 0.9 / k)
        ++N;
    Waypoints w;
    w.points.reserve(N + 1);
    for (int i = 0; i <= N; ++i) {
        double th = i * M_PI / N;
        w.points.push_back({-std::cos(th), std::sin(th), 0.0});
    }
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
        double gap_h1 = norm(w.points[i] - w.points[i + 1]) * sqrt_l;
        min_gap = std::min(min_gap, 1.0 / k - gap_h1);
    }
    w.eta = std::min(min_gap, delta / 2.0);
    return w;
}

double choose_R(const Waypoints& w, double T, const PhysicalParams& p, const Grid1D& g) {
    const double k = embedding_constant_k(g.length);
    const double seg_time = T / w.n_segments();
    const double threshold = field_threshold(p);
    auto ok = [&](double R) {
        return R > threshold
               && (1.0 / k) * std::exp(-0.5 * decay_rate_gamma(p, R) * seg_time) < w.eta;
    };
    double R = std::max(threshold, 0.01) * 1.05;
    while (!ok(R))
        R *= 1.05;
    return 1.1 * R;
}

ReversalPlan build_reversal_plan(double delta, double T, const PhysicalParams& p,
                                 const NoiseModel& noise, const Grid1D& g) {
    if (noise.mode != NoiseMode::three_directions)
        throw std::invalid_argument("build_reversal_plan: three-direction noise required");
    if (std::abs(noise.direction_det()) < 1e-12)
        throw std::invalid_argument("build_reversal_plan: noise direction matrix is singular");

    ReversalPlan plan;
    plan.waypoints = build_waypoints(delta, g);
    plan.R = choose_R(plan.waypoints, T, p, g);
    const int N = plan.waypoints.n_segments();

    // columns of the 3x3 system are the noise directions
    const Vec3 a1 = noise.directions[0], a2 = noise.directions[1], a3 = noise.directions[2];
    const double det = noise.direction_det();

    for (int i = 0; i < N; ++i) {
        const Vec3& u = plan.waypoints.points[i + 1];
        Vec3 K = plan.R * u + p.beta * Vec3{0.0, u.y, u.z};
        plan.schedule.segment_values.push_back(K);
        // Cramer's rule for [a1 a2 a3] phi = K
        double p1 = dot(K, cross(a2, a3)) / det;
        double p2 = dot(a1, cross(K, a3)) / det;
        double p3 = dot(a1, cross(a2, K)) / det;
        plan.control.segment_values.push_back({p1, p2, p3});
    }
    for (int i = 0; i <= N; ++i) {
        plan.schedule.breakpoints.push_back(i * T / N);
        plan.control.breakpoints.push_back(i * T / N);
    }
    plan.cost = plan.control.cost();
    return plan;
}

double control_cost(const ControlPath& psi) { return psi.cost(); }

RateUpperBound rate_upper_bound(const TrajectoryPredicate& target_check, const ControlPath& psi,
                                const Field& m0, const AppliedFieldSchedule& K,
                                const PhysicalParams& p, const NoiseModel& noise,
                                const Grid1D& g, double dt, int record_every) {
    TrajectoryRecord traj = solve_deterministic(m0, psi, K, p, noise, g, dt, record_every);
    RateUpperBound r;
    r.cost = psi.cost();
    r.achieved = target_check(traj);
    r.terminal_distance = traj.diags.back().dist_h1_plus;
    return r;
}

double lower_bound_probability(double cost, double xi, double eps) {
    if (cost < 0.0 || !(xi > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("lower_bound_probability: bad arguments");
    return std::min(1.0, std::exp(-(cost + xi) / eps));
}

double upper_bound_probability(double r, double rho, double xi, double eps,
                               const PhysicalParams& p, const NoiseModel& noise,
                               const Grid1D& g) {
    if (noise.mode != NoiseMode::three_directions)
        throw std::invalid_argument("upper_bound_probability: three-direction noise required");
    if (!(r > 0.0) || r >= rho)
        throw std::invalid_argument("upper_bound_probability: need 0 < r < rho");
    PhysicalParams pp = p;
    if (rho > stability_radius(pp, g) + 1e-15)
        throw std::invalid_argument("upper_bound_probability: rho exceeds the stability radius");
    double max_a2 = 0.0;
    for (const auto& a : noise.directions)
        max_a2 = std::max(max_a2, norm2(a));
    double exponent = -p.alpha * p.beta * r * r
                      / (8.0 * max_a2 * g.length * (1.0 + p.alpha * p.alpha))
                      + xi;
    return std::min(1.0, std::exp(exponent / eps));
}

void wilson_interval(int successes, int n, double& lo, double& hi) {
    const double z = 1.959963984540054; // 95%
    double phat = static_cast<double>(successes) / n;
    double z2n = z * z / n;
    double center = (phat + z2n / 2.0) / (1.0 + z2n);
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2n / (4.0 * n)) / (1.0 + z2n);
    lo = std::max(0.0, center - half);
    hi = std::min(1.0, center + half);
}

EventEstimate estimate_event_probability(const SdeRunConfig& cfg, const Field& m0,
                                         EventKind event, double event_radius,
                                         int n_paths, std::uint64_t base_seed) {
    if (n_paths < 100)
        throw std::invalid_argument("estimate_event_probability: need n_paths >= 100");
    EnsembleResult ens = simulate_ensemble(cfg, m0, n_paths, base_seed, event_radius);
    EventEstimate est;
    est.n_paths = n_paths;
    est.n_failures = ens.n_failures;
    for (const auto& s : ens.paths) {
        if (s.failed)
            continue;
        bool hit = event == EventKind::reversal ? s.terminal_dist_plus < event_radius
                                                : s.max_excursion >= event_radius;
        if (hit)
            ++est.n_events;
    }
    est.p_hat = static_cast<double>(est.n_events) / n_paths;
    wilson_interval(est.n_events, n_paths, est.wilson_lo, est.wilson_hi);
    est.degraded = ens.n_failures > n_paths / 100;
    return est;
}

} // namespace llg1d
