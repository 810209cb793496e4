#include "llg1d/det_solver.hpp"

#include <cmath>

namespace llg1d {

std::vector<double> ControlPath::at(double t) const {
    if (segment_values.empty())
        return {};
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (t <= breakpoints[i + 1])
            return segment_values[i];
    return segment_values.back();
}

double ControlPath::cost() const {
    double c = 0.0;
    for (std::size_t i = 0; i < segment_values.size(); ++i) {
        double len = breakpoints[i + 1] - breakpoints[i];
        double sq = 0.0;
        for (double v : segment_values[i])
            sq += v * v;
        c += 0.5 * sq * len;
    }
    return c;
}

void ControlPath::validate(int n_channels) const {
    if (segment_values.empty() && breakpoints.empty())
        return;
    if (breakpoints.size() != segment_values.size() + 1)
        throw std::invalid_argument("control: need one value per segment");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i + 1] < breakpoints[i])
            throw std::invalid_argument("control: breakpoints must be nondecreasing");
    for (const auto& v : segment_values)
        if (static_cast<int>(v.size()) != n_channels)
            throw std::invalid_argument("control: channel count mismatch with noise mode");
}

Field rhs_skeleton(const Field& m, double t, const ControlPath& psi,
                   const AppliedFieldSchedule& K, const PhysicalParams& p,
                   const NoiseModel& noise, const Grid1D& g) {
    Field h_eff = effective_field(m, K.at(t), p, g);
    Field out = llg_drift(m, h_eff, p.alpha);
    if (!psi.empty()) {
        std::vector<double> c = psi.at(t);
        for (int ch = 0; ch < noise.n_channels(); ++ch) {
            if (c[ch] == 0.0)
                continue;
            for (std::size_t i = 0; i < m.size(); ++i)
                out[i] += c[ch] * diffusion_channel_point(m[i], noise.channel_dir(ch, i), p.alpha);
        }
    }
    return out;
}

Field step_rk2_projected(const Field& m, double t, double dt, const RhsFn& rhs) {
    Field k1 = rhs(m, t);
    Field pred(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        pred[i] = m[i] + dt * k1[i];
    Field k2 = rhs(pred, t + dt);
    Field out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i] = m[i] + 0.5 * dt * (k1[i] + k2[i]);
        if (norm(out[i]) < 1e-6)
            throw StepFailure(t);
        out[i] = normalized(out[i]);
    }
    return out;
}

static Diagnostics diagnostics_of(const Field& m, const Vec3& K, const PhysicalParams& p,
                                  const Grid1D& g) {
    Diagnostics d;
    FieldNorms nm = norms(m, g);
    d.l2 = nm.l2;
    d.h1 = nm.h1;
    d.linf = nm.linf;
    d.energy = energy(m, K, p, g);
    d.sphere_residual = sphere_residual(m);
    d.dist_h1_plus = dist_h1(m, uniform_field(g, {1, 0, 0}), g);
    d.dist_h1_minus = dist_h1(m, uniform_field(g, {-1, 0, 0}), g);
    return d;
}

TrajectoryRecord solve_deterministic(const Field& m0, const ControlPath& psi,
                                     const AppliedFieldSchedule& K, const PhysicalParams& p,
                                     const NoiseModel& noise, const Grid1D& g,
                                     double dt, int record_every) {
    if (!(dt > 0.0))
        throw std::invalid_argument("solve_deterministic: dt must be positive");
    if (record_every < 1)
        throw std::invalid_argument("solve_deterministic: record_every must be >= 1");
    const long n_steps = std::lround(p.horizon_T / dt);
    if (std::abs(n_steps * dt - p.horizon_T) > 1e-9 * p.horizon_T)
        throw std::invalid_argument("solve_deterministic: dt does not divide horizon");

    RhsFn rhs = [&](const Field& m, double t) { return rhs_skeleton(m, t, psi, K, p, noise, g); };

    TrajectoryRecord rec;
    Field m = m0;
    double t = 0.0;
    rec.times.push_back(0.0);
    rec.states.push_back(m);
    rec.diags.push_back(diagnostics_of(m, K.at(0.0), p, g));
    for (long s = 1; s <= n_steps; ++s) {
        m = step_rk2_projected(m, t, dt, rhs);
        t = s * dt;
        if (s % record_every == 0 || s == n_steps) {
            rec.times.push_back(t);
            rec.states.push_back(m);
            rec.diags.push_back(diagnostics_of(m, K.at(t), p, g));
        }
    }
    return rec;
}

TrajectoryRecord solve_galerkin(const Field& m0, const AppliedFieldSchedule& K,
                                const PhysicalParams& p, const Grid1D& g,
                                int n_modes, double dt, int record_every) {
    auto basis = neumann_eigenpairs(g, n_modes);
    RhsFn rhs = [&](const Field& m, double t) {
        Field f = llg_drift(m, effective_field(m, K.at(t), p, g), p.alpha);
        return spectral_project(f, basis, g);
    };
    const long n_steps = std::lround(p.horizon_T / dt);

    TrajectoryRecord rec;
    Field m = spectral_project(m0, basis, g);
    rec.times.push_back(0.0);
    rec.states.push_back(m);
    rec.diags.push_back(diagnostics_of(m, K.at(0.0), p, g));
    double t = 0.0;
    for (long s = 1; s <= n_steps; ++s) {
        // plain Heun, no sphere projection: the Galerkin state is not nodewise unit
        Field k1 = rhs(m, t);
        Field pred(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            pred[i] = m[i] + dt * k1[i];
        Field k2 = rhs(pred, t + dt);
        for (std::size_t i = 0; i < m.size(); ++i)
            m[i] += 0.5 * dt * (k1[i] + k2[i]);
        t = s * dt;
        if (s % record_every == 0 || s == n_steps) {
            rec.times.push_back(t);
            rec.states.push_back(m);
            rec.diags.push_back(diagnostics_of(m, K.at(t), p, g));
        }
    }
    return rec;
}

double stability_radius(const PhysicalParams& p, const Grid1D& g) {
    double k = embedding_constant_k(g.length);
    return (1.0 / (2.0 * k * k * std::sqrt(g.length))) * (p.alpha / (1.0 + 2.0 * p.alpha));
}

double field_threshold(const PhysicalParams& p) {
    double a = p.alpha, b = p.beta;
    return std::max((4.0 * b + 4.0 * a * b) / (3.0 * a), (2.0 * b + 4.0 * a * b - a) / a);
}

double decay_rate_gamma(const PhysicalParams& p, double H_mag) {
    double a = p.alpha, b = p.beta;
    return std::min(a * H_mag + a - 2.0 * b - 4.0 * a * b,
                    1.5 * a * H_mag - 2.0 * b - 2.0 * a * b);
}

UandZCheck check_uandz(const Field& m, const Vec3& zeta, const PhysicalParams& p, const Grid1D& g) {
    const double tol = 1e-12;
    UandZCheck r;
    r.claim1 = r.claim2 = r.claim3 = true;
    r.in_ball = dist_h1(m, uniform_field(g, zeta), g) <= stability_radius(p, g);
    for (const auto& u : m.v) {
        double m1 = u.x;
        if (std::abs(m1) < 1e-9) {
            r.claim1 = false;
        } else {
            double m1sq = m1 * m1;
            double expr = (1.0 - m1sq) / m1sq + p.alpha * (1.0 - m1sq) * (1.0 - m1sq) / m1sq
                          - p.alpha * m1sq;
            if (expr > tol)
                r.claim1 = false;
        }
        if (dot(u, zeta) < 0.75 - tol)
            r.claim2 = false;
        if ((7.0 / 8.0) * norm2(u - zeta) > norm2(cross(u, zeta)) + tol)
            r.claim3 = false;
    }
    return r;
}

double measure_decay(const TrajectoryRecord& traj, const Field& reference, const Grid1D& g) {
    std::vector<double> ts, logs;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        double d = dist_h1(traj.states[i], reference, g);
        if (d <= 0.0)
            break;
        ts.push_back(traj.times[i]);
        logs.push_back(std::log(d));
    }
    if (ts.size() < 2)
        throw MeasurementFailure("measure_decay: not enough positive-distance samples");
    // least squares slope
    double n = static_cast<double>(ts.size());
    double st = 0.0, sl = 0.0, stt = 0.0, stl = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sl += logs[i];
        stt += ts[i] * ts[i];
        stl += ts[i] * logs[i];
    }
    double slope = (n * stl - st * sl) / (n * stt - st * st);
    return -slope;
}

} // namespace llg1d
