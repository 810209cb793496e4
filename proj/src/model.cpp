#include "llg1d/model.hpp"

#include <cmath>
#include <stdexcept>

namespace llg1d {

void PhysicalParams::validate() const {
    if (!(alpha > 0.0))
        throw std::invalid_argument("params: alpha must be positive");
    if (beta < 0.0)
        throw std::invalid_argument("params: beta must be nonnegative");
    if (eps < 0.0 || eps > 1.0)
        throw std::invalid_argument("params: eps must lie in [0,1]");
    if (!(horizon_T > 0.0))
        throw std::invalid_argument("params: horizon_T must be positive");
}

double NoiseModel::direction_det() const {
    const Vec3& a = directions[0];
    const Vec3& b = directions[1];
    const Vec3& c = directions[2];
    return dot(a, cross(b, c));
}

void NoiseModel::validate(const Grid1D& g) const {
    if (mode == NoiseMode::three_directions) {
        if (std::abs(direction_det()) <= 1e-12)
            throw std::invalid_argument("noise: directions are not linearly independent");
    } else {
        if (profile_h.size() != static_cast<std::size_t>(g.n_points))
            throw std::invalid_argument("noise: profile does not conform to grid");
    }
}

NoiseModel standard_basis_noise() {
    NoiseModel n;
    n.mode = NoiseMode::three_directions;
    n.directions = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    return n;
}

Vec3 AppliedFieldSchedule::at(double t) const {
    if (segment_values.empty())
        return {};
    // right-continuous segments: t in (b[i], b[i+1]] uses segment i
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (t <= breakpoints[i + 1])
            return segment_values[i];
    return segment_values.back();
}

void AppliedFieldSchedule::validate() const {
    if (segment_values.empty() && breakpoints.empty())
        return;
    if (breakpoints.size() != segment_values.size() + 1)
        throw std::invalid_argument("schedule: need one value per segment");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (breakpoints[i + 1] < breakpoints[i])
            throw std::invalid_argument("schedule: breakpoints must be nondecreasing");
}

Field effective_field(const Field& m, const Vec3& K, const PhysicalParams& p, const Grid1D& g) {
    Field out = laplacian(m, g);
    for (auto& v : out.v) v += K;
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].y -= p.beta * m[i].y;
        out[i].z -= p.beta * m[i].z;
    }
    return out;
}

Vec3 llg_drift_point(const Vec3& m, const Vec3& h, double alpha) {
    Vec3 mxh = cross(m, h);
    return mxh - alpha * cross(m, mxh);
}

Field llg_drift(const Field& m, const Field& h_eff, double alpha) {
    if (m.size() != h_eff.size())
        throw std::invalid_argument("llg_drift: shape mismatch");
    Field out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        out[i] = llg_drift_point(m[i], h_eff[i], alpha);
    return out;
}

Vec3 diffusion_channel_point(const Vec3& m, const Vec3& b, double alpha) {
    Vec3 mxb = cross(m, b);
    return mxb - alpha * cross(m, mxb);
}

std::vector<Field> diffusion_channels(const Field& m, const NoiseModel& noise, double alpha) {
    const int nc = noise.n_channels();
    std::vector<Field> out(nc, Field(m.size()));
    for (int c = 0; c < nc; ++c)
        for (std::size_t i = 0; i < m.size(); ++i)
            out[c][i] = diffusion_channel_point(m[i], noise.channel_dir(c, i), alpha);
    return out;
}

Vec3 ito_correction_point(const Vec3& m, const Vec3& b, double alpha) {
    Vec3 mxb = cross(m, b);
    Vec3 mmb = cross(m, mxb); // m x (m x b)
    Vec3 r = cross(mxb, b) - alpha * cross(mmb, b)
             - alpha * (cross(m, cross(mxb, b)) - alpha * cross(mmb, mxb)
                        + alpha * cross(cross(mmb, b), m));
    return 0.5 * r;
}

Field ito_correction(const Field& m, const NoiseModel& noise, double alpha) {
    Field out(m.size());
    const int nc = noise.n_channels();
    for (int c = 0; c < nc; ++c)
        for (std::size_t i = 0; i < m.size(); ++i)
            out[i] += ito_correction_point(m[i], noise.channel_dir(c, i), alpha);
    return out;
}

double energy(const Field& m, const Vec3& K, const PhysicalParams& p, const Grid1D& g) {
    FieldNorms nm = norms(m, g);
    double aniso = 0.0;
    double zeeman = 0.0;
    for (int i = 0; i < g.n_points; ++i) {
        double w = (i == 0 || i == g.n_points - 1) ? 0.5 : 1.0;
        aniso += w * g.spacing * (m[i].y * m[i].y + m[i].z * m[i].z);
        zeeman += w * g.spacing * dot(K, m[i]);
    }
    return 0.5 * nm.grad_l2 * nm.grad_l2 + 0.5 * p.beta * aniso - zeeman;
}

Field harmonic_identity_residual(const Field& m, const Grid1D& g) {
    if (!is_saturated(m, 1e-8))
        throw std::invalid_argument("harmonic_identity_residual: field is not saturated");
    Field lap = laplacian(m, g);
    const std::size_t n = m.size();
    const double h = g.spacing;
    Field out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec3 dm;
        if (i == 0)
            dm = (1.0 / h) * (m[1] - m[0]);
        else if (i == n - 1)
            dm = (1.0 / h) * (m[n - 1] - m[n - 2]);
        else
            dm = (0.5 / h) * (m[i + 1] - m[i - 1]);
        out[i] = cross(m[i], cross(m[i], lap[i])) + norm2(dm) * m[i] + lap[i];
    }
    return out;
}

} // namespace llg1d
