#pragma once

#include "llg1d/grid.hpp"

#include <vector>

namespace llg1d {

struct PhysicalParams {
    double alpha = 1.0;   // damping, > 0
    double beta = 0.0;    // shape anisotropy, >= 0
    double eps = 0.0;     // noise amplitude, in [0,1]
    double horizon_T = 1.0;

    void validate() const;
};

enum class NoiseMode { scalar_profile, three_directions };

// Either a single spatial profile h(x) or three constant directions a^1,a^2,a^3.
struct NoiseModel {
    NoiseMode mode = NoiseMode::three_directions;
    Field profile_h;                  // scalar_profile mode
    std::array<Vec3, 3> directions{}; // three_directions mode

    int n_channels() const { return mode == NoiseMode::three_directions ? 3 : 1; }
    // Channel direction at node i.
    Vec3 channel_dir(int channel, std::size_t node) const {
        return mode == NoiseMode::three_directions ? directions[channel] : profile_h[node];
    }
    double direction_det() const;
    void validate(const Grid1D& g) const;
};

NoiseModel standard_basis_noise();

// Piecewise-constant applied field K(t); segment i is active on (b[i], b[i+1]].
struct AppliedFieldSchedule {
    std::vector<double> breakpoints;   // size n_segments + 1, nondecreasing
    std::vector<Vec3> segment_values;  // size n_segments

    bool empty() const { return segment_values.empty(); }
    Vec3 at(double t) const;
    void validate() const;
};

// Delta m - beta (0, m2, m3)^T + K, with the Neumann Laplacian.
Field effective_field(const Field& m, const Vec3& K, const PhysicalParams& p, const Grid1D& g);

// Pointwise m x h_eff - alpha m x (m x h_eff).
Field llg_drift(const Field& m, const Field& h_eff, double alpha);
Vec3 llg_drift_point(const Vec3& m, const Vec3& h, double alpha);

// Per-channel sigma_i(m) = m x b - alpha m x (m x b), b = a^i or h(x).
std::vector<Field> diffusion_channels(const Field& m, const NoiseModel& noise, double alpha);
Vec3 diffusion_channel_point(const Vec3& m, const Vec3& b, double alpha);

// Stratonovich-to-Ito correction drift, summed over channels, without the
// eps factor. Equals (1/2) sum_i D sigma_i(m)[sigma_i(m)].
Field ito_correction(const Field& m, const NoiseModel& noise, double alpha);
Vec3 ito_correction_point(const Vec3& m, const Vec3& b, double alpha);

// (1/2)|Dm|_L2^2 + (beta/2) int (m2^2 + m3^2) dx - <K, m>_L2.
double energy(const Field& m, const Vec3& K, const PhysicalParams& p, const Grid1D& g);

// Pointwise m x (m x Dm) + |Dm|^2 m + Dm with Dm the discrete Laplacian and
// |Dm| from centered differences (one-sided at the boundary). Vanishes for
// saturated fields as spacing -> 0.
Field harmonic_identity_residual(const Field& m, const Grid1D& g);

} // namespace llg1d
