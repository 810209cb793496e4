#pragma once

#include "llg1d/ldp.hpp"

#include <optional>
#include <string>

namespace llg1d {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Initial state: either a uniform vector or explicit per-node values.
struct InitialState {
    bool uniform = true;
    Vec3 uniform_value{-1.0, 0.0, 0.0};
    std::vector<Vec3> node_values;

    Field realize(const Grid1D& g) const;
};

struct RunConfig {
    Grid1D grid;
    PhysicalParams params;
    NoiseModel noise;
    AppliedFieldSchedule schedule;
    ControlPath control;
    SdeScheme scheme = SdeScheme::heun_stratonovich;
    double dt = 1e-3;
    std::uint64_t seed = 0;
    int n_paths = 1;
    int record_every = 1;
    InitialState initial;
    bool dump_states = false;

    void validate() const;
    SdeRunConfig to_sde_config() const;
};

// Strict parse: unknown keys are an error, all invariants checked.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// Reversal plan files (structured text, round-trips exactly at value level).
std::string serialize_plan(const ReversalPlan& plan);
ReversalPlan parse_plan(const std::string& json_text);

} // namespace llg1d
