#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swarmlink/cost.hpp"
#include "swarmlink/solver.hpp"

namespace swarmlink {

struct Waypoint {
    double time{0.0};   // s
    Vec3 position{Vec3::Zero()};
};

struct PidGains {
    double kp{1.2};
    double kd{1.8};
    double krep{1.5};
};

struct SwarmOptions {
    int n_sweeps{1};
    bool jacobi{false};   // experimental simultaneous updates
};

/// Full run configuration: scenario geometry plus every module's parameters.
struct ScenarioConfig {
    int schema_version{1};

    int n_agents{3};
    double duration_s{40.0};
    int horizon{15};                 // N_c
    double circle_radius_m{25.0};
    double altitude_m{10.0};
    double formation_radius_m{10.0};
    double crossing_fraction{0.6};   // fraction of the run spent crossing
    double mid_offset_m{1.0};        // lateral offset of the reference at mid-crossing
    double jitter_sigma_m{0.5};
    std::uint64_t seed{1};

    DynamicsParams dynamics;
    LinkBudget budget;
    SmoothingConfig smoothing;
    CostWeights weights;
    SolverConfig solver;
    SwarmOptions swarm;
    PidGains pid;

    /// Defaults include the documented snr0 calibration (ideal boresight link
    /// at 20 m range yields 4.8 Gbit/s).
    ScenarioConfig();

    void validate() const;
    int n_steps() const { return static_cast<int>(std::lround(duration_s / dynamics.ts)); }
};

/// Per-axis Akima interpolation through the waypoints; clamps outside the
/// time range. Fewer than 5 waypoints fall back to endpoint-extrapolated
/// slopes (the quadratic extension used for the boundary segments).
Vec3 akima_interpolate(const std::vector<Waypoint>& waypoints, double t);

struct Scenario {
    std::vector<std::vector<Waypoint>> waypoints;   // per agent
    std::vector<AgentState> initial_states;
};

/// Antipodal crossing plus formation segment. Agents start equally spaced on
/// a circle, cross through the center region simultaneously, then regroup on
/// a smaller circle. realization_seed drives the waypoint jitter; the
/// unjittered references are obtained with jitter_sigma_m = 0.
Scenario antipodal_scenario(const ScenarioConfig& cfg, std::uint64_t realization_seed);

ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& cfg, const std::string& path);
std::string serialize_config(const ScenarioConfig& cfg);
std::uint64_t config_hash(const ScenarioConfig& cfg);

/// The snr0 calibration: an ideal boresight link at the stated range yields
/// the stated capacity.
double calibrate_snr0(const LinkBudget& budget, double range_m, double capacity_bps);

}  // namespace swarmlink
