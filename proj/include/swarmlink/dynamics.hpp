#pragma once

#include <vector>

#include "swarmlink/math_util.hpp"

namespace swarmlink {

/// Position/velocity/yaw state of one agent. Yaw is kept in (-pi, pi].
struct AgentState {
    Vec3 position{Vec3::Zero()};   // m
    Vec3 velocity{Vec3::Zero()};   // m/s
    double yaw{0.0};               // rad
};

/// Per-axis acceleration plus yaw rate.
struct ControlInput {
    Vec3 accel{Vec3::Zero()};      // m/s^2
    double yaw_rate{0.0};          // rad/s
};

struct DynamicsParams {
    double ts{0.1};          // s
    double a_max{4.0};       // m/s^2, per-axis (infinity norm)
    double omega_max{1.5};   // rad/s
    double d_min{3.5};       // m

    void validate() const;
};

/// Exact discrete double-integrator update with decoupled yaw integrator.
AgentState step(const AgentState& state, const ControlInput& input,
                const DynamicsParams& params);

/// Roll the dynamics forward; element k is the state after k+1 steps.
std::vector<AgentState> rollout(const AgentState& x0,
                                const std::vector<ControlInput>& inputs,
                                const DynamicsParams& params);

/// Clip each input component into the actuation box. Idempotent.
ControlInput clamp_input(const ControlInput& input, const DynamicsParams& params);

/// Minimum Euclidean distance over unordered agent pairs. Needs >= 2 agents.
double min_pairwise_distance(const std::vector<AgentState>& states);

}  // namespace swarmlink
