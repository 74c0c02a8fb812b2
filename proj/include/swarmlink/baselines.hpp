#pragma once

#include "swarmlink/swarm.hpp"

namespace swarmlink {

enum class ControllerKind { Joint, Ideal, Ele, Std, Pid };

const char* controller_name(ControllerKind kind);
ControllerKind controller_from_name(const std::string& name);

struct LinkSample {
    double capacity_bps{0.0};
    double misalign_rad{0.0};
};

/// trajectory[step][agent]
using Trajectory = std::vector<std::vector<AgentState>>;
/// series[step][link]; link order follows the topology's (i, j) enumeration
using LinkSeries = std::vector<std::vector<LinkSample>>;

/// Perfect instantaneous alignment: full array gain, raw channel power.
LinkSeries evaluate_ideal(const Trajectory& traj, const SwarmTopology& topology,
                          const LinkBudget& budget);

/// Velocity-aligned yaw with electronic compensation inside the FoV. Yaw is
/// held at its previous value while the agent hovers (|v| < 0.1 m/s).
LinkSeries evaluate_ele(const Trajectory& traj, const SwarmTopology& topology,
                        const LinkBudget& budget);

/// Omnidirectional evaluation: unit gain regardless of yaw.
LinkSeries evaluate_omni(const Trajectory& traj, const SwarmTopology& topology,
                         const LinkBudget& budget);

/// Joint-MPC link evaluation at the recorded yaw (hybrid gain, raw power).
LinkSeries evaluate_joint(const Trajectory& traj, const SwarmTopology& topology,
                          const LinkBudget& budget);

/// Reactive potential-field controller: PD tracking plus inverse-square
/// repulsion active within 2 * d_min; zero yaw rate.
std::vector<ControlInput> pid_step(const std::vector<AgentState>& states,
                                   const std::vector<Vec3>& ref_positions,
                                   const PidGains& gains, const DynamicsParams& params);

}  // namespace swarmlink
