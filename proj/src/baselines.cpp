#include "swarmlink/baselines.hpp"

#include <stdexcept>

namespace swarmlink {

const char* controller_name(ControllerKind kind) {
    switch (kind) {
        case ControllerKind::Joint: return "joint";
        case ControllerKind::Ideal: return "ideal";
        case ControllerKind::Ele: return "ele";
        case ControllerKind::Std: return "std";
        case ControllerKind::Pid: return "pid";
    }
    return "?";
}

ControllerKind controller_from_name(const std::string& name) {
    if (name == "joint") return ControllerKind::Joint;
    if (name == "ideal") return ControllerKind::Ideal;
    if (name == "ele") return ControllerKind::Ele;
    if (name == "std") return ControllerKind::Std;
    if (name == "pid") return ControllerKind::Pid;
    throw std::invalid_argument("unknown controller: " + name);
}

namespace {

template <typename YawGainFn>
LinkSeries evaluate_links(const Trajectory& traj, const SwarmTopology& topology,
                          const LinkBudget& budget, YawGainFn&& per_link) {
    LinkSeries series(traj.size());
    for (std::size_t t = 0; t < traj.size(); ++t) {
        const std::vector<AgentState>& states = traj[t];
        for (int i = 0; i < topology.n_agents; ++i) {
            for (int j : topology.neighbor_sets[i]) {
                const double az = los_azimuth(states[i].position, states[j].position);
                auto [gain, misalign] = per_link(t, i, states[i], az);
                // a grounded endpoint (z <= 0) is a dead link, not an error
                const bool airborne =
                    states[i].position.z() > 0.0 && states[j].position.z() > 0.0;
                const double power =
                    airborne ? channel_power(states[i].position, states[j].position, budget)
                             : 0.0;
                LinkSample sample;
                sample.capacity_bps = link_capacity(budget.snr0 * power * gain, budget);
                sample.misalign_rad = misalign;
                series[t].push_back(sample);
            }
        }
    }
    return series;
}

}  // namespace

LinkSeries evaluate_ideal(const Trajectory& traj, const SwarmTopology& topology,
                          const LinkBudget& budget) {
    return evaluate_links(traj, topology, budget,
                          [&](std::size_t, int, const AgentState&, double) {
                              return std::pair<double, double>{budget.n_ula, 0.0};
                          });
}

LinkSeries evaluate_ele(const Trajectory& traj, const SwarmTopology& topology,
                        const LinkBudget& budget) {
    // velocity-aligned yaw, held through hover
    std::vector<double> held_yaw(topology.n_agents);
    if (!traj.empty()) {
        for (int i = 0; i < topology.n_agents; ++i) held_yaw[i] = traj[0][i].yaw;
    }
    return evaluate_links(
        traj, topology, budget,
        [&](std::size_t, int i, const AgentState& s, double az) {
            if (s.velocity.head<2>().norm() >= 0.1) {
                held_yaw[i] = std::atan2(s.velocity.y(), s.velocity.x());
            }
            const double misalign = wrap_angle(az - held_yaw[i]);
            return std::pair<double, double>{hybrid_gain(misalign, budget),
                                             std::abs(misalign)};
        });
}

LinkSeries evaluate_omni(const Trajectory& traj, const SwarmTopology& topology,
                         const LinkBudget& budget) {
    return evaluate_links(traj, topology, budget,
                          [&](std::size_t, int, const AgentState& s, double az) {
                              return std::pair<double, double>{
                                  1.0, std::abs(wrap_angle(az - s.yaw))};
                          });
}

LinkSeries evaluate_joint(const Trajectory& traj, const SwarmTopology& topology,
                          const LinkBudget& budget) {
    return evaluate_links(traj, topology, budget,
                          [&](std::size_t, int, const AgentState& s, double az) {
                              const double misalign = wrap_angle(az - s.yaw);
                              return std::pair<double, double>{
                                  hybrid_gain(misalign, budget), std::abs(misalign)};
                          });
}

std::vector<ControlInput> pid_step(const std::vector<AgentState>& states,
                                   const std::vector<Vec3>& ref_positions,
                                   const PidGains& gains, const DynamicsParams& params) {
    if (states.size() != ref_positions.size()) {
        throw std::invalid_argument("pid_step: states/refs size mismatch");
    }
    const double range = 2.0 * params.d_min;
    std::vector<ControlInput> out(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        Vec3 accel = gains.kp * (ref_positions[i] - states[i].position) -
                     gains.kd * states[i].velocity;
        for (std::size_t j = 0; j < states.size(); ++j) {
            if (j == i) continue;
            const Vec3 diff = states[i].position - states[j].position;
            const double d = diff.norm();
            if (d < range && d > 1e-9) {
                accel += gains.krep / (d * d) * (diff / d);
            }
        }
        ControlInput u;
        u.accel = accel;
        u.yaw_rate = 0.0;
        out[i] = clamp_input(u, params);
    }
    return out;
}

}  // namespace swarmlink
