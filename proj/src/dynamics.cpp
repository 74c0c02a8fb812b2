#include "swarmlink/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace swarmlink {

void DynamicsParams::validate() const {
    if (!(ts > 0.0) || !(a_max > 0.0) || !(omega_max > 0.0) || !(d_min > 0.0)) {
        throw std::invalid_argument("DynamicsParams: all fields must be strictly positive");
    }
}

AgentState step(const AgentState& state, const ControlInput& input,
                const DynamicsParams& params) {
    if (!finite(state.position) || !finite(state.velocity) || !std::isfinite(state.yaw) ||
        !finite(input.accel) || !std::isfinite(input.yaw_rate)) {
        throw std::invalid_argument("dynamics::step: non-finite state or input");
    }
    const double ts = params.ts;
    AgentState next;
    next.position = state.position + state.velocity * ts + 0.5 * input.accel * ts * ts;
    next.velocity = state.velocity + input.accel * ts;
    next.yaw = wrap_angle(state.yaw + input.yaw_rate * ts);
    return next;
}

std::vector<AgentState> rollout(const AgentState& x0,
                                const std::vector<ControlInput>& inputs,
                                const DynamicsParams& params) {
    if (inputs.empty()) {
        throw std::invalid_argument("dynamics::rollout: empty input sequence");
    }
    std::vector<AgentState> states;
    states.reserve(inputs.size());
    AgentState cur = x0;
    for (const ControlInput& u : inputs) {
        cur = step(cur, u, params);
        states.push_back(cur);
    }
    return states;
}

ControlInput clamp_input(const ControlInput& input, const DynamicsParams& params) {
    ControlInput out;
    for (int i = 0; i < 3; ++i) {
        out.accel[i] = std::clamp(input.accel[i], -params.a_max, params.a_max);
    }
    out.yaw_rate = std::clamp(input.yaw_rate, -params.omega_max, params.omega_max);
    return out;
}

double min_pairwise_distance(const std::vector<AgentState>& states) {
    if (states.size() < 2) {
        throw std::invalid_argument("min_pairwise_distance: need at least 2 agents");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (std::size_t j = i + 1; j < states.size(); ++j) {
            best = std::min(best, (states[i].position - states[j].position).norm());
        }
    }
    return best;
}

}  // namespace swarmlink
