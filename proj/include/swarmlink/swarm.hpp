#pragma once

#include "swarmlink/scenario.hpp"

namespace swarmlink {

struct SwarmTopology {
    int n_agents{0};
    std::vector<std::vector<int>> neighbor_sets;

    /// Logical ring i -> (i+1) mod N.
    static SwarmTopology ring(int n_agents);
    void validate() const;
};

struct RoundReport {
    int sweep_count{0};
    double global_cost_before{0.0};
    double global_cost_after{0.0};
    double max_plan_delta{0.0};            // m, sup-norm position change
    double contraction_ratio_estimate{0.0};  // delta / previous delta, 0 if unknown
    int solves{0};
    int solves_converged{0};
    double solver_time_s{0.0};
};

/// Reference sampler: position reference of one agent at absolute time t.
using ReferenceFn = std::function<Vec3(int agent, double t)>;

struct SimState {
    double t{0.0};
    long step{0};
    std::vector<AgentState> states;
    std::vector<HorizonPlan> plans;
};

/// One Gauss-Seidel (or Jacobi) block-coordinate sweep: agents solve in fixed
/// index order against the most recent neighbor plans. Updates plans in
/// place and reports the sup-norm plan movement.
RoundReport bcd_sweep(const std::vector<AgentState>& agent_states,
                      std::vector<HorizonPlan>& plans, const ReferenceFn& refs, double t,
                      const SwarmTopology& topology, const ScenarioConfig& cfg,
                      double prev_delta = 0.0);

/// Cold start: zero inputs, states from pure drift rollout.
std::vector<HorizonPlan> cold_start_plans(const std::vector<AgentState>& states,
                                          const ScenarioConfig& cfg);

/// Run n_sweeps BCD sweeps, apply each agent's first input, shift warm
/// starts, advance time by Ts. Returns the per-agent applied inputs and the
/// last sweep report through the out-parameters.
void receding_horizon_step(SimState& sim, const ReferenceFn& refs,
                           const SwarmTopology& topology, const ScenarioConfig& cfg,
                           std::vector<ControlInput>* applied = nullptr,
                           RoundReport* report = nullptr);

/// Contraction condition: ratio = w_comm * L_hat / lambda_min(q_pos).
std::pair<double, bool> check_contraction(const CostWeights& weights, double l_hat);

}  // namespace swarmlink
