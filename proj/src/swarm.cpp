#include "swarmlink/swarm.hpp"

#include <stdexcept>

namespace swarmlink {

SwarmTopology SwarmTopology::ring(int n) {
    SwarmTopology topo;
    topo.n_agents = n;
    topo.neighbor_sets.resize(n);
    if (n > 1) {
        for (int i = 0; i < n; ++i) topo.neighbor_sets[i] = {(i + 1) % n};
    }
    return topo;
}

void SwarmTopology::validate() const {
    if (n_agents < 1 || neighbor_sets.size() != static_cast<std::size_t>(n_agents)) {
        throw std::invalid_argument("SwarmTopology: inconsistent sizes");
    }
    for (int i = 0; i < n_agents; ++i) {
        for (int j : neighbor_sets[i]) {
            if (j < 0 || j >= n_agents || j == i) {
                throw std::invalid_argument("SwarmTopology: invalid neighbor index");
            }
        }
    }
}

namespace {

HorizonProblem build_problem(int agent, const AgentState& x0, const ReferenceFn& refs,
                             double t, const std::vector<HorizonPlan>& plans,
                             const SwarmTopology& topology, const ScenarioConfig& cfg) {
    HorizonProblem prob;
    prob.x0 = x0;
    prob.weights = cfg.weights;
    prob.budget = cfg.budget;
    prob.budget.finalize();
    prob.smoothing = cfg.smoothing;
    prob.params = cfg.dynamics;

    const int nc = cfg.horizon;
    prob.refs.resize(nc);
    prob.neighbor_positions.resize(nc);
    for (int k = 0; k < nc; ++k) {
        prob.refs[k] = refs(agent, t + (k + 1) * cfg.dynamics.ts);
        for (int j : topology.neighbor_sets[agent]) {
            prob.neighbor_positions[k].push_back(plans[j].states[k].position);
        }
    }
    return prob;
}

double plan_delta(const HorizonPlan& a, const HorizonPlan& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.states.size() && k < b.states.size(); ++k) {
        d = std::max(d, (a.states[k].position - b.states[k].position)
                            .lpNorm<Eigen::Infinity>());
    }
    return d;
}

}  // namespace

RoundReport bcd_sweep(const std::vector<AgentState>& agent_states,
                      std::vector<HorizonPlan>& plans, const ReferenceFn& refs, double t,
                      const SwarmTopology& topology, const ScenarioConfig& cfg,
                      double prev_delta) {
    topology.validate();
    if (plans.size() != agent_states.size() ||
        plans.size() != static_cast<std::size_t>(topology.n_agents)) {
        throw std::invalid_argument("bcd_sweep: one plan per agent required");
    }
    RoundReport report;
    report.sweep_count = 1;

    // Jacobi mode snapshots the plans; Gauss-Seidel reads the freshest ones.
    const std::vector<HorizonPlan> snapshot = cfg.swarm.jacobi ? plans
                                                               : std::vector<HorizonPlan>{};
    const std::vector<HorizonPlan>& read_plans = cfg.swarm.jacobi ? snapshot : plans;

    for (int i = 0; i < topology.n_agents; ++i) {
        const HorizonProblem prob = build_problem(i, agent_states[i], refs, t, read_plans,
                                                  topology, cfg);
        const HorizonPlan warm = plans[i];
        report.global_cost_before += horizon_cost(prob, warm.inputs);
        auto [plan, diag] = solve_fhocp(prob, cfg.horizon, &warm, cfg.solver);
        report.global_cost_after += diag.objective;
        report.solves += 1;
        report.solves_converged += diag.converged ? 1 : 0;
        report.solver_time_s += diag.wall_time_s;
        report.max_plan_delta = std::max(report.max_plan_delta, plan_delta(warm, plan));
        plan.stamp = warm.stamp;
        plans[i] = std::move(plan);
    }
    report.contraction_ratio_estimate =
        (prev_delta > 0.0) ? report.max_plan_delta / prev_delta : 0.0;
    return report;
}

std::vector<HorizonPlan> cold_start_plans(const std::vector<AgentState>& states,
                                          const ScenarioConfig& cfg) {
    std::vector<HorizonPlan> plans(states.size());
    const std::vector<ControlInput> zeros(cfg.horizon);
    for (std::size_t i = 0; i < states.size(); ++i) {
        plans[i].inputs = zeros;
        plans[i].states = rollout(states[i], zeros, cfg.dynamics);
        plans[i].stamp = 0;
    }
    return plans;
}

void receding_horizon_step(SimState& sim, const ReferenceFn& refs,
                           const SwarmTopology& topology, const ScenarioConfig& cfg,
                           std::vector<ControlInput>* applied, RoundReport* report) {
    RoundReport last;
    double prev_delta = 0.0;
    for (int s = 0; s < cfg.swarm.n_sweeps; ++s) {
        RoundReport r = bcd_sweep(sim.states, sim.plans, refs, sim.t, topology, cfg,
                                  prev_delta);
        prev_delta = r.max_plan_delta;
        r.sweep_count = s + 1;
        last.solves += r.solves;
        last.solves_converged += r.solves_converged;
        last.solver_time_s += r.solver_time_s;
        last.sweep_count = r.sweep_count;
        last.global_cost_before = (s == 0) ? r.global_cost_before : last.global_cost_before;
        last.global_cost_after = r.global_cost_after;
        last.max_plan_delta = r.max_plan_delta;
        last.contraction_ratio_estimate = r.contraction_ratio_estimate;
    }

    if (applied != nullptr) applied->clear();
    for (std::size_t i = 0; i < sim.states.size(); ++i) {
        const ControlInput u = clamp_input(sim.plans[i].inputs.front(), cfg.dynamics);
        if (applied != nullptr) applied->push_back(u);
        sim.states[i] = step(sim.states[i], u, cfg.dynamics);
    }
    for (std::size_t i = 0; i < sim.states.size(); ++i) {
        sim.plans[i] = shift_warm_start(sim.plans[i], sim.states[i], cfg.dynamics);
    }
    sim.t += cfg.dynamics.ts;
    sim.step += 1;
    if (report != nullptr) *report = last;
}

std::pair<double, bool> check_contraction(const CostWeights& weights, double l_hat) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(weights.q_pos);
    const double lam_min = es.eigenvalues().minCoeff();
    const double ratio = weights.w_comm * l_hat / lam_min;
    return {ratio, ratio < 1.0};
}

}  // namespace swarmlink
