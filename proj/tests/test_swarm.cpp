#include <doctest.h>

#include "swarmlink/swarm.hpp"

using namespace swarmlink;

namespace {

ReferenceFn hold_reference(const std::vector<Vec3>& targets) {
    return [targets](int agent, double) { return targets[agent]; };
}

}  // namespace

TEST_CASE("ring topology") {
    const SwarmTopology topo = SwarmTopology::ring(3);
    REQUIRE(topo.neighbor_sets.size() == 3);
    CHECK(topo.neighbor_sets[0] == std::vector<int>{1});
    CHECK(topo.neighbor_sets[1] == std::vector<int>{2});
    CHECK(topo.neighbor_sets[2] == std::vector<int>{0});
    CHECK_NOTHROW(topo.validate());

    SwarmTopology bad = topo;
    bad.neighbor_sets[0] = {5};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("contraction condition arithmetic") {
    CostWeights w;   // q_pos = 2 I
    SUBCASE("no comm term is trivially stable") {
        w.w_comm = 0.0;
        const auto [ratio, stable] = check_contraction(w, 123.0);
        CHECK(ratio == doctest::Approx(0.0));
        CHECK(stable);
    }
    SUBCASE("documented point 1.5 / 2.0") {
        const auto [ratio, stable] = check_contraction(w, 1.5);
        CHECK(ratio == doctest::Approx(0.75));
        CHECK(stable);
    }
    SUBCASE("ratio at or above one is unstable") {
        const auto [ratio, stable] = check_contraction(w, 4.0);
        CHECK(ratio == doctest::Approx(2.0));
        CHECK_FALSE(stable);
    }
}

TEST_CASE("single-agent swarm runs one trivial solve") {
    ScenarioConfig cfg;
    cfg.n_agents = 1;
    const SwarmTopology topo = SwarmTopology::ring(1);
    std::vector<AgentState> states(1);
    states[0].position = Vec3(0, 0, 10);
    auto plans = cold_start_plans(states, cfg);
    const RoundReport report = bcd_sweep(states, plans, hold_reference({Vec3(0, 0, 10)}),
                                         0.0, topo, cfg);
    CHECK(report.solves == 1);
    CHECK(report.solves_converged == 1);
}

TEST_CASE("fixed point: converged plans do not move") {
    ScenarioConfig cfg;
    cfg.n_agents = 3;
    cfg.weights.w_comm = 0.0;
    cfg.weights.w_safe = 0.0;
    cfg.solver.max_iters = 500;
    cfg.solver.grad_tol = 1e-12;
    const SwarmTopology topo = SwarmTopology::ring(3);

    std::vector<AgentState> states(3);
    std::vector<Vec3> targets;
    for (int i = 0; i < 3; ++i) {
        states[i].position = Vec3(20.0 * i, 0.0, 10.0);
        targets.push_back(states[i].position);   // already on reference
    }
    auto plans = cold_start_plans(states, cfg);
    const ReferenceFn refs = hold_reference(targets);

    bcd_sweep(states, plans, refs, 0.0, topo, cfg);             // settle
    const RoundReport again = bcd_sweep(states, plans, refs, 0.0, topo, cfg);
    CHECK(again.max_plan_delta < 1e-8);
}

TEST_CASE("BCD sweeps contract on the crossing scenario") {
    ScenarioConfig cfg;
    const Scenario scenario = antipodal_scenario(cfg, 3);
    const SwarmTopology topo = SwarmTopology::ring(3);
    const ReferenceFn refs = [&](int agent, double t) {
        return akima_interpolate(scenario.waypoints[agent], t);
    };
    auto plans = cold_start_plans(scenario.initial_states, cfg);
    const RoundReport first = bcd_sweep(scenario.initial_states, plans, refs, 0.0, topo,
                                        cfg);
    const RoundReport second = bcd_sweep(scenario.initial_states, plans, refs, 0.0, topo,
                                         cfg, first.max_plan_delta);
    CHECK(second.max_plan_delta < first.max_plan_delta);
    CHECK(second.contraction_ratio_estimate < 1.0);
    CHECK(second.contraction_ratio_estimate ==
          doctest::Approx(second.max_plan_delta / first.max_plan_delta));
}

TEST_CASE("sweeps are deterministic") {
    ScenarioConfig cfg;
    const Scenario scenario = antipodal_scenario(cfg, 5);
    const SwarmTopology topo = SwarmTopology::ring(3);
    const ReferenceFn refs = [&](int agent, double t) {
        return akima_interpolate(scenario.waypoints[agent], t);
    };
    auto plans_a = cold_start_plans(scenario.initial_states, cfg);
    auto plans_b = cold_start_plans(scenario.initial_states, cfg);
    bcd_sweep(scenario.initial_states, plans_a, refs, 0.0, topo, cfg);
    bcd_sweep(scenario.initial_states, plans_b, refs, 0.0, topo, cfg);
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < cfg.horizon; ++k) {
            CHECK(plans_a[i].inputs[k].accel == plans_b[i].inputs[k].accel);
            CHECK(plans_a[i].inputs[k].yaw_rate == plans_b[i].inputs[k].yaw_rate);
        }
    }
}

TEST_CASE("receding horizon tracking without comm or safety") {
    ScenarioConfig cfg;
    cfg.n_agents = 3;
    cfg.weights.w_comm = 0.0;
    cfg.weights.w_safe = 0.0;
    const SwarmTopology topo = SwarmTopology::ring(3);

    std::vector<Vec3> targets = {Vec3(0, 0, 10), Vec3(30, 0, 10), Vec3(0, 30, 10)};
    SimState sim;
    sim.states.resize(3);
    for (int i = 0; i < 3; ++i) sim.states[i].position = targets[i];
    sim.plans = cold_start_plans(sim.states, cfg);
    const ReferenceFn refs = hold_reference(targets);

    std::vector<ControlInput> applied;
    for (int k = 0; k < 30; ++k) {
        receding_horizon_step(sim, refs, topo, cfg, &applied);
        for (const ControlInput& u : applied) {
            CHECK(u.accel.lpNorm<Eigen::Infinity>() <= cfg.dynamics.a_max + 1e-12);
            CHECK(std::abs(u.yaw_rate) <= cfg.dynamics.omega_max + 1e-12);
        }
    }
    for (int i = 0; i < 3; ++i) {
        CHECK((sim.states[i].position - targets[i]).norm() < 0.01);
    }
    CHECK(sim.t == doctest::Approx(3.0));
    CHECK(sim.step == 30);
}
