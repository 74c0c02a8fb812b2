#include <doctest.h>

#include "swarmlink/baselines.hpp"

using namespace swarmlink;

namespace {

LinkBudget default_budget() {
    LinkBudget b;
    b.finalize();
    return b;
}

Trajectory two_agent_pass() {
    // agent 0 flies east past agent 1 sitting to its north
    Trajectory traj;
    for (int k = 0; k < 20; ++k) {
        std::vector<AgentState> states(2);
        states[0].position = Vec3(-10.0 + k, 0.0, 10.0);
        states[0].velocity = Vec3(1.0, 0.0, 0.0);
        states[1].position = Vec3(0.0, 15.0, 10.0);
        states[1].velocity = Vec3(1.0, 0.0, 0.0);
        traj.push_back(states);
    }
    return traj;
}

}  // namespace

TEST_CASE("controller names round trip") {
    for (ControllerKind k : {ControllerKind::Joint, ControllerKind::Ideal,
                             ControllerKind::Ele, ControllerKind::Std,
                             ControllerKind::Pid}) {
        CHECK(controller_from_name(controller_name(k)) == k);
    }
    CHECK_THROWS_AS(controller_from_name("nope"), std::invalid_argument);
}

TEST_CASE("ideal evaluation is the perfect-alignment bound") {
    const LinkBudget b = default_budget();
    const SwarmTopology topo = SwarmTopology::ring(2);
    const Trajectory traj = two_agent_pass();
    const LinkSeries ideal = evaluate_ideal(traj, topo, b);
    const LinkSeries ele = evaluate_ele(traj, topo, b);
    REQUIRE(ideal.size() == traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        for (std::size_t l = 0; l < ideal[k].size(); ++l) {
            CHECK(ideal[k][l].misalign_rad == 0.0);
            CHECK(ideal[k][l].capacity_bps >= ele[k][l].capacity_bps - 1e-9);
            // definition: capacity at snr0 |h|^2 n_ula
            const int i = static_cast<int>(l);
            const int j = topo.neighbor_sets[i][0];
            const double snr =
                b.snr0 * channel_power(traj[k][i].position, traj[k][j].position, b) *
                b.n_ula;
            CHECK(ideal[k][l].capacity_bps == doctest::Approx(link_capacity(snr, b)));
        }
    }
}

TEST_CASE("velocity alignment fails on orthogonal targets") {
    const LinkBudget b = default_budget();
    SUBCASE("flying straight at the neighbor gives full gain") {
        const double mis = 0.0;
        CHECK(hybrid_gain(mis, b) == doctest::Approx(16.0));
    }
    SUBCASE("orthogonal neighbor leaves a 30 degree residual") {
        // velocity east, neighbor due north: misalignment 90 deg > FoV 60 deg
        const double gain = hybrid_gain(kPi / 2.0, b);
        CHECK(gain < 1e-20);   // the link is effectively dead
    }
    SUBCASE("evaluated series shows the collapse mid-pass") {
        const SwarmTopology topo = SwarmTopology::ring(2);
        const Trajectory traj = two_agent_pass();
        const LinkSeries ele = evaluate_ele(traj, topo, b);
        const LinkSeries ideal = evaluate_ideal(traj, topo, b);
        // at k=10 agent 0 is at the origin, neighbor due north, velocity east
        CHECK(std::abs(ele[10][0].misalign_rad - kPi / 2.0) < 1e-9);
        CHECK(ele[10][0].capacity_bps < 1e-6 * ideal[10][0].capacity_bps);
    }
}

TEST_CASE("omni evaluation ignores yaw") {
    const LinkBudget b = default_budget();
    const SwarmTopology topo = SwarmTopology::ring(2);
    Trajectory traj = two_agent_pass();
    const LinkSeries base = evaluate_omni(traj, topo, b);
    for (auto& states : traj) {
        for (auto& s : states) s.yaw += 1.234;   // spin everyone
    }
    const LinkSeries spun = evaluate_omni(traj, topo, b);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        for (std::size_t l = 0; l < base[k].size(); ++l) {
            CHECK(base[k][l].capacity_bps == spun[k][l].capacity_bps);
            // unit gain: capacity = link_capacity(snr0 |h|^2)
            const int i = static_cast<int>(l);
            const int j = topo.neighbor_sets[i][0];
            const double snr =
                b.snr0 * channel_power(traj[k][i].position, traj[k][j].position, b);
            CHECK(base[k][l].capacity_bps == doctest::Approx(link_capacity(snr, b)));
        }
    }
}

TEST_CASE("omni capacity is below ideal capacity") {
    const LinkBudget b = default_budget();
    const SwarmTopology topo = SwarmTopology::ring(2);
    const Trajectory traj = two_agent_pass();
    const LinkSeries ideal = evaluate_ideal(traj, topo, b);
    const LinkSeries omni = evaluate_omni(traj, topo, b);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        for (std::size_t l = 0; l < ideal[k].size(); ++l) {
            CHECK(omni[k][l].capacity_bps < ideal[k][l].capacity_bps);
        }
    }
}

TEST_CASE("pid controller") {
    const DynamicsParams params;
    const PidGains gains;
    SUBCASE("at reference with no neighbors in range: zero input") {
        std::vector<AgentState> states(2);
        states[0].position = Vec3(0, 0, 10);
        states[1].position = Vec3(100, 0, 10);
        const auto us = pid_step(states, {states[0].position, states[1].position}, gains,
                                 params);
        CHECK(us[0].accel.norm() == doctest::Approx(0.0));
        CHECK(us[0].yaw_rate == 0.0);
    }
    SUBCASE("head-on agents repel") {
        std::vector<AgentState> states(2);
        states[0].position = Vec3(-2.0, 0, 10);
        states[1].position = Vec3(2.0, 0, 10);
        const auto us = pid_step(states, {states[0].position, states[1].position}, gains,
                                 params);
        CHECK(us[0].accel.x() < 0.0);
        CHECK(us[1].accel.x() > 0.0);
    }
    SUBCASE("inputs respect the actuation box") {
        std::vector<AgentState> states(2);
        states[0].position = Vec3(-0.1, 0, 10);
        states[1].position = Vec3(0.1, 0, 10);
        const auto us = pid_step(states, {Vec3(50, 50, 10), Vec3(-50, -50, 10)}, gains,
                                 params);
        for (const auto& u : us) {
            CHECK(u.accel.lpNorm<Eigen::Infinity>() <= params.a_max + 1e-12);
        }
    }
}
