#include <doctest.h>

#include <limits>
#include <random>

#include "lq_oracle.hpp"
#include "swarmlink/cost.hpp"

using namespace swarmlink;

namespace {

LinkBudget default_budget() {
    LinkBudget b;
    b.finalize();
    return b;
}

HorizonProblem random_problem(std::mt19937_64& rng, int horizon, bool with_comm,
                              bool with_safety) {
    std::uniform_real_distribution<double> xy(-15.0, 15.0), z(6.0, 14.0), v(-2.0, 2.0),
        ang(-kPi, kPi);
    HorizonProblem prob;
    prob.x0.position = Vec3(xy(rng), xy(rng), z(rng));
    prob.x0.velocity = Vec3(v(rng), v(rng), v(rng));
    prob.x0.yaw = ang(rng);
    prob.budget = default_budget();
    if (!with_comm) prob.weights.w_comm = 0.0;
    if (!with_safety) prob.weights.w_safe = 0.0;
    prob.refs.resize(horizon);
    prob.neighbor_positions.resize(horizon);
    const Vec3 nb(xy(rng), xy(rng), z(rng));
    for (int k = 0; k < horizon; ++k) {
        prob.refs[k] = prob.x0.position + Vec3(v(rng), v(rng), 0.2 * v(rng));
        if (with_comm || with_safety) prob.neighbor_positions[k].push_back(nb);
    }
    return prob;
}

std::vector<ControlInput> random_inputs(std::mt19937_64& rng, int horizon) {
    std::uniform_real_distribution<double> a(-3.0, 3.0), w(-1.2, 1.2);
    std::vector<ControlInput> us(horizon);
    for (auto& u : us) {
        u.accel = Vec3(a(rng), a(rng), a(rng));
        u.yaw_rate = w(rng);
    }
    return us;
}

}  // namespace

TEST_CASE("weights validation") {
    CostWeights w;
    CHECK_NOTHROW(w.validate());
    w.q_pos(0, 1) = 1.0;   // asymmetric
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
    w = CostWeights{};
    w.mu = 0.0;
    CHECK_THROWS_AS(w.validate(), std::invalid_argument);
}

TEST_CASE("tracking cost closed-form points") {
    const CostWeights w;
    AgentState x;
    SUBCASE("on reference, zero input") {
        CHECK(tracking_cost(x, x.position, ControlInput{}, w) == doctest::Approx(0.0));
    }
    SUBCASE("unit position error under Q = 2I") {
        x.position = Vec3(1.0, 0.0, 0.0);
        CHECK(tracking_cost(x, Vec3::Zero(), ControlInput{}, w) == doctest::Approx(2.0));
    }
    SUBCASE("yaw-rate regularization weight") {
        ControlInput u;
        u.yaw_rate = 1.0;
        CHECK(tracking_cost(x, x.position, u, w) == doctest::Approx(0.001));
    }
}

TEST_CASE("safety barrier") {
    const CostWeights w;
    const double d_min = 3.5;
    SUBCASE("hand-evaluated point at 5 m") {
        const double c = safety_cost(Vec3::Zero(), {Vec3(5.0, 0.0, 0.0)}, w, d_min);
        CHECK(c == doctest::Approx(500.0 / (25.0 - 12.25 + 0.01)).epsilon(1e-12));
        CHECK(c == doctest::Approx(39.1850).epsilon(1e-4));
    }
    SUBCASE("vanishes at long range") {
        CHECK(safety_cost(Vec3::Zero(), {Vec3(1e4, 0, 0)}, w, d_min) < 1e-5);
    }
    SUBCASE("strictly decreasing in distance outside the shell") {
        double prev = std::numeric_limits<double>::infinity();
        for (double d = 3.6; d < 12.0; d += 0.2) {
            const double c = safety_cost(Vec3::Zero(), {Vec3(d, 0, 0)}, w, d_min);
            CHECK(c < prev);
            prev = c;
        }
    }
    SUBCASE("finite and repelling inside the shell") {
        const double deep = safety_cost(Vec3::Zero(), {Vec3(0.5, 0, 0)}, w, d_min);
        const double shallow = safety_cost(Vec3::Zero(), {Vec3(3.0, 0, 0)}, w, d_min);
        CHECK(std::isfinite(deep));
        CHECK(deep > shallow);
        const Vec3 g = safety_cost_gradient(Vec3::Zero(), {Vec3(0.5, 0, 0)}, w, d_min);
        CHECK(g.x() > 0.0);   // cost rises toward the neighbor at +x, so
                              // descent pushes the agent away
    }
    SUBCASE("gradient matches finite differences") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> uni(-8.0, 8.0);
        const double h = 1e-6;
        for (int i = 0; i < 200; ++i) {
            const Vec3 p(uni(rng), uni(rng), uni(rng)), nb(uni(rng), uni(rng), uni(rng));
            const double tau = (p - nb).squaredNorm() - d_min * d_min + w.mu;
            if (std::abs(tau) < 1e-2) continue;   // skip the continuation kink
            const Vec3 g = safety_cost_gradient(p, {nb}, w, d_min);
            Vec3 fd;
            for (int a = 0; a < 3; ++a) {
                Vec3 dp = Vec3::Zero();
                dp(a) = h;
                fd(a) = (safety_cost(p + dp, {nb}, w, d_min) -
                         safety_cost(p - dp, {nb}, w, d_min)) / (2.0 * h);
            }
            CHECK((g - fd).norm() < 1e-4 * std::max(1.0, fd.norm()));
        }
    }
}

TEST_CASE("stage cost composition") {
    const LinkBudget b = default_budget();
    const SmoothingConfig cfg;
    AgentState agent;
    agent.position = Vec3(0, 0, 10);
    AgentState nb;
    nb.position = Vec3(12, 0, 10);

    SUBCASE("zero comm and safety reduce to the quadratic") {
        CostWeights w;
        w.w_comm = 0.0;
        w.w_safe = 0.0;
        ControlInput u;
        u.accel = Vec3(1, 0, 0);
        const double c = stage_cost(agent, u, Vec3(1, 0, 10), {nb}, w, b, cfg, 3.5);
        CHECK(c == doctest::Approx(tracking_cost(agent, Vec3(1, 0, 10), u, w)));
    }
    SUBCASE("all weights zero give zero") {
        CostWeights w;
        w.q_pos = 1e-300 * Eigen::Matrix3d::Identity();   // validate() wants PD
        w.r_diag.setZero();
        w.w_comm = 0.0;
        w.w_safe = 0.0;
        const double c = stage_cost(agent, ControlInput{}, agent.position, {}, w, b, cfg,
                                    3.5);
        CHECK(c == doctest::Approx(0.0));
    }
    SUBCASE("misalignment raises the cost") {
        CostWeights w;
        w.w_safe = 0.0;
        agent.yaw = 0.0;   // aligned with the neighbor due east
        const double aligned =
            stage_cost(agent, ControlInput{}, agent.position, {nb}, w, b, cfg, 3.5);
        agent.yaw = 0.5;
        const double misaligned =
            stage_cost(agent, ControlInput{}, agent.position, {nb}, w, b, cfg, 3.5);
        CHECK(misaligned > aligned);
    }
}

TEST_CASE("horizon gradient matches finite differences") {
    std::mt19937_64 rng(47);
    const int n = 5;
    const double h = 1e-6;
    int checked = 0;
    while (checked < 30) {
        HorizonProblem prob = random_problem(rng, n, true, true);
        const auto us = random_inputs(rng, n);

        // skip instances whose trajectory grazes a non-smooth point of the
        // cost (FoV clamp, azimuth wrap seam, barrier continuation); the
        // finite-difference oracle is invalid there
        const auto traj = rollout(prob.x0, us, prob.params);
        bool near_kink = false;
        for (int k = 0; k < n && !near_kink; ++k) {
            for (const Vec3& nb : prob.neighbor_positions[k]) {
                for (const Vec3& p : stencil_points(traj[k].position, prob.smoothing)) {
                    if ((p - nb).head<2>().norm() < 0.5) {
                        near_kink = true;
                        break;
                    }
                    const double mis = wrap_angle(los_azimuth(p, nb) - traj[k].yaw);
                    if (std::abs(std::abs(mis) - prob.budget.fov_rad) < 1e-3 ||
                        std::abs(std::abs(mis) - kPi) < 1e-3) {
                        near_kink = true;
                        break;
                    }
                }
                const double tau = (traj[k].position - nb).squaredNorm() -
                                   prob.params.d_min * prob.params.d_min + prob.weights.mu;
                if (std::abs(tau) < 1e-2) near_kink = true;
            }
        }
        if (near_kink) continue;

        Eigen::VectorXd grad;
        const double f0 = horizon_cost_and_gradient(prob, us, &grad);
        CHECK(f0 == doctest::Approx(horizon_cost(prob, us)).epsilon(1e-12));
        REQUIRE(grad.size() == 4 * n);

        Eigen::VectorXd fd(4 * n);
        for (int idx = 0; idx < 4 * n; ++idx) {
            auto perturbed = [&](double sign) {
                auto u2 = us;
                if (idx % 4 < 3) {
                    u2[idx / 4].accel(idx % 4) += sign * h;
                } else {
                    u2[idx / 4].yaw_rate += sign * h;
                }
                return horizon_cost(prob, u2);
            };
            fd(idx) = (perturbed(1.0) - perturbed(-1.0)) / (2.0 * h);
        }
        CHECK((grad - fd).norm() / std::max(1.0, fd.norm()) < 1e-5);
        ++checked;
    }
}

TEST_CASE("horizon of length one equals the stage cost") {
    std::mt19937_64 rng(53);
    HorizonProblem prob = random_problem(rng, 1, true, true);
    const auto us = random_inputs(rng, 1);
    const AgentState x1 = step(prob.x0, us[0], prob.params);
    std::vector<AgentState> nbs;
    for (const Vec3& p : prob.neighbor_positions[0]) {
        AgentState s;
        s.position = p;
        nbs.push_back(s);
    }
    const double direct = stage_cost(x1, us[0], prob.refs[0], nbs, prob.weights,
                                     prob.budget, prob.smoothing, prob.params.d_min);
    CHECK(horizon_cost(prob, us) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("quadratic subproblem gradient vanishes at the direct solution") {
    std::mt19937_64 rng(59);
    const int n = 6;
    for (int trial = 0; trial < 20; ++trial) {
        HorizonProblem prob = random_problem(rng, n, false, false);
        const auto astar = swarmlink_test::lq_solve(prob, n);
        Eigen::VectorXd grad;
        horizon_cost_and_gradient(prob, astar, &grad);
        CHECK(grad.lpNorm<Eigen::Infinity>() < 1e-8);
    }
}
