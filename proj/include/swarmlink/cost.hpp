#pragma once

#include <vector>

#include "swarmlink/surrogate.hpp"

namespace swarmlink {

/// Weights of the four stage-cost terms. The communication term enters the
/// cost in Gbit/s so that the paper-scale weights (q_pos ~ 1, w_comm ~ 1)
/// remain commensurate.
struct CostWeights {
    Eigen::Matrix3d q_pos{2.0 * Eigen::Matrix3d::Identity()};
    Eigen::Vector4d r_diag{0.1, 0.1, 0.1, 0.001};  // [ax, ay, az, omega]
    double w_comm{1.0};
    double w_safe{500.0};
    double mu{0.01};   // m^2, barrier relaxation

    void validate() const;
};

/// Control sequence and the matching predicted trajectory of one agent.
/// states[k] is the state after applying inputs[0..k] from the owner's x0.
struct HorizonPlan {
    std::vector<ControlInput> inputs;
    std::vector<AgentState> states;
    long stamp{0};
};

/// Capacity-to-cost unit conversion (bit/s -> Gbit/s).
inline constexpr double kCapacityCostScale = 1e-9;

/// Barrier denominator floor; below it the barrier continues linearly so the
/// cost stays finite and the gradient keeps pointing toward separation.
inline constexpr double kBarrierDenomFloor = 1e-6;

double tracking_cost(const AgentState& state, const Vec3& ref_pos,
                     const ControlInput& input, const CostWeights& weights);

double safety_cost(const Vec3& pi, const std::vector<Vec3>& neighbor_positions,
                   const CostWeights& weights, double d_min);

Vec3 safety_cost_gradient(const Vec3& pi, const std::vector<Vec3>& neighbor_positions,
                          const CostWeights& weights, double d_min);

/// Full stage cost: tracking + regularization + safety - w_comm * surrogate.
double stage_cost(const AgentState& agent, const ControlInput& input, const Vec3& ref_pos,
                  const std::vector<AgentState>& neighbor_states, const CostWeights& weights,
                  const LinkBudget& budget, const SmoothingConfig& cfg, double d_min);

/// Per-stage neighbor position predictions, frozen during one agent's solve.
/// neighbor_positions[k] lists the neighbors' predicted positions at the same
/// stage as the agent's state after input k.
struct HorizonProblem {
    AgentState x0;
    std::vector<Vec3> refs;                            // length N_c
    std::vector<std::vector<Vec3>> neighbor_positions; // length N_c
    CostWeights weights;
    LinkBudget budget;
    SmoothingConfig smoothing;
    DynamicsParams params;
};

/// Total horizon cost and its gradient over all stage inputs (stage-major:
/// [ax, ay, az, omega] of stage 0, then stage 1, ...). The gradient
/// back-propagates the stage state-gradients through the linear dynamics.
double horizon_cost_and_gradient(const HorizonProblem& prob,
                                 const std::vector<ControlInput>& inputs,
                                 Eigen::VectorXd* gradient);

/// Cost only (used by line searches and finite-difference oracles).
double horizon_cost(const HorizonProblem& prob, const std::vector<ControlInput>& inputs);

}  // namespace swarmlink
