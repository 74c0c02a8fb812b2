#include "swarmlink/cost.hpp"

#include <stdexcept>

namespace swarmlink {

void CostWeights::validate() const {
    if (!q_pos.isApprox(q_pos.transpose(), 1e-12)) {
        throw std::invalid_argument("CostWeights: q_pos must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(q_pos);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw std::invalid_argument("CostWeights: q_pos must be positive definite");
    }
    if (r_diag.minCoeff() < 0.0 || w_comm < 0.0 || w_safe < 0.0 || !(mu > 0.0)) {
        throw std::invalid_argument("CostWeights: weights must be non-negative, mu > 0");
    }
}

double tracking_cost(const AgentState& state, const Vec3& ref_pos,
                     const ControlInput& input, const CostWeights& weights) {
    const Vec3 e = state.position - ref_pos;
    const Eigen::Vector4d u(input.accel.x(), input.accel.y(), input.accel.z(),
                            input.yaw_rate);
    return e.dot(weights.q_pos * e) + u.dot(weights.r_diag.cwiseProduct(u));
}

namespace {

// Barrier term value and d(value)/d(tau) for denominator tau, with the linear
// continuation below the floor.
inline void barrier_term(double tau, double w_safe, double* value, double* dvalue) {
    if (tau > kBarrierDenomFloor) {
        *value = w_safe / tau;
        *dvalue = -w_safe / (tau * tau);
    } else {
        const double f = kBarrierDenomFloor;
        *value = w_safe * (1.0 / f + (f - tau) / (f * f));
        *dvalue = -w_safe / (f * f);
    }
}

}  // namespace

double safety_cost(const Vec3& pi, const std::vector<Vec3>& neighbor_positions,
                   const CostWeights& weights, double d_min) {
    double total = 0.0;
    for (const Vec3& pj : neighbor_positions) {
        const double tau = (pi - pj).squaredNorm() - d_min * d_min + weights.mu;
        double v, dv;
        barrier_term(tau, weights.w_safe, &v, &dv);
        total += v;
    }
    return total;
}

Vec3 safety_cost_gradient(const Vec3& pi, const std::vector<Vec3>& neighbor_positions,
                          const CostWeights& weights, double d_min) {
    Vec3 grad = Vec3::Zero();
    for (const Vec3& pj : neighbor_positions) {
        const Vec3 diff = pi - pj;
        const double tau = diff.squaredNorm() - d_min * d_min + weights.mu;
        double v, dv;
        barrier_term(tau, weights.w_safe, &v, &dv);
        grad += dv * 2.0 * diff;
    }
    return grad;
}

double stage_cost(const AgentState& agent, const ControlInput& input, const Vec3& ref_pos,
                  const std::vector<AgentState>& neighbor_states, const CostWeights& weights,
                  const LinkBudget& budget, const SmoothingConfig& cfg, double d_min) {
    std::vector<Vec3> nb_pos;
    nb_pos.reserve(neighbor_states.size());
    for (const AgentState& s : neighbor_states) nb_pos.push_back(s.position);

    double cost = tracking_cost(agent, ref_pos, input, weights) +
                  safety_cost(agent.position, nb_pos, weights, d_min);
    if (weights.w_comm > 0.0 && !neighbor_states.empty()) {
        cost -= weights.w_comm * kCapacityCostScale *
                surrogate_cost(agent, neighbor_states, budget, cfg);
    }
    return cost;
}

namespace {

struct StageEval {
    double cost{0.0};
    Vec3 dpos{Vec3::Zero()};
    double dyaw{0.0};
    Eigen::Vector4d du{Eigen::Vector4d::Zero()};
};

StageEval eval_stage(const HorizonProblem& prob, const AgentState& x,
                     const ControlInput& u, const Vec3& ref,
                     const std::vector<Vec3>& nb_pos, bool with_grad) {
    StageEval ev;
    const CostWeights& w = prob.weights;
    const Vec3 e = x.position - ref;
    const Eigen::Vector4d uv(u.accel.x(), u.accel.y(), u.accel.z(), u.yaw_rate);

    ev.cost = e.dot(w.q_pos * e) + uv.dot(w.r_diag.cwiseProduct(uv)) +
              safety_cost(x.position, nb_pos, w, prob.params.d_min);
    if (with_grad) {
        ev.dpos = 2.0 * (w.q_pos * e) +
                  safety_cost_gradient(x.position, nb_pos, w, prob.params.d_min);
        ev.du = 2.0 * w.r_diag.cwiseProduct(uv);
    }

    if (w.w_comm > 0.0 && !nb_pos.empty()) {
        const double scale = w.w_comm * kCapacityCostScale;
        for (const Vec3& pj : nb_pos) {
            if (with_grad) {
                SmoothedLink link;
                const LinkGradient g = smoothed_link_gradient(
                    x.position, x.yaw, pj, prob.budget, prob.smoothing, &link);
                ev.cost -= scale * link.surrogate_capacity;
                ev.dpos -= scale * g.grad_p;
                ev.dyaw -= scale * g.grad_yaw;
            } else {
                ev.cost -= scale * smoothed_snr(x.position, x.yaw, pj, prob.budget,
                                                prob.smoothing)
                                       .surrogate_capacity;
            }
        }
    }
    return ev;
}

}  // namespace

double horizon_cost_and_gradient(const HorizonProblem& prob,
                                 const std::vector<ControlInput>& inputs,
                                 Eigen::VectorXd* gradient) {
    const std::size_t n = inputs.size();
    if (n == 0 || prob.refs.size() != n || prob.neighbor_positions.size() != n) {
        throw std::invalid_argument("horizon_cost_and_gradient: mismatched sequence lengths");
    }
    const bool with_grad = gradient != nullptr;
    const double ts = prob.params.ts;

    const std::vector<AgentState> states = rollout(prob.x0, inputs, prob.params);

    double total = 0.0;
    std::vector<StageEval> evals(n);
    for (std::size_t k = 0; k < n; ++k) {
        evals[k] = eval_stage(prob, states[k], inputs[k], prob.refs[k],
                              prob.neighbor_positions[k], with_grad);
        total += evals[k].cost;
    }
    if (!with_grad) return total;

    gradient->resize(static_cast<Eigen::Index>(4 * n));
    // Adjoint over the linear dynamics: lambda_k = dTotal/dx(k).
    Eigen::Matrix<double, 7, 1> lambda = Eigen::Matrix<double, 7, 1>::Zero();
    for (std::size_t k = n; k-- > 0;) {
        // lambda currently holds dTotal/dx(k+2); fold in stage k's state term.
        Eigen::Matrix<double, 7, 1> adj;
        adj.segment<3>(0) = lambda.segment<3>(0);                       // A^T, p row
        adj.segment<3>(3) = ts * lambda.segment<3>(0) + lambda.segment<3>(3);
        adj(6) = lambda(6);
        adj.segment<3>(0) += evals[k].dpos;
        adj(6) += evals[k].dyaw;
        lambda = adj;

        Eigen::Vector4d gu = evals[k].du;
        gu.segment<3>(0) +=
            0.5 * ts * ts * lambda.segment<3>(0) + ts * lambda.segment<3>(3);
        gu(3) += ts * lambda(6);
        gradient->segment<4>(static_cast<Eigen::Index>(4 * k)) = gu;
    }
    return total;
}

double horizon_cost(const HorizonProblem& prob, const std::vector<ControlInput>& inputs) {
    return horizon_cost_and_gradient(prob, inputs, nullptr);
}

}  // namespace swarmlink
