#include "swarmlink/solver.hpp"

#include <chrono>
#include <stdexcept>

namespace swarmlink {

void SolverConfig::validate() const {
    if (!(armijo_c > 0.0) || armijo_c > 0.5) {
        throw std::invalid_argument("SolverConfig: armijo_c must lie in (0, 0.5]");
    }
    if (!(grad_tol > 0.0) || !(step_tol > 0.0) || !(backtrack_ratio > 0.0) ||
        backtrack_ratio >= 1.0 || max_iters < 1 || max_backtracks < 1) {
        throw std::invalid_argument("SolverConfig: invalid tolerances or limits");
    }
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<ControlInput> unpack(const VectorXd& z) {
    std::vector<ControlInput> inputs(static_cast<std::size_t>(z.size() / 4));
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        inputs[k].accel = z.segment<3>(static_cast<Eigen::Index>(4 * k));
        inputs[k].yaw_rate = z(static_cast<Eigen::Index>(4 * k + 3));
    }
    return inputs;
}

VectorXd pack(const std::vector<ControlInput>& inputs) {
    VectorXd z(static_cast<Eigen::Index>(4 * inputs.size()));
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        z.segment<3>(static_cast<Eigen::Index>(4 * k)) = inputs[k].accel;
        z(static_cast<Eigen::Index>(4 * k + 3)) = inputs[k].yaw_rate;
    }
    return z;
}

VectorXd clip_box(const VectorXd& z, const DynamicsParams& p) {
    VectorXd out = z;
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        const double lim = (i % 4 == 3) ? p.omega_max : p.a_max;
        out(i) = std::clamp(out(i), -lim, lim);
    }
    return out;
}

}  // namespace

std::pair<HorizonPlan, SolveDiagnostics> solve_fhocp(const HorizonProblem& prob,
                                                     int horizon,
                                                     const HorizonPlan* warm_start,
                                                     const SolverConfig& scfg) {
    scfg.validate();
    prob.params.validate();
    if (horizon < 1) throw std::invalid_argument("solve_fhocp: horizon must be >= 1");
    if (warm_start != nullptr &&
        warm_start->inputs.size() != static_cast<std::size_t>(horizon)) {
        throw std::invalid_argument("solve_fhocp: warm start length mismatch");
    }
    const auto t_start = std::chrono::steady_clock::now();
    const Eigen::Index n = 4 * horizon;

    VectorXd x = warm_start != nullptr
                     ? clip_box(pack(warm_start->inputs), prob.params)
                     : VectorXd::Zero(n);

    VectorXd g(n);
    double f = horizon_cost_and_gradient(prob, unpack(x), &g);
    if (!std::isfinite(f)) throw std::runtime_error("solve_fhocp: non-finite objective");

    VectorXd best_x = x;
    double best_f = f;

    MatrixXd hinv = MatrixXd::Identity(n, n);
    bool scaled = false;

    SolveDiagnostics diag;
    diag.converged = false;
    int iter = 0;
    double pg_scale = 1.0;
    for (; iter < scfg.max_iters; ++iter) {
        const double pg_norm = (x - clip_box(x - g, prob.params)).lpNorm<Eigen::Infinity>();
        if (iter == 0) pg_scale = 1.0 + pg_norm;
        diag.final_grad_norm = pg_norm / pg_scale;
        if (diag.final_grad_norm <= scfg.grad_tol) {
            diag.converged = true;
            break;
        }

        VectorXd d = -(hinv * g);
        if (g.dot(d) >= 0.0) {
            hinv.setIdentity();
            scaled = false;
            d = -g;
        }

        // Armijo backtracking on the projected trial point.
        double alpha = 1.0;
        bool accepted = false;
        VectorXd trial, step;
        double f_trial = f;
        for (int bt = 0; bt < scfg.max_backtracks; ++bt) {
            trial = clip_box(x + alpha * d, prob.params);
            step = trial - x;
            if (step.lpNorm<Eigen::Infinity>() < scfg.step_tol) break;
            f_trial = horizon_cost(prob, unpack(trial));
            if (!std::isfinite(f_trial)) {
                throw std::runtime_error("solve_fhocp: non-finite objective");
            }
            if (f_trial <= f + scfg.armijo_c * g.dot(step)) {
                accepted = true;
                break;
            }
            alpha *= scfg.backtrack_ratio;
        }
        if (!accepted) {
            if (step.size() > 0 && step.lpNorm<Eigen::Infinity>() < scfg.step_tol) {
                diag.converged = true;   // pinned against the box or at a minimum
            }
            break;
        }

        VectorXd g_new(n);
        f_trial = horizon_cost_and_gradient(prob, unpack(trial), &g_new);
        const VectorXd s = step;
        const VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-10 * s.norm() * y.norm()) {
            if (!scaled) {
                hinv = (sy / y.squaredNorm()) * MatrixXd::Identity(n, n);
                scaled = true;
            }
            // inverse BFGS update
            const double rho = 1.0 / sy;
            const VectorXd hy = hinv * y;
            hinv -= rho * (s * hy.transpose() + hy * s.transpose());
            hinv += (rho * rho * y.dot(hy) + rho) * (s * s.transpose());
        }

        x = trial;
        f = f_trial;
        g = g_new;
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
        if (s.lpNorm<Eigen::Infinity>() < scfg.step_tol) {
            diag.converged = true;
            break;
        }
    }

    diag.iterations = iter;
    diag.objective = best_f;
    diag.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    HorizonPlan plan;
    plan.inputs = unpack(best_x);
    plan.states = rollout(prob.x0, plan.inputs, prob.params);
    return {std::move(plan), diag};
}

HorizonPlan shift_warm_start(const HorizonPlan& plan, const AgentState& new_x0,
                             const DynamicsParams& params) {
    if (plan.inputs.empty()) {
        throw std::invalid_argument("shift_warm_start: empty plan");
    }
    HorizonPlan shifted;
    shifted.stamp = plan.stamp + 1;
    shifted.inputs.assign(plan.inputs.begin() + 1, plan.inputs.end());
    shifted.inputs.push_back(plan.inputs.back());
    shifted.states = rollout(new_x0, shifted.inputs, params);
    return shifted;
}

}  // namespace swarmlink
