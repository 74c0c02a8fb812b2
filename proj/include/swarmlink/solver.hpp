#pragma once

#include "swarmlink/cost.hpp"

namespace swarmlink {

struct SolverConfig {
    int max_iters{300};
    double grad_tol{1e-3};          // relative to 1 + |objective|
    double step_tol{1e-8};
    double armijo_c{1e-4};
    double backtrack_ratio{0.5};
    int max_backtracks{25};

    void validate() const;
};

struct SolveDiagnostics {
    int iterations{0};
    bool converged{false};
    double final_grad_norm{0.0};    // projected gradient norm, cost-scale relative
    double objective{0.0};
    double wall_time_s{0.0};
};

/// Solve the finite-horizon problem for one agent: quasi-Newton (BFGS)
/// quadratic model, search direction projected onto the input box, Armijo
/// backtracking. The dynamics are eliminated by rollout substitution, so the
/// only explicit constraints are the per-entry input bounds. The returned
/// objective never exceeds the warm start's.
std::pair<HorizonPlan, SolveDiagnostics> solve_fhocp(const HorizonProblem& prob,
                                                     int horizon,
                                                     const HorizonPlan* warm_start,
                                                     const SolverConfig& scfg);

/// Receding-horizon warm start: drop the first input, duplicate the last.
/// States are re-rolled by the next solve; the returned plan keeps the old
/// states shifted for neighbor-prediction use.
HorizonPlan shift_warm_start(const HorizonPlan& plan, const AgentState& new_x0,
                             const DynamicsParams& params);

}  // namespace swarmlink
