#pragma once

#include <map>
#include <string>

#include "swarmlink/baselines.hpp"

namespace swarmlink {

struct StepRecord {
    std::vector<AgentState> states;
    std::vector<ControlInput> inputs;
    std::vector<LinkSample> links;
    double min_dist{0.0};
    double solver_time_s{0.0};
    int solves{0};
    int solves_converged{0};
};

struct EpisodeRecord {
    ControllerKind kind{ControllerKind::Joint};
    std::uint64_t seed{0};
    std::uint64_t cfg_hash{0};
    double ts{0.1};
    std::vector<StepRecord> steps;
};

struct AggregateMetrics {
    double min_dist_avg{0.0};     // m, mean of per-realization global minima
    double min_dist_var{0.0};
    double min_dist_min{0.0};     // worst case
    double avg_capacity_bps{0.0};
    double outage_prob{0.0};
    double avg_misalign_rad{0.0};
    double avg_effort{0.0};       // mean ||u||^2
    double avg_solver_ms{0.0};
    double median_solver_ms{0.0};
    double solver_success_rate{1.0};
    int n_realizations{0};
};

inline constexpr double kOutageThresholdBps = 1e9;

/// One closed-loop realization. Deterministic per (cfg, kind, seed).
EpisodeRecord run_episode(const ScenarioConfig& cfg, ControllerKind kind,
                          std::uint64_t realization_seed);

/// Run several controllers on one realization seed. Ideal/Ele/Std share a
/// single kinematic-MPC trajectory and differ only in antenna evaluation.
std::map<ControllerKind, EpisodeRecord> run_realization(
    const ScenarioConfig& cfg, const std::vector<ControllerKind>& kinds,
    std::uint64_t realization_seed);

AggregateMetrics compute_metrics(const std::vector<EpisodeRecord>& records,
                                 double outage_threshold_bps = kOutageThresholdBps);

struct MonteCarloResult {
    std::map<ControllerKind, AggregateMetrics> metrics;
    std::map<ControllerKind, std::vector<EpisodeRecord>> records;
};

/// Paired Monte Carlo: all controllers share per-realization seeds derived
/// from cfg.seed through the split stream, so adding realizations never
/// perturbs earlier ones.
MonteCarloResult monte_carlo(const ScenarioConfig& cfg,
                             const std::vector<ControllerKind>& kinds, int n_real);

struct EpsilonSweepRow {
    double epsilon_m{0.0};
    double success_rate{0.0};
    double avg_capacity_bps{0.0};
    double avg_misalign_rad{0.0};
};

std::vector<EpsilonSweepRow> epsilon_sweep(const ScenarioConfig& cfg,
                                           const std::vector<double>& epsilons, int n_real);

struct LipschitzRow {
    double epsilon_m{0.0};
    double l_hat_smoothed{0.0};
    double l_hat_raw{0.0};
};

struct QuadratureRow {
    double epsilon_m{0.0};
    double error_eps{0.0};
    double error_half_eps{0.0};
    double halving_ratio{0.0};   // error(eps) / error(eps/2), ~4 for O(eps^2)
};

struct TheoryReport {
    std::vector<LipschitzRow> lipschitz;
    std::vector<QuadratureRow> quadrature;
    double contraction_ratio{0.0};
    bool contraction_stable{false};
};

/// Numerical verification of the regularity results: empirical gradient
/// Lipschitz estimates (smoothed vs raw), stencil-vs-dense-quadrature error
/// halving ratios on a synthetic smooth SNR field, and the contraction ratio
/// for the configured weights.
TheoryReport theory_report(const ScenarioConfig& cfg,
                           const std::vector<double>& lipschitz_epsilons = {0.01, 0.05, 0.2},
                           const std::vector<double>& quadrature_epsilons = {0.02, 0.05, 0.1});

/// Dense-quadrature reference for the smoothing operator: count-weighted
/// midpoint rule over the ball of radius epsilon (uniform kernel), at least
/// 10^4 interior points. Test oracle for the stencil approximation.
double ball_average(const std::function<double(const Vec3&)>& field, const Vec3& p,
                    double epsilon, int grid_n = 33);

/// Synthetic smooth SNR field used by the quadrature order check.
double synthetic_snr_field(const Vec3& p);

std::string format_metrics_table(const std::map<ControllerKind, AggregateMetrics>& metrics);
std::string format_theory_report(const TheoryReport& report);

// --- file outputs -----------------------------------------------------------

void write_links_csv(const std::map<ControllerKind, std::vector<EpisodeRecord>>& records,
                     const std::string& path);
void write_kinematic_csv(const std::map<ControllerKind, std::vector<EpisodeRecord>>& records,
                         const std::string& path);
void write_aggregate_csv(const std::map<ControllerKind, AggregateMetrics>& metrics,
                         const std::string& path);
void write_theory_csv(const TheoryReport& report, const std::string& path);
void write_manifest(const ScenarioConfig& cfg, int n_real, double wall_time_s,
                    const std::string& path);

/// Three SVG panels: top-down trajectories, min-distance vs time with the
/// d_min marker, capacity vs time per controller.
void emit_plots(const std::map<ControllerKind, std::vector<EpisodeRecord>>& records,
                const ScenarioConfig& cfg, const std::string& out_dir);

}  // namespace swarmlink
