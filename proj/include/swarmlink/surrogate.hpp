#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "swarmlink/beam.hpp"
#include "swarmlink/channel.hpp"
#include "swarmlink/dynamics.hpp"

namespace swarmlink {

/// 7-point axis-aligned stencil configuration.
struct SmoothingConfig {
    double epsilon{0.05};           // m
    static constexpr int kStencilSize = 7;

    void validate() const;
};

/// Smoothed per-link quantities feeding the surrogate capacity.
struct SmoothedLink {
    double p_bar{0.0};               // smoothed channel power
    double g_eps{0.0};               // smoothed hybrid gain
    double snr_bar{0.0};             // linear
    double surrogate_capacity{0.0};  // bit/s
};

/// Gradient of one link's surrogate capacity with respect to (p_i, yaw_i).
struct LinkGradient {
    Vec3 grad_p{Vec3::Zero()};   // bit/s/m
    double grad_yaw{0.0};        // bit/s/rad
};

std::array<Vec3, SmoothingConfig::kStencilSize> stencil_points(const Vec3& p,
                                                               const SmoothingConfig& cfg);

/// Arithmetic mean of a scalar field over the stencil.
double smooth_field(const std::function<double(const Vec3&)>& field, const Vec3& p,
                    const SmoothingConfig& cfg);

double smoothed_channel_power(const Vec3& pi, const Vec3& pj, const LinkBudget& budget,
                              const SmoothingConfig& cfg);

/// Gain field smoothed over the position stencil with yaw held fixed.
double smoothed_hybrid_gain(const Vec3& pi, double yaw, const Vec3& pj,
                            const LinkBudget& budget, const SmoothingConfig& cfg);

/// Decoupled smoothed SNR and the Jensen surrogate capacity for one link.
SmoothedLink smoothed_snr(const Vec3& pi, double yaw, const Vec3& pj,
                          const LinkBudget& budget, const SmoothingConfig& cfg);

/// Sum of surrogate capacities over all neighbor links, bit/s.
double surrogate_cost(const AgentState& agent, const std::vector<AgentState>& neighbors,
                      const LinkBudget& budget, const SmoothingConfig& cfg);

/// Analytic gradient of one link's surrogate capacity. Differentiation and
/// stencil averaging commute because the offsets are constants.
LinkGradient smoothed_link_gradient(const Vec3& pi, double yaw, const Vec3& pj,
                                    const LinkBudget& budget, const SmoothingConfig& cfg,
                                    SmoothedLink* link_out = nullptr);

/// Gradient of surrogate_cost with respect to (position, yaw).
LinkGradient regularized_gradient(const AgentState& agent,
                                  const std::vector<AgentState>& neighbors,
                                  const LinkBudget& budget, const SmoothingConfig& cfg);

/// Gradient of the raw (unsmoothed) single-link capacity, for comparison runs.
LinkGradient raw_link_gradient(const Vec3& pi, double yaw, const Vec3& pj,
                               const LinkBudget& budget);

/// Axis-aligned sampling region for the empirical Lipschitz estimator.
struct LipschitzRegion {
    Vec3 lo{Vec3::Zero()};
    Vec3 hi{Vec3::Zero()};
    Vec3 neighbor{Vec3::Zero()};
    double yaw{0.0};
};

/// Empirical sup of ||grad(x) - grad(y)|| / ||x - y|| over nearby sampled
/// pairs of the single-link surrogate-capacity gradient (Gbit/s units, as the
/// comm cost consumes it). Pair separations are drawn in [epsilon/2, epsilon],
/// the resolution scale of the smoothed model. With raw_field the unsmoothed
/// capacity gradient is probed over the same pairs.
double estimate_lipschitz(const LinkBudget& budget, const SmoothingConfig& cfg,
                          const LipschitzRegion& region, int n_samples,
                          bool raw_field = false, std::uint64_t seed = 1234);

}  // namespace swarmlink
