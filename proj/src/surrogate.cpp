#include "swarmlink/surrogate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace swarmlink {

namespace {
constexpr double kGbps = 1e-9;

// The two-ray field vanishes like z^2 at the ground, so evaluation points at
// or below z = 0 (reachable through solver trial rollouts and stencil shifts)
// continue with zero power and zero gradient instead of being rejected.
inline bool above_ground(const Vec3& a, const Vec3& b) {
    return a.z() > 0.0 && b.z() > 0.0;
}
}

void SmoothingConfig::validate() const {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("SmoothingConfig: epsilon must be > 0");
    }
}

std::array<Vec3, SmoothingConfig::kStencilSize> stencil_points(const Vec3& p,
                                                               const SmoothingConfig& cfg) {
    cfg.validate();
    const double e = cfg.epsilon;
    return {p,
            p + Vec3(e, 0, 0), p - Vec3(e, 0, 0),
            p + Vec3(0, e, 0), p - Vec3(0, e, 0),
            p + Vec3(0, 0, e), p - Vec3(0, 0, e)};
}

double smooth_field(const std::function<double(const Vec3&)>& field, const Vec3& p,
                    const SmoothingConfig& cfg) {
    double sum = 0.0;
    for (const Vec3& q : stencil_points(p, cfg)) {
        sum += field(q);
    }
    return sum / SmoothingConfig::kStencilSize;
}

double smoothed_channel_power(const Vec3& pi, const Vec3& pj, const LinkBudget& budget,
                              const SmoothingConfig& cfg) {
    return smooth_field(
        [&](const Vec3& q) {
            return above_ground(q, pj) ? channel_power(q, pj, budget) : 0.0;
        },
        pi, cfg);
}

double smoothed_hybrid_gain(const Vec3& pi, double yaw, const Vec3& pj,
                            const LinkBudget& budget, const SmoothingConfig& cfg) {
    return smooth_field(
        [&](const Vec3& q) {
            return hybrid_gain(wrap_angle(los_azimuth(q, pj) - yaw), budget);
        },
        pi, cfg);
}

SmoothedLink smoothed_snr(const Vec3& pi, double yaw, const Vec3& pj,
                          const LinkBudget& budget, const SmoothingConfig& cfg) {
    // The SNR is averaged as a product over the stencil, so the concavity of
    // log(1+x) makes the surrogate a true upper bound of the smoothed
    // capacity. p_bar and g_eps remain available as per-factor diagnostics.
    SmoothedLink out;
    out.p_bar = smoothed_channel_power(pi, pj, budget, cfg);
    out.g_eps = smoothed_hybrid_gain(pi, yaw, pj, budget, cfg);
    const double snr_prod = smooth_field(
        [&](const Vec3& q) {
            if (!above_ground(q, pj)) return 0.0;
            return channel_power(q, pj, budget) *
                   hybrid_gain(wrap_angle(los_azimuth(q, pj) - yaw), budget);
        },
        pi, cfg);
    out.snr_bar = budget.snr0 * snr_prod;
    out.surrogate_capacity = link_capacity(out.snr_bar, budget);
    return out;
}

double surrogate_cost(const AgentState& agent, const std::vector<AgentState>& neighbors,
                      const LinkBudget& budget, const SmoothingConfig& cfg) {
    double total = 0.0;
    for (const AgentState& nb : neighbors) {
        total += smoothed_snr(agent.position, agent.yaw, nb.position, budget, cfg)
                     .surrogate_capacity;
    }
    return total;
}

LinkGradient smoothed_link_gradient(const Vec3& pi, double yaw, const Vec3& pj,
                                    const LinkBudget& budget, const SmoothingConfig& cfg,
                                    SmoothedLink* link_out) {
    // stencil mean of SNR(q) = snr0 P(q) G(q) and of its per-point
    // product-rule gradient; averaging and differentiation commute
    const auto points = stencil_points(pi, cfg);
    double p_bar = 0.0, g_eps = 0.0, snr_mean = 0.0, dsnr_dyaw = 0.0;
    Vec3 grad_snr = Vec3::Zero();
    for (const Vec3& q : points) {
        const double misalign = wrap_angle(los_azimuth(q, pj) - yaw);
        const double gain = hybrid_gain(misalign, budget);
        g_eps += gain;
        if (!above_ground(q, pj)) continue;
        const double power = channel_power(q, pj, budget);
        const Vec3 grad_power = channel_power_gradient(q, pj, budget);
        const HybridGainGradient hg = hybrid_gain_gradient(yaw, q, pj, budget);
        p_bar += power;
        snr_mean += power * gain;
        grad_snr += gain * grad_power + power * hg.d_pi;
        dsnr_dyaw += power * hg.d_yaw;
    }
    const double m = SmoothingConfig::kStencilSize;
    p_bar /= m;
    g_eps /= m;
    snr_mean /= m;
    grad_snr /= m;
    dsnr_dyaw /= m;

    const double snr = budget.snr0 * snr_mean;
    // chain-rule weight of the log term
    const double w = budget.bandwidth_hz / std::log(2.0) / (1.0 + snr);

    LinkGradient g;
    g.grad_p = w * budget.snr0 * grad_snr;
    g.grad_yaw = w * budget.snr0 * dsnr_dyaw;
    if (link_out != nullptr) {
        link_out->p_bar = p_bar;
        link_out->g_eps = g_eps;
        link_out->snr_bar = snr;
        link_out->surrogate_capacity = link_capacity(snr, budget);
    }
    return g;
}

LinkGradient regularized_gradient(const AgentState& agent,
                                  const std::vector<AgentState>& neighbors,
                                  const LinkBudget& budget, const SmoothingConfig& cfg) {
    LinkGradient total;
    for (const AgentState& nb : neighbors) {
        const LinkGradient g =
            smoothed_link_gradient(agent.position, agent.yaw, nb.position, budget, cfg);
        total.grad_p += g.grad_p;
        total.grad_yaw += g.grad_yaw;
    }
    return total;
}

LinkGradient raw_link_gradient(const Vec3& pi, double yaw, const Vec3& pj,
                               const LinkBudget& budget) {
    if (!above_ground(pi, pj)) return LinkGradient{};
    const double power = channel_power(pi, pj, budget);
    const Vec3 grad_power = channel_power_gradient(pi, pj, budget);
    const double misalign = wrap_angle(los_azimuth(pi, pj) - yaw);
    const double gain = hybrid_gain(misalign, budget);
    const HybridGainGradient hg = hybrid_gain_gradient(yaw, pi, pj, budget);

    const double snr = budget.snr0 * power * gain;
    const double w = budget.bandwidth_hz / std::log(2.0) / (1.0 + snr);
    LinkGradient g;
    g.grad_p = w * budget.snr0 * (gain * grad_power + power * hg.d_pi);
    g.grad_yaw = w * budget.snr0 * power * hg.d_yaw;
    return g;
}

double estimate_lipschitz(const LinkBudget& budget, const SmoothingConfig& cfg,
                          const LipschitzRegion& region, int n_samples,
                          bool raw_field, std::uint64_t seed) {
    if (n_samples < 100) {
        throw std::invalid_argument("estimate_lipschitz: n_samples must be >= 100");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    auto grad_at = [&](const Vec3& p) -> Vec3 {
        const LinkGradient g =
            raw_field ? raw_link_gradient(p, region.yaw, region.neighbor, budget)
                      : smoothed_link_gradient(p, region.yaw, region.neighbor, budget, cfg);
        return kGbps * g.grad_p;
    };

    double sup = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        Vec3 x;
        for (int a = 0; a < 3; ++a) {
            x[a] = region.lo[a] + unit(rng) * (region.hi[a] - region.lo[a]);
        }
        Vec3 dir(gauss(rng), gauss(rng), gauss(rng));
        if (dir.norm() < 1e-12) continue;
        dir.normalize();
        // The raw field oscillates on the interference-fringe scale, so its
        // slope estimator must resolve a quarter wavelength; epsilon-scale
        // probes alias the fringes and understate the constant.
        const double base =
            raw_field ? std::min(cfg.epsilon, 0.25 * budget.wavelength_m)
                      : cfg.epsilon;
        const double h = base * (0.5 + 0.5 * unit(rng));
        const Vec3 y = x + h * dir;
        const double slope = (grad_at(x) - grad_at(y)).norm() / h;
        if (std::isfinite(slope) && slope > sup) sup = slope;
    }
    return sup;
}

}  // namespace swarmlink
