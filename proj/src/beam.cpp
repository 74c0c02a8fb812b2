#include "swarmlink/beam.hpp"

#include <algorithm>
#include <stdexcept>

namespace swarmlink {

double los_azimuth(const Vec3& pi, const Vec3& pj) {
    const double dx = pj.x() - pi.x();
    const double dy = pj.y() - pi.y();
    if (dx == 0.0 && dy == 0.0) {
        throw std::invalid_argument("los_azimuth: zero horizontal separation");
    }
    return wrap_angle(std::atan2(dy, dx));
}

double gaussian_gain(double yaw, double azimuth, const LinkBudget& budget) {
    const double d = wrap_angle(yaw - azimuth);
    return budget.n_ula * std::exp(-d * d / (2.0 * budget.sigma_rad * budget.sigma_rad));
}

double electronic_steer(double mech_misalign, const LinkBudget& budget) {
    return std::clamp(mech_misalign, -budget.fov_rad, budget.fov_rad);
}

BeamAlignment beam_alignment(double yaw, const Vec3& pi, const Vec3& pj,
                             const LinkBudget& budget) {
    BeamAlignment a;
    a.los_azimuth = los_azimuth(pi, pj);
    a.mech_misalign = wrap_angle(a.los_azimuth - yaw);
    a.elec_angle = electronic_steer(a.mech_misalign, budget);
    a.residual = a.mech_misalign - a.elec_angle;
    return a;
}

double hybrid_gain(double mech_misalign, const LinkBudget& budget) {
    const double phi_star = electronic_steer(mech_misalign, budget);
    const double res = mech_misalign - phi_star;
    const double scan = std::pow(std::cos(phi_star), budget.kappa);
    const double s2 = budget.sigma_rad * budget.sigma_rad;
    return budget.n_ula * scan * std::exp(-res * res / (2.0 * s2));
}

double hybrid_gain_dmisalign(double mech_misalign, const LinkBudget& budget) {
    const double s2 = budget.sigma_rad * budget.sigma_rad;
    if (std::abs(mech_misalign) <= budget.fov_rad) {
        // inside the FoV: residual is identically zero; only scan loss varies
        const double c = std::cos(mech_misalign);
        return -budget.n_ula * budget.kappa * std::pow(c, budget.kappa - 1.0) *
               std::sin(mech_misalign);
    }
    // outside: steering pinned at +-fov; only the residual Gaussian varies
    const double phi_star = electronic_steer(mech_misalign, budget);
    const double res = mech_misalign - phi_star;
    const double g = budget.n_ula * std::pow(std::cos(phi_star), budget.kappa) *
                     std::exp(-res * res / (2.0 * s2));
    return -g * res / s2;
}

HybridGainGradient hybrid_gain_gradient(double yaw, const Vec3& pi, const Vec3& pj,
                                        const LinkBudget& budget) {
    const double phi = los_azimuth(pi, pj);
    const double misalign = wrap_angle(phi - yaw);
    const double dg = hybrid_gain_dmisalign(misalign, budget);

    const double dx = pj.x() - pi.x();
    const double dy = pj.y() - pi.y();
    const double r2 = dx * dx + dy * dy;
    // phi = atan2(dy, dx) with (dx, dy) = planar(pj - pi)
    const Vec3 dphi_dpi(dy / r2, -dx / r2, 0.0);

    HybridGainGradient out;
    out.d_yaw = -dg;               // misalign = phi - yaw
    out.d_pi = dg * dphi_dpi;
    return out;
}

double link_capacity(double snr, const LinkBudget& budget) {
    if (snr < 0.0 || !std::isfinite(snr)) {
        throw std::invalid_argument("link_capacity: snr must be finite and non-negative");
    }
    // log1p keeps full precision for snr << 1
    return budget.bandwidth_hz * std::log1p(snr) / std::log(2.0);
}

}  // namespace swarmlink
