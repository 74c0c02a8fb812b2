#include "swarmlink/channel.hpp"

#include <stdexcept>

namespace swarmlink {

void LinkBudget::finalize() {
    if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0) || !(n_ula >= 1.0)) {
        throw std::invalid_argument("LinkBudget: carrier, bandwidth, n_ula invalid");
    }
    if (!(fov_rad > 0.0) || fov_rad > kPi / 2.0) {
        throw std::invalid_argument("LinkBudget: fov_rad must lie in (0, pi/2]");
    }
    if (!(kappa > 0.0) || !(snr0 > 0.0) || !(hpbw_rad > 0.0)) {
        throw std::invalid_argument("LinkBudget: kappa, snr0, hpbw must be positive");
    }
    wavelength_m = kSpeedOfLight / carrier_hz;
    sigma_rad = hpbw_rad / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

LinkGeometry link_geometry(const Vec3& pi, const Vec3& pj) {
    if (!(pi.z() > 0.0) || !(pj.z() > 0.0)) {
        throw std::invalid_argument("link_geometry: both altitudes must be positive");
    }
    if ((pi - pj).squaredNorm() == 0.0) {
        throw std::invalid_argument("link_geometry: coincident positions");
    }
    LinkGeometry g;
    g.d_los = (pi - pj).norm();
    const Vec3 mirror(pj.x(), pj.y(), -pj.z());
    g.d_ref = (pi - mirror).norm();
    g.horizontal_dist = std::hypot(pi.x() - pj.x(), pi.y() - pj.y());
    g.grazing_angle = (g.horizontal_dist == 0.0)
                          ? kPi / 2.0
                          : std::atan((pi.z() + pj.z()) / g.horizontal_dist);
    return g;
}

std::complex<double> channel_gain(const Vec3& pi, const Vec3& pj, const LinkBudget& budget) {
    const LinkGeometry g = link_geometry(pi, pj);
    const double k = 2.0 * kPi / budget.wavelength_m;
    const std::complex<double> jphase1(0.0, -k * g.d_los);
    const std::complex<double> jphase2(0.0, -k * g.d_ref);
    return std::exp(jphase1) / g.d_los +
           budget.gamma_refl * std::exp(jphase2) / g.d_ref;
}

double channel_power(const Vec3& pi, const Vec3& pj, const LinkBudget& budget) {
    return std::norm(channel_gain(pi, pj, budget));
}

Vec3 channel_power_gradient(const Vec3& pi, const Vec3& pj, const LinkBudget& budget) {
    const LinkGeometry g = link_geometry(pi, pj);
    const double d1 = g.d_los;
    const double d2 = g.d_ref;
    const double gam = budget.gamma_refl;
    const double k = 2.0 * kPi / budget.wavelength_m;
    const double delta = d2 - d1;
    const double c = std::cos(k * delta);
    const double s = std::sin(k * delta);

    // |h|^2 = d1^-2 + gam^2 d2^-2 + 2 gam cos(k(d2-d1)) / (d1 d2)
    const double dP_dd1 =
        -2.0 / (d1 * d1 * d1) +
        2.0 * gam * (-c / (d1 * d1 * d2) + k * s / (d1 * d2));
    const double dP_dd2 =
        -2.0 * gam * gam / (d2 * d2 * d2) +
        2.0 * gam * (-c / (d1 * d2 * d2) - k * s / (d1 * d2));

    const Vec3 mirror(pj.x(), pj.y(), -pj.z());
    const Vec3 grad_d1 = (pi - pj) / d1;
    const Vec3 grad_d2 = (pi - mirror) / d2;
    return dP_dd1 * grad_d1 + dP_dd2 * grad_d2;
}

}  // namespace swarmlink
