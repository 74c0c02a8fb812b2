#pragma once

#include <complex>

#include "swarmlink/math_util.hpp"

namespace swarmlink {

/// Physical-layer constants of a directional link.
struct LinkBudget {
    double carrier_hz{60e9};
    double bandwidth_hz{2.16e9};
    double wavelength_m{kSpeedOfLight / 60e9};
    double n_ula{16.0};
    double hpbw_rad{6.4 * kPi / 180.0};
    double sigma_rad{6.4 * kPi / 180.0 / (2.0 * std::sqrt(2.0 * std::log(2.0)))};
    double fov_rad{kPi / 3.0};       // Phi_max
    double kappa{1.3};               // scan-loss exponent
    double snr0{91.657};             // linear, reference SNR at unit distance/gain
    double gamma_refl{-1.0};         // ground reflection coefficient

    /// Recompute the derived fields (wavelength, sigma) and check invariants.
    void finalize();
};

/// Geometry of the direct and ground-reflected paths between two agents.
struct LinkGeometry {
    double d_los{0.0};            // m
    double d_ref{0.0};            // m, via ground-image construction
    double grazing_angle{0.0};    // rad
    double horizontal_dist{0.0};  // m
};

LinkGeometry link_geometry(const Vec3& pi, const Vec3& pj);

/// Two-ray complex baseband gain: direct ray plus ground reflection.
std::complex<double> channel_gain(const Vec3& pi, const Vec3& pj, const LinkBudget& budget);

/// |channel_gain|^2.
double channel_power(const Vec3& pi, const Vec3& pj, const LinkBudget& budget);

/// Analytic gradient of channel_power with respect to pi.
Vec3 channel_power_gradient(const Vec3& pi, const Vec3& pj, const LinkBudget& budget);

}  // namespace swarmlink
