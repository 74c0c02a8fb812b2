#pragma once

#include "swarmlink/channel.hpp"
#include "swarmlink/math_util.hpp"

namespace swarmlink {

/// Decomposition of the pointing geometry for one link.
/// Frame convention: x east, y north, angles counterclockwise from +x;
/// yaw uses the same frame. Beam pointing is azimuth-only.
struct BeamAlignment {
    double los_azimuth{0.0};     // rad, azimuth of pj seen from pi
    double mech_misalign{0.0};   // rad, wrapped LoS azimuth minus yaw
    double elec_angle{0.0};      // rad, clamped to [-fov, fov]
    double residual{0.0};        // rad, mech_misalign - elec_angle
};

/// Planar azimuth of pj as seen from pi; requires horizontal separation.
double los_azimuth(const Vec3& pi, const Vec3& pj);

/// Gaussian main-lobe proxy: n_ula * exp(-wrap(yaw-azimuth)^2 / (2 sigma^2)).
double gaussian_gain(double yaw, double azimuth, const LinkBudget& budget);

/// Clamp the mechanical misalignment into the electronic field of view.
double electronic_steer(double mech_misalign, const LinkBudget& budget);

BeamAlignment beam_alignment(double yaw, const Vec3& pi, const Vec3& pj,
                             const LinkBudget& budget);

/// Scan loss times residual Gaussian: n_ula (cos phi*)^kappa exp(-res^2/(2 sigma^2)).
double hybrid_gain(double mech_misalign, const LinkBudget& budget);

struct HybridGainGradient {
    double d_yaw{0.0};       // 1/rad
    Vec3 d_pi{Vec3::Zero()}; // 1/m
};

/// Piecewise-analytic derivative of hybrid_gain through the LoS azimuth.
/// At the clamp boundary |misalign| == fov the interior branch is used.
HybridGainGradient hybrid_gain_gradient(double yaw, const Vec3& pi, const Vec3& pj,
                                        const LinkBudget& budget);

/// Derivative of hybrid_gain with respect to the mechanical misalignment.
double hybrid_gain_dmisalign(double mech_misalign, const LinkBudget& budget);

/// Shannon capacity in bit/s.
double link_capacity(double snr, const LinkBudget& budget);

}  // namespace swarmlink
