// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "srstap/types.hpp"

#include <cstddef>

namespace srstap {

/// Side-looking ULA airborne radar. Angles are degrees at this surface;
/// conversion to radians happens only in `to_radians`.
struct RadarParams {
    std::size_t n_sensors = 8;   // N
    std::size_t n_pulses = 8;    // M
    double velocity = 300.0;     // m/s
    double pri = 0.25e-3;        // s
    double wavelength = 0.3;     // m
    double spacing = 0.15;       // m
    double crab_angle = 0.0;     // degrees
    double noise_power = 1.0;    // linear

    [[nodiscard]] double prf() const { return 1.0 / pri; }
    [[nodiscard]] std::size_t dof() const { return n_sensors * n_pulses; }

    /// Throws ConfigError on the first violated invariant.
    void validate() const;
};

/// The simulated geometry used throughout the convergence experiments.
RadarParams default_params();

double to_radians(double degrees);

struct SteeringVector {
    CVector values;          // length NM, index m*N + n
    double angle_deg = 0.0;
    double doppler_hz = 0.0;
};

/// Pulse-domain phase ramp exp(j 2 pi m f_d / PRF), m in [0, M).
CVector temporal_phase(const RadarParams& p, double doppler_hz);

/// Element-domain phase ramp exp(j 2 pi n (d / lambda) sin(theta)), n in [0, N).
CVector spatial_phase(const RadarParams& p, double angle_deg);

/// Temporal (x) spatial Kronecker product; sensor index runs fastest.
SteeringVector steering_vector(const RadarParams& p, double angle_deg, double doppler_hz);

/// Stationary-clutter Doppler (2v / lambda) sin(theta + crab).
double clutter_doppler(const RadarParams& p, double angle_deg);

/// Doppler of a point target closing at `radial_velocity`: 2 v_r / lambda.
double target_doppler(const RadarParams& p, double radial_velocity);

}  // namespace srstap
