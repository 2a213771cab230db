// SPDX-License-Identifier: Apache-2.0
#include "srstap/model.hpp"

#include <cmath>

namespace srstap {

void RadarParams::validate() const {
    if (n_sensors < 1) throw ConfigError("radar: n_sensors must be >= 1");
    if (n_pulses < 1) throw ConfigError("radar: n_pulses must be >= 1");
    if (!(pri > 0.0)) throw ConfigError("radar: pri must be > 0");
    if (!(wavelength > 0.0)) throw ConfigError("radar: wavelength must be > 0");
    if (!(spacing > 0.0)) throw ConfigError("radar: spacing must be > 0");
    if (!(noise_power > 0.0)) throw ConfigError("radar: noise_power must be > 0");
}

RadarParams default_params() { return RadarParams{}; }

double to_radians(double degrees) { return degrees * kPi / 180.0; }

CVector temporal_phase(const RadarParams& p, double doppler_hz) {
    const double step = 2.0 * kPi * doppler_hz / p.prf();
    CVector t(static_cast<Eigen::Index>(p.n_pulses));
    for (Eigen::Index m = 0; m < t.size(); ++m) t[m] = std::polar(1.0, step * static_cast<double>(m));
    return t;
}

CVector spatial_phase(const RadarParams& p, double angle_deg) {
    const double step = 2.0 * kPi * (p.spacing / p.wavelength) * std::sin(to_radians(angle_deg));
    CVector a(static_cast<Eigen::Index>(p.n_sensors));
    for (Eigen::Index n = 0; n < a.size(); ++n) a[n] = std::polar(1.0, step * static_cast<double>(n));
    return a;
}

SteeringVector steering_vector(const RadarParams& p, double angle_deg, double doppler_hz) {
    const CVector t = temporal_phase(p, doppler_hz);
    const CVector a = spatial_phase(p, angle_deg);
    const Eigen::Index n_sens = a.size();
    SteeringVector sv{CVector(t.size() * n_sens), angle_deg, doppler_hz};
    for (Eigen::Index m = 0; m < t.size(); ++m) sv.values.segment(m * n_sens, n_sens) = t[m] * a;
    return sv;
}

double clutter_doppler(const RadarParams& p, double angle_deg) {
    return 2.0 * p.velocity / p.wavelength * std::sin(to_radians(angle_deg + p.crab_angle));
}

double target_doppler(const RadarParams& p, double radial_velocity) {
    return 2.0 * radial_velocity / p.wavelength;
}

}  // namespace srstap
