#pragma once

#include <cmath>

#include "paramres/constants.hpp"
#include "paramres/errors.hpp"

namespace paramres {

/// Probe frequency and carrier scattering time; only the product omega*tau
/// enters the response ratios below.
struct CarrierParams {
    double omega = 0.0;  ///< probe angular frequency, rad/s
    double tau = 0.0;    ///< carrier scattering / relaxation time, s

    void validate() const {
        if (!(std::isfinite(omega) && omega > 0.0))
            throw ConfigInvalid("carrier: omega must be positive");
        if (!(std::isfinite(tau) && tau > 0.0))
            throw ConfigInvalid("carrier: tau must be positive");
    }

    [[nodiscard]] double omega_tau() const { return omega * tau; }
};

/// Free-carrier (Drude) response: ratio of the real to the imaginary part of
/// the photo-induced permittivity change, |d_eps' / d_eps''| = omega*tau.
inline double semiconductor_shift_ratio(const CarrierParams& c) {
    c.validate();
    return c.omega_tau();
}

/// Two-fluid superconductor response: the same ratio is 1/(omega*tau), the
/// reciprocal of the free-carrier case.
inline double superconductor_shift_ratio(const CarrierParams& c) {
    c.validate();
    return 1.0 / c.omega_tau();
}

/// Ratio of London penetration depth to normal-metal skin depth,
/// lambda0/delta = sqrt(omega*tau/2); small when omega*tau << 1.
inline double london_skin_ratio(const CarrierParams& c) {
    c.validate();
    return std::sqrt(0.5 * c.omega_tau());
}

/// Equivalent temperature of uniform acceleration, T = hbar*a / (2*pi*kB*c).
inline double unruh_temperature(double acceleration_m_s2) {
    if (!(std::isfinite(acceleration_m_s2) && acceleration_m_s2 >= 0.0))
        throw ConfigInvalid("unruh_temperature: acceleration must be >= 0");
    return constants::hbar * acceleration_m_s2 /
           (2.0 * constants::pi * constants::k_boltzmann * constants::speed_of_light);
}

}  // namespace paramres
