#pragma once

#include <complex>

namespace paramres {

/// Single-mode microwave resonator coupled to a feedline.
///
/// Internal (unloaded) losses and the feedline coupling are described by the
/// quality factors q_unloaded and q_feedline.  A resonator with no internal
/// loss is represented by q_unloaded = +infinity, so 1/q_unloaded is exactly
/// zero and every formula takes the lossless limit without special cases.
struct ResonatorParams {
    double f0 = 0.0;          ///< resonance frequency, Hz
    double q_unloaded = 0.0;  ///< internal-loss Q, +inf when lossless
    double q_feedline = 0.0;  ///< feedline-coupling Q

    static ResonatorParams make(double f0, double q_unloaded, double q_feedline);
    static ResonatorParams lossless(double f0, double q_feedline);

    [[nodiscard]] bool is_lossless() const;
    [[nodiscard]] double omega0() const;         ///< 2*pi*f0, rad/s
    [[nodiscard]] double inv_q_unloaded() const; ///< 0 when lossless

    /// Throws ConfigInvalid on non-physical values.
    void validate() const;
};

/// Temperatures of the two noise ports: the feedline and the fictitious port
/// representing internal damping.  Zero temperature is allowed and gives the
/// vacuum value (thermal factor exactly 1/2).
struct BathTemperatures {
    double t_feedline = 0.0;  ///< K
    double t_damping = 0.0;   ///< K

    void validate() const;
};

/// Harmonic modulation of the resonance frequency,
/// f_r(t) = f0 * (1 + xi * cos(2*pi*f_mod*t)).
struct Modulation {
    double xi = 0.0;     ///< fractional frequency-modulation depth, >= 0
    double f_mod = 0.0;  ///< modulation frequency, Hz

    /// Modulation at twice the resonance frequency (primary parametric resonance).
    static Modulation parametric_resonance(double xi, const ResonatorParams& r);

    void validate() const;
};

enum class RegimeClass { SubThreshold, AtThreshold, AboveThreshold };

struct Regime {
    RegimeClass classification;
    double xi_q;  ///< the threshold parameter xi * Q
};

/// |xi*Q - 1| within this tolerance classifies as AtThreshold.
inline constexpr double threshold_tolerance = 1e-9;

/// Loaded quality factor, 1/Q = 1/Q_u + 1/Q_f.  Returns q_feedline exactly
/// for a lossless resonator.
double loaded_q(const ResonatorParams& r);

/// Threshold classification of a parametric drive at the primary resonance.
/// Sub-threshold means xi*Q < 1: modulation losing against total damping.
Regime classify_regime(const ResonatorParams& r, const Modulation& m);

/// Symmetrized thermal occupation factor of a mode at frequency f0,
///   A(T) = 1/2 * coth(hbar*omega0 / (2*kB*T)),
/// i.e. (n_thermal + 1/2).  A(0) = 1/2 exactly (vacuum).
double thermal_factor(double f0_hz, double temperature_k);

/// Steady-state single-port reflection coefficient of the passive resonator,
///   S11(f) = ((k_u - k_f)/2 + i*2*pi*(f - f0)) / ((k_u + k_f)/2 + i*2*pi*(f - f0)),
/// with k_i = omega0/Q_i the partial energy decay rates.  |S11| <= 1; the dip
/// vanishes (|S11| = 1) for a lossless resonator and the response is 0 at f0
/// for critical coupling (Q_u = Q_f).
std::complex<double> reflection_response(const ResonatorParams& r, double f_hz);

/// Threshold parameter inferred from a static resonance shift:
///   xi*Q = Q * |f_dark - f_illuminated| / (2 * f_dark).
/// The factor 2 maps a static frequency shift to the equivalent modulation
/// depth at the primary parametric resonance.
double xi_q_from_shift(double f_dark_hz, double f_illuminated_hz, double q_loaded);

}  // namespace paramres
