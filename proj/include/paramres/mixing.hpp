#pragma once

#include <string>
#include <vector>

#include "paramres/resonator.hpp"

namespace paramres {

/// Pump tone plus parametric modulation detuned from twice the pump:
/// f_m = 2*f_pump + delta_f.  The steady-state response then carries an
/// intermodulation comb at f_n = f_pump + n*delta_f.
struct DriveConfig {
    double f_pump = 1.0;         ///< pump frequency
    double pump_amplitude = 0.4; ///< drive force amplitude in the oscillator equation
    double delta_f = 5e-4;       ///< comb spacing, >= 0
    double xi = 0.0;             ///< frequency-modulation depth

    [[nodiscard]] double f_m() const { return 2.0 * f_pump + delta_f; }
    void validate() const;
};

/// True when delta_f is not small against the resonance linewidth f0/Q; the
/// comb picture assumes delta_f well inside the linewidth (warn, don't fail).
bool delta_f_exceeds_linewidth(const DriveConfig& drive, double f0, double q_loaded);

struct Tone {
    int n = 0;
    double frequency = 0.0;
    double relative_power_db = 0.0;  ///< dB relative to the pump tone, NaN if not simulated
    bool detected = false;
    std::string identity;  ///< mixing combination, e.g. "f_m - f_pump"
};

/// Comb positions f_pump + n*delta_f for |n| <= max_order, each annotated
/// with the lowest-order mixing combination (1-2n)*f_pump + n*f_m that lands
/// there.  Pure arithmetic; no dynamics.
std::vector<Tone> predicted_tones(const DriveConfig& drive, int max_order);

/// Fixed-step integration settings for the driven modulated oscillator.  The
/// dynamics run in scaled units with the resonance at f0 = 1; only the loaded
/// Q (and xi*Q) of the resonator carry over.
struct MixingSimConfig {
    double sample_rate = 64.0;  ///< samples (= RK4 steps) per unit time
    double duration = 16000.0;  ///< analyzed span; must be an integer multiple of 1/delta_f
    double burn_in = 800.0;     ///< discarded transient
    double duffing = 0.05;      ///< cubic restoring-force coefficient (see simulate_mixing)
    double divergence_bound = 1e6;
    double detect_threshold_db = 20.0;  ///< tone must clear the floor by this much
    int max_order = 2;

    void validate() const;
};

struct ToneSpectrum {
    std::vector<Tone> tones;
    double pump_power = 0.0;   ///< |FFT|^2 at the pump bin
    double floor_power = 0.0;  ///< median off-comb |FFT|^2 near the carrier
    double floor_db = 0.0;     ///< floor relative to the pump, dB
};

/// Integrates the parametrically modulated driven oscillator
///
///   x'' + (w0/Q) x' + w0^2 [1 + 2*xi*cos(2*pi*f_m*t)] x + duffing * x^3
///     = pump_amplitude * cos(2*pi*f_pump*t),   w0 = 2*pi  (f0 = 1),
///
/// with a fixed-step 4th-order Runge-Kutta scheme, FFTs the steady-state
/// segment and reads the comb powers at f_pump + n*delta_f.
///
/// The frequency modulation couples the field to its conjugate and produces
/// the direct down-converted tone at f_m - f_pump; the cubic term plays the
/// role of the kinetic-inductance nonlinearity of a superconducting stripline
/// driven near its instability and generates the remaining comb orders
/// (e.g. 3*f_pump - f_m) through four-wave mixing.  Set duffing = 0 for the
/// strictly linear oscillator, which carries only the pump and the n = +1
/// tone near the carrier.
///
/// Durations are chosen so every comb tone is bin-exact: duration * delta_f
/// and duration * f_pump must be integers (ToneNotResolved otherwise).
/// Throws NumericalInstability when |x| exceeds divergence_bound, which is
/// how above-threshold (xi*Q > 1) runs terminate.
ToneSpectrum simulate_mixing(const ResonatorParams& r, const DriveConfig& drive,
                             const MixingSimConfig& cfg);

}  // namespace paramres
