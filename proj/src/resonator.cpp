#include "paramres/resonator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "paramres/constants.hpp"
#include "paramres/errors.hpp"

namespace paramres {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigInvalid(what);
}

}  // namespace

ResonatorParams ResonatorParams::make(double f0, double q_unloaded, double q_feedline) {
    ResonatorParams r{f0, q_unloaded, q_feedline};
    r.validate();
    return r;
}

ResonatorParams ResonatorParams::lossless(double f0, double q_feedline) {
    return make(f0, std::numeric_limits<double>::infinity(), q_feedline);
}

bool ResonatorParams::is_lossless() const {
    return std::isinf(q_unloaded);
}

double ResonatorParams::omega0() const {
    return 2.0 * constants::pi * f0;
}

double ResonatorParams::inv_q_unloaded() const {
    return is_lossless() ? 0.0 : 1.0 / q_unloaded;
}

void ResonatorParams::validate() const {
    require(std::isfinite(f0) && f0 > 0.0, "resonator: f0 must be positive and finite");
    require(q_unloaded > 0.0 && !std::isnan(q_unloaded),
            "resonator: q_unloaded must be positive (+inf for lossless)");
    require(std::isfinite(q_feedline) && q_feedline > 0.0,
            "resonator: q_feedline must be positive and finite");
}

void BathTemperatures::validate() const {
    require(std::isfinite(t_feedline) && t_feedline >= 0.0,
            "baths: t_feedline must be >= 0");
    require(std::isfinite(t_damping) && t_damping >= 0.0,
            "baths: t_damping must be >= 0");
}

Modulation Modulation::parametric_resonance(double xi, const ResonatorParams& r) {
    Modulation m{xi, 2.0 * r.f0};
    m.validate();
    return m;
}

void Modulation::validate() const {
    require(std::isfinite(xi) && xi >= 0.0, "modulation: xi must be >= 0");
    require(std::isfinite(f_mod) && f_mod >= 0.0, "modulation: f_mod must be >= 0");
}

double loaded_q(const ResonatorParams& r) {
    r.validate();
    if (r.is_lossless()) return r.q_feedline;
    return 1.0 / (1.0 / r.q_unloaded + 1.0 / r.q_feedline);
}

Regime classify_regime(const ResonatorParams& r, const Modulation& m) {
    m.validate();
    const double xi_q = m.xi * loaded_q(r);
    RegimeClass c;
    if (std::abs(xi_q - 1.0) <= threshold_tolerance) {
        c = RegimeClass::AtThreshold;
    } else if (xi_q < 1.0) {
        c = RegimeClass::SubThreshold;
    } else {
        c = RegimeClass::AboveThreshold;
    }
    return Regime{c, xi_q};
}

double thermal_factor(double f0_hz, double temperature_k) {
    require(std::isfinite(f0_hz) && f0_hz > 0.0, "thermal_factor: f0 must be positive");
    require(temperature_k >= 0.0 && !std::isnan(temperature_k),
            "thermal_factor: temperature must be >= 0");
    if (temperature_k == 0.0) return 0.5;
    const double x = constants::hbar * 2.0 * constants::pi * f0_hz /
                     (2.0 * constants::k_boltzmann * temperature_k);
    // coth(x) = 1 + 2/(e^{2x} - 1); expm1 keeps the small-x regime accurate and
    // overflows cleanly to coth = 1 for large x.
    return 0.5 * (1.0 + 2.0 / std::expm1(2.0 * x));
}

std::complex<double> reflection_response(const ResonatorParams& r, double f_hz) {
    r.validate();
    require(std::isfinite(f_hz), "reflection_response: frequency must be finite");
    const double omega0 = r.omega0();
    const double kappa_u = omega0 * r.inv_q_unloaded();
    const double kappa_f = omega0 / r.q_feedline;
    const double detuning = 2.0 * constants::pi * (f_hz - r.f0);
    const std::complex<double> num(0.5 * (kappa_u - kappa_f), detuning);
    const std::complex<double> den(0.5 * (kappa_u + kappa_f), detuning);
    return num / den;
}

double xi_q_from_shift(double f_dark_hz, double f_illuminated_hz, double q_loaded) {
    require(std::isfinite(f_dark_hz) && f_dark_hz > 0.0,
            "xi_q_from_shift: f_dark must be positive");
    require(std::isfinite(f_illuminated_hz) && f_illuminated_hz > 0.0,
            "xi_q_from_shift: f_illuminated must be positive");
    require(std::isfinite(q_loaded) && q_loaded > 0.0,
            "xi_q_from_shift: q_loaded must be positive");
    return q_loaded * std::abs(f_dark_hz - f_illuminated_hz) / (2.0 * f_dark_hz);
}

}  // namespace paramres
