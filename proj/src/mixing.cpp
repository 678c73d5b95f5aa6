#include "paramres/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paramres/constants.hpp"
#include "paramres/errors.hpp"
#include "paramres/fft.hpp"

namespace paramres {

namespace {

std::string coeff_term(long long coeff, const char* name) {
    if (coeff == 1) return name;
    return std::to_string(coeff) + "*" + name;
}

// Lowest-order combination a*f_pump + b*f_m landing on f_pump + n*delta_f.
std::string mixing_identity(int n) {
    if (n == 0) return "f_pump";
    const long long a = 1 - 2ll * n;
    const long long b = n;
    std::string pos, neg;
    if (a > 0) pos = coeff_term(a, "f_pump");
    else neg = coeff_term(-a, "f_pump");
    if (b > 0) {
        if (!pos.empty()) pos += " + ";
        pos += coeff_term(b, "f_m");
    } else {
        if (!neg.empty()) neg += " + ";
        neg += coeff_term(-b, "f_m");
    }
    return pos + " - " + neg;
}

bool close_to_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) <= tol * std::max(1.0, std::abs(x));
}

struct OscillatorRhs {
    double gamma;        // w0 / Q
    double w0_sq;        // (2*pi)^2
    double two_xi_w0sq;  // modulation amplitude on x
    double beta;         // cubic coefficient
    double omega_m;      // 2*pi*f_m
    double omega_p;      // 2*pi*f_pump
    double force;

    void eval(double t, double x, double v, double& dx, double& dv) const {
        const double wsq = w0_sq + two_xi_w0sq * std::cos(omega_m * t);
        dx = v;
        dv = force * std::cos(omega_p * t) - gamma * v - wsq * x - beta * x * x * x;
    }
};

}  // namespace

void DriveConfig::validate() const {
    if (!(std::isfinite(f_pump) && f_pump > 0.0))
        throw ConfigInvalid("drive: f_pump must be positive");
    if (!(std::isfinite(pump_amplitude) && pump_amplitude >= 0.0))
        throw ConfigInvalid("drive: pump_amplitude must be >= 0");
    if (!(std::isfinite(delta_f) && delta_f >= 0.0))
        throw ConfigInvalid("drive: delta_f must be >= 0");
    if (!(std::isfinite(xi) && xi >= 0.0)) throw ConfigInvalid("drive: xi must be >= 0");
}

bool delta_f_exceeds_linewidth(const DriveConfig& drive, double f0, double q_loaded) {
    return drive.delta_f * q_loaded >= f0;
}

std::vector<Tone> predicted_tones(const DriveConfig& drive, int max_order) {
    drive.validate();
    if (max_order < 0) throw ConfigInvalid("predicted_tones: max_order must be >= 0");
    std::vector<Tone> tones;
    tones.reserve(2 * static_cast<std::size_t>(max_order) + 1);
    for (int n = -max_order; n <= max_order; ++n) {
        Tone t;
        t.n = n;
        t.frequency = drive.f_pump + static_cast<double>(n) * drive.delta_f;
        t.relative_power_db = std::numeric_limits<double>::quiet_NaN();
        t.detected = false;
        t.identity = mixing_identity(n);
        tones.push_back(std::move(t));
    }
    return tones;
}

void MixingSimConfig::validate() const {
    if (!(std::isfinite(sample_rate) && sample_rate >= 8.0))
        throw ConfigInvalid("mixing: sample_rate must be >= 8 samples per unit time");
    if (!(std::isfinite(duration) && duration > 0.0))
        throw ConfigInvalid("mixing: duration must be positive");
    if (!(std::isfinite(burn_in) && burn_in >= 0.0))
        throw ConfigInvalid("mixing: burn_in must be >= 0");
    if (!(std::isfinite(duffing)))
        throw ConfigInvalid("mixing: duffing coefficient must be finite");
    if (!(std::isfinite(divergence_bound) && divergence_bound > 0.0))
        throw ConfigInvalid("mixing: divergence_bound must be positive");
    if (!(std::isfinite(detect_threshold_db) && detect_threshold_db > 0.0))
        throw ConfigInvalid("mixing: detect_threshold_db must be positive");
    if (max_order < 1) throw ConfigInvalid("mixing: max_order must be >= 1");
}

ToneSpectrum simulate_mixing(const ResonatorParams& r, const DriveConfig& drive,
                             const MixingSimConfig& cfg) {
    drive.validate();
    cfg.validate();
    const double q = loaded_q(r);

    const double dt = 1.0 / cfg.sample_rate;
    if (!close_to_integer(cfg.duration * cfg.sample_rate))
        throw ConfigInvalid("mixing: duration must be a whole number of samples");
    const auto n_samples = static_cast<std::size_t>(std::llround(cfg.duration * cfg.sample_rate));
    const auto burn_steps = static_cast<std::size_t>(std::llround(cfg.burn_in * cfg.sample_rate));

    // Bin-exact comb: every tone must land on an FFT bin of the analyzed span.
    if (!close_to_integer(cfg.duration * drive.f_pump))
        throw ToneNotResolved("mixing: duration * f_pump must be an integer (pump off-bin)");
    if (drive.delta_f > 0.0 && !close_to_integer(cfg.duration * drive.delta_f))
        throw ToneNotResolved(
            "mixing: duration must be an integer multiple of 1/delta_f (comb off-bin)");
    const auto pump_bin = static_cast<long long>(std::llround(cfg.duration * drive.f_pump));
    const auto delta_bin = static_cast<long long>(std::llround(cfg.duration * drive.delta_f));
    // The floor estimate discards every comb bin and its direct neighbors, so
    // the comb teeth must sit at least 4 bins apart to leave floor bins over.
    if (drive.delta_f > 0.0 && delta_bin < 4)
        throw ToneNotResolved("mixing: comb spacing is " + std::to_string(delta_bin) +
                              " bins; need >= 4 (increase duration)");

    OscillatorRhs rhs;
    rhs.gamma = 2.0 * constants::pi / q;
    rhs.w0_sq = 4.0 * constants::pi * constants::pi;
    rhs.two_xi_w0sq = 2.0 * drive.xi * rhs.w0_sq;
    rhs.beta = cfg.duffing;
    rhs.omega_m = 2.0 * constants::pi * drive.f_m();
    rhs.omega_p = 2.0 * constants::pi * drive.f_pump;
    rhs.force = drive.pump_amplitude;

    std::vector<double> record;
    record.reserve(n_samples);

    double x = 0.0, v = 0.0, t = 0.0;
    const std::size_t total = burn_steps + n_samples;
    for (std::size_t k = 0; k < total; ++k) {
        if (k >= burn_steps) record.push_back(x);

        double k1x, k1v, k2x, k2v, k3x, k3v, k4x, k4v;
        rhs.eval(t, x, v, k1x, k1v);
        rhs.eval(t + 0.5 * dt, x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, k2x, k2v);
        rhs.eval(t + 0.5 * dt, x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, k3x, k3v);
        rhs.eval(t + dt, x + dt * k3x, v + dt * k3v, k4x, k4v);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t = static_cast<double>(k + 1) * dt;

        if (!std::isfinite(x) || !std::isfinite(v) || std::abs(x) > cfg.divergence_bound)
            throw NumericalInstability("mixing: |x| exceeded " +
                                       std::to_string(cfg.divergence_bound) + " at t = " +
                                       std::to_string(t) + "; xi*Q = " +
                                       std::to_string(drive.xi * q));
    }

    RealFft fft(n_samples);
    const auto spec = fft.forward(record);
    std::vector<double> power(spec.size());
    for (std::size_t i = 0; i < spec.size(); ++i) power[i] = std::norm(spec[i]);

    const auto bins = static_cast<long long>(power.size());
    if (pump_bin + static_cast<long long>(cfg.max_order) * delta_bin >= bins - 1 ||
        pump_bin - static_cast<long long>(cfg.max_order) * delta_bin <= 0)
        throw ToneNotResolved("mixing: comb extends outside the resolved spectrum");

    // Median off-comb power in a window around the carrier.
    const long long half_window =
        std::max<long long>(200, 10 * std::max<long long>(delta_bin, 1) * cfg.max_order);
    const long long lo = std::max<long long>(1, pump_bin - half_window);
    const long long hi = std::min<long long>(bins - 2, pump_bin + half_window);
    std::vector<double> off_comb;
    off_comb.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (long long j = lo; j <= hi; ++j) {
        bool on_comb = false;
        if (delta_bin > 0) {
            const long long rel = j - pump_bin;
            const long long nearest = std::llround(static_cast<double>(rel) /
                                                   static_cast<double>(delta_bin));
            on_comb = std::abs(rel - nearest * delta_bin) <= 1;
        } else {
            on_comb = std::abs(j - pump_bin) <= 1;
        }
        if (!on_comb) off_comb.push_back(power[static_cast<std::size_t>(j)]);
    }
    if (off_comb.empty())
        throw ToneNotResolved("mixing: no off-comb bins available for the floor estimate");
    std::nth_element(off_comb.begin(), off_comb.begin() + off_comb.size() / 2, off_comb.end());
    const double floor_power = off_comb[off_comb.size() / 2];

    const double pump_power = power[static_cast<std::size_t>(pump_bin)];
    if (pump_power <= 0.0)
        throw NumericalInstability("mixing: pump tone has no power");
    const double detect_factor = std::pow(10.0, cfg.detect_threshold_db / 10.0);

    ToneSpectrum result;
    result.pump_power = pump_power;
    result.floor_power = floor_power;
    result.floor_db = 10.0 * std::log10(std::max(floor_power, 1e-300) / pump_power);
    result.tones = predicted_tones(drive, cfg.max_order);
    for (Tone& tone : result.tones) {
        const long long j = pump_bin + static_cast<long long>(tone.n) * delta_bin;
        const double p = power[static_cast<std::size_t>(j)];
        tone.relative_power_db = 10.0 * std::log10(std::max(p, 1e-300) / pump_power);
        tone.detected = p > floor_power * detect_factor;
    }
    return result;
}

}  // namespace paramres
