#include "paramres/spectrum.hpp"

#include <cmath>
#include <string>

#include "paramres/errors.hpp"

namespace paramres {

void SpectrumRequest::validate() const {
    resonator.validate();
    baths.validate();
    if (!(std::isfinite(xi) && xi >= 0.0))
        throw ConfigInvalid("spectrum: xi must be >= 0");
    if (omega_grid.empty())
        throw ConfigInvalid("spectrum: omega_grid must not be empty");
    for (double w : omega_grid)
        if (!std::isfinite(w))
            throw ConfigInvalid("spectrum: omega_grid entries must be finite");
}

SpectrumPoint s_pm_at(const ResonatorParams& r, const BathTemperatures& baths,
                      double xi, double omega, SpectrumVariant variant) {
    const double q = loaded_q(r);
    const double xi_q = xi * q;
    if (xi_q >= 1.0)
        throw ThresholdViolation("s_pm: xi*Q = " + std::to_string(xi_q) +
                                 " is at or above the parametric threshold (>= 1); "
                                 "stationary spectra do not exist");

    const double a_d = thermal_factor(r.f0, baths.t_damping);
    const double a_f = variant == SpectrumVariant::TwoBath
                           ? thermal_factor(r.f0, baths.t_feedline)
                           : a_d;

    // With no modulation and equal port temperatures the two correction terms
    // cancel identically and the output is the flat thermal floor.
    if (xi == 0.0 && a_f == a_d) return SpectrumPoint{a_d, a_d};

    const double u = r.inv_q_unloaded();
    const double fl = 1.0 / r.q_feedline;
    const double inv_q = u + fl;
    const double m = u - fl;
    const double w = 2.0 * omega / r.omega0();
    const double w2 = w * w;
    const double emit = 4.0 * fl * u * a_d;

    const double num_p = a_f * (w2 + (m - xi) * (m - xi)) + emit;
    const double num_m = a_f * (w2 + (m + xi) * (m + xi)) + emit;
    const double den_p = w2 + (inv_q - xi) * (inv_q - xi);
    const double den_m = w2 + (inv_q + xi) * (inv_q + xi);

    return SpectrumPoint{num_p / den_p, num_m / den_m};
}

QuadratureSpectra s_pm(const SpectrumRequest& request) {
    request.validate();
    QuadratureSpectra out;
    out.omega = request.omega_grid;
    out.f0 = request.resonator.f0;
    out.q_loaded = loaded_q(request.resonator);
    out.variant = request.variant;
    out.s_plus.reserve(out.omega.size());
    out.s_minus.reserve(out.omega.size());
    for (double omega : out.omega) {
        const SpectrumPoint p =
            s_pm_at(request.resonator, request.baths, request.xi, omega, request.variant);
        out.s_plus.push_back(p.s_plus);
        out.s_minus.push_back(p.s_minus);
    }
    return out;
}

std::vector<double> homodyne_spectrum(const QuadratureSpectra& spectra, HomodynePhase phase) {
    const double c = std::cos(phase.phi);
    const double s = std::sin(phase.phi);
    const double c2 = c * c;
    const double s2 = s * s;
    std::vector<double> out(spectra.size());
    for (std::size_t i = 0; i < spectra.size(); ++i)
        out[i] = spectra.s_plus[i] * c2 + spectra.s_minus[i] * s2;
    return out;
}

SqueezingReport squeezing_check(const QuadratureSpectra& spectra) {
    SqueezingReport report;
    report.is_squeezed.resize(spectra.size());
    report.margin.resize(spectra.size());
    if (spectra.size() == 0) return report;
    std::size_t best = 0;
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        const double s = spectra.s_minus[i];
        report.margin[i] = 0.5 - s;
        report.is_squeezed[i] = s < 0.5;
        report.any_squeezed = report.any_squeezed || report.is_squeezed[i];
        if (s < spectra.s_minus[best]) best = i;
    }
    report.min_s_minus = spectra.s_minus[best];
    report.omega_at_min = spectra.omega[best];
    report.best_margin = 0.5 - report.min_s_minus;
    return report;
}

}  // namespace paramres
