#pragma once

#include <cstddef>
#include <vector>

#include "paramres/resonator.hpp"

namespace paramres {

/// Two readings of the noise model behind the quadrature spectra.
///
/// AsPrinted weights both the reflected-input term and the internal-emission
/// term with the single thermal factor of the damping bath.  TwoBath keeps the
/// two ports at their own temperatures: the reflected term carries the
/// feedline thermal factor, the emission term the damping-bath factor.  The
/// variants coincide when the two baths are at the same temperature.
enum class SpectrumVariant { AsPrinted, TwoBath };

/// Inputs for the analytic output-quadrature spectra of a resonator whose
/// frequency is modulated at exactly twice the carrier (depth xi).  The
/// spectra only exist below the parametric threshold, xi * Q < 1.
struct SpectrumRequest {
    ResonatorParams resonator;
    BathTemperatures baths;
    double xi = 0.0;
    std::vector<double> omega_grid;  ///< offsets from the carrier, rad/s
    SpectrumVariant variant = SpectrumVariant::AsPrinted;

    void validate() const;  ///< throws ConfigInvalid (threshold is checked by s_pm)
};

/// Homodyne detection phase, radians.  phi = 0 selects the amplified
/// quadrature; the pattern is pi-periodic.
struct HomodynePhase {
    double phi = 0.0;
};

/// Output spectra of the amplified (s_plus) and squeezed (s_minus) quadratures
/// on a frequency-offset grid.  Units: photon-number-like thermal factor, so
/// the vacuum level is 1/2.
struct QuadratureSpectra {
    std::vector<double> omega;    ///< offsets from the carrier, rad/s
    std::vector<double> s_plus;
    std::vector<double> s_minus;
    double f0 = 0.0;              ///< carrier, Hz (for axis scaling)
    double q_loaded = 0.0;
    SpectrumVariant variant = SpectrumVariant::AsPrinted;

    [[nodiscard]] std::size_t size() const { return omega.size(); }
};

struct SpectrumPoint {
    double s_plus;
    double s_minus;
};

/// Scalar evaluation of the two quadrature spectra at a single offset.
///
/// With u = 1/Q_u, fl = 1/Q_f, q = 1/Q and w = 2*omega/omega0 the spectra are
///
///   S+- (w) = ( W_refl * (w^2 + (u - fl -+ xi)^2) + W_emit * 4*fl*u )
///             / ( w^2 + (q -+ xi)^2 )
///
/// where W_refl / W_emit are the thermal factors weighting the reflected-input
/// and internal-emission contributions (see SpectrumVariant).  This is an
/// algebraically simplified but exactly equivalent regrouping of the textbook
/// two-port input-output result; the grouped form stays numerically stable
/// close to threshold, where the printed form loses digits to cancellation.
///
/// Throws ThresholdViolation when xi * Q >= 1.
SpectrumPoint s_pm_at(const ResonatorParams& r, const BathTemperatures& baths,
                      double xi, double omega, SpectrumVariant variant);

/// Grid evaluation of s_pm_at over request.omega_grid.
QuadratureSpectra s_pm(const SpectrumRequest& request);

/// Spectrum seen by a homodyne detector at phase phi:
///   S(omega, phi) = S+ * cos^2(phi) + S- * sin^2(phi).
std::vector<double> homodyne_spectrum(const QuadratureSpectra& spectra, HomodynePhase phase);

/// Squeezing verdict per grid point: squeezed means S- strictly below the
/// vacuum level 1/2; margin = 1/2 - S-.
struct SqueezingReport {
    std::vector<bool> is_squeezed;
    std::vector<double> margin;
    bool any_squeezed = false;
    double min_s_minus = 0.0;
    double omega_at_min = 0.0;  ///< rad/s
    double best_margin = 0.0;
};

SqueezingReport squeezing_check(const QuadratureSpectra& spectra);

}  // namespace paramres
