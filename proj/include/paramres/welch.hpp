#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "paramres/spectrum.hpp"

namespace paramres {

struct SimConfig;

/// Averaged two-sided power spectral density on non-negative frequency bins.
/// The axis is the dimensionless carrier offset 2*omega/omega0; standard
/// errors are computed across realizations.
struct PsdEstimate {
    std::vector<double> two_omega_over_omega0;
    std::vector<double> mean;
    std::vector<double> std_error;
    std::size_t n_realizations = 0;

    [[nodiscard]] std::size_t size() const { return mean.size(); }
};

/// Number of Welch segments a series of n samples yields.
std::size_t welch_segment_count(std::size_t n, std::size_t segment, double overlap);

/// Welch periodogram of one series: Hann window, overlapping segments,
/// two-sided normalization reported on bins 0..segment/2.  White noise with
/// per-sample variance v sampled at step dt estimates a flat level v*dt.
/// Throws TooShort when the series is shorter than one segment.
std::vector<double> welch_psd(const std::vector<double>& series, double dt,
                              std::size_t segment, double overlap);

/// Cross spectral density between two series (same segmentation and
/// normalization as welch_psd); used to test quadrature independence.
std::vector<std::complex<double>> welch_cross(const std::vector<double>& a,
                                              const std::vector<double>& b, double dt,
                                              std::size_t segment, double overlap);

/// Frequency axis of the Welch bins mapped to the carrier offset
/// 2*omega/omega0 = 2 * Omega_sim / Q, where Omega_sim = 2*pi*bin/(segment*dt)
/// is the dimensionless angular frequency of the simulation.
std::vector<double> psd_axis_two_omega(std::size_t segment, double dt, double q_loaded);

/// Welch estimate averaged over independent realizations (PSD-level average,
/// standard error across realizations).  Throws TooShort unless every
/// realization yields at least 4 segments.
PsdEstimate estimate_psd(const std::vector<std::vector<double>>& realizations,
                         const SimConfig& config, double q_loaded);

/// Band-restricted comparison of a Monte-Carlo PSD against an analytic curve,
/// linearly interpolated onto the estimate's bins.
struct BandCompareReport {
    double band_max = 0.0;  ///< comparison band: |2*omega/omega0| <= band_max
    std::size_t n_bins = 0;
    double rms_relative_error = 0.0;
    double max_abs_z = 0.0;
    double rms_tolerance = 0.0;
    double z_tolerance = 0.0;
    bool pass = false;
};

/// plus_quadrature selects s_plus (amplified) or s_minus (squeezed) as the
/// reference column.  Throws BandMismatch when either input fails to cover the
/// requested band.
BandCompareReport compare_to_analytic(const PsdEstimate& psd, const QuadratureSpectra& spectra,
                                      bool plus_quadrature, double band_max_two_omega,
                                      double rms_tolerance, double z_tolerance);

}  // namespace paramres
