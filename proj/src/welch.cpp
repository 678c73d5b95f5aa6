#include "paramres/welch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paramres/constants.hpp"
#include "paramres/errors.hpp"
#include "paramres/fft.hpp"
#include "paramres/langevin.hpp"

namespace paramres {

namespace {

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j)
        w[j] = 0.5 * (1.0 - std::cos(2.0 * constants::pi * static_cast<double>(j) /
                                     static_cast<double>(n)));
    return w;
}

std::size_t welch_step(std::size_t segment, double overlap) {
    auto step = static_cast<std::size_t>(std::lround(static_cast<double>(segment) * (1.0 - overlap)));
    return std::max<std::size_t>(step, 1);
}

void check_welch_args(std::size_t n, std::size_t segment, double overlap) {
    if (segment < 2 || (segment & (segment - 1)) != 0)
        throw ConfigInvalid("welch: segment length must be a power of two");
    if (!(overlap >= 0.0 && overlap < 1.0))
        throw ConfigInvalid("welch: overlap must be in [0, 1)");
    if (n < segment)
        throw TooShort("welch: series shorter than one segment");
}

}  // namespace

std::size_t welch_segment_count(std::size_t n, std::size_t segment, double overlap) {
    if (n < segment) return 0;
    return 1 + (n - segment) / welch_step(segment, overlap);
}

std::vector<double> welch_psd(const std::vector<double>& series, double dt,
                              std::size_t segment, double overlap) {
    check_welch_args(series.size(), segment, overlap);
    const std::vector<double> w = hann_window(segment);
    double w2 = 0.0;
    for (double v : w) w2 += v * v;

    const std::size_t step = welch_step(segment, overlap);
    const std::size_t n_seg = welch_segment_count(series.size(), segment, overlap);
    RealFft fft(segment);

    std::vector<double> psd(fft.bins(), 0.0);
    std::vector<double> buf(segment);
    for (std::size_t s = 0; s < n_seg; ++s) {
        const std::size_t off = s * step;
        for (std::size_t j = 0; j < segment; ++j) buf[j] = w[j] * series[off + j];
        const auto spec = fft.forward(buf);
        for (std::size_t b = 0; b < psd.size(); ++b) psd[b] += std::norm(spec[b]);
    }
    const double norm = dt / (w2 * static_cast<double>(n_seg));
    for (double& v : psd) v *= norm;
    return psd;
}

std::vector<std::complex<double>> welch_cross(const std::vector<double>& a,
                                              const std::vector<double>& b, double dt,
                                              std::size_t segment, double overlap) {
    if (a.size() != b.size()) throw ConfigInvalid("welch_cross: length mismatch");
    check_welch_args(a.size(), segment, overlap);
    const std::vector<double> w = hann_window(segment);
    double w2 = 0.0;
    for (double v : w) w2 += v * v;

    const std::size_t step = welch_step(segment, overlap);
    const std::size_t n_seg = welch_segment_count(a.size(), segment, overlap);
    RealFft fft(segment);

    std::vector<std::complex<double>> cross(fft.bins(), {0.0, 0.0});
    std::vector<double> buf(segment);
    for (std::size_t s = 0; s < n_seg; ++s) {
        const std::size_t off = s * step;
        for (std::size_t j = 0; j < segment; ++j) buf[j] = w[j] * a[off + j];
        const auto fa = fft.forward(buf);
        for (std::size_t j = 0; j < segment; ++j) buf[j] = w[j] * b[off + j];
        const auto fb = fft.forward(buf);
        for (std::size_t bIdx = 0; bIdx < cross.size(); ++bIdx)
            cross[bIdx] += std::conj(fa[bIdx]) * fb[bIdx];
    }
    const double norm = dt / (w2 * static_cast<double>(n_seg));
    for (auto& v : cross) v *= norm;
    return cross;
}

std::vector<double> psd_axis_two_omega(std::size_t segment, double dt, double q_loaded) {
    const std::size_t bins = segment / 2 + 1;
    std::vector<double> axis(bins);
    const double domega = 2.0 * constants::pi / (static_cast<double>(segment) * dt);
    for (std::size_t b = 0; b < bins; ++b)
        axis[b] = 2.0 * domega * static_cast<double>(b) / q_loaded;
    return axis;
}

PsdEstimate estimate_psd(const std::vector<std::vector<double>>& realizations,
                         const SimConfig& config, double q_loaded) {
    config.validate();
    if (realizations.empty()) throw TooShort("estimate_psd: no realizations");
    for (const auto& series : realizations) {
        const std::size_t segs =
            welch_segment_count(series.size(), config.welch_segment, config.welch_overlap);
        if (segs < 4)
            throw TooShort("estimate_psd: need at least 4 Welch segments per realization, got " +
                           std::to_string(segs));
    }

    const std::size_t bins = config.welch_segment / 2 + 1;
    PsdEstimate est;
    est.two_omega_over_omega0 = psd_axis_two_omega(config.welch_segment, config.dt, q_loaded);
    est.n_realizations = realizations.size();
    est.mean.assign(bins, 0.0);
    est.std_error.assign(bins, 0.0);

    std::vector<std::vector<double>> rows;
    rows.reserve(realizations.size());
    for (const auto& series : realizations)
        rows.push_back(welch_psd(series, config.dt, config.welch_segment, config.welch_overlap));

    const auto n = static_cast<double>(rows.size());
    for (std::size_t b = 0; b < bins; ++b) {
        double sum = 0.0;
        for (const auto& row : rows) sum += row[b];
        est.mean[b] = sum / n;
    }
    if (rows.size() > 1) {
        for (std::size_t b = 0; b < bins; ++b) {
            double ss = 0.0;
            for (const auto& row : rows) {
                const double d = row[b] - est.mean[b];
                ss += d * d;
            }
            est.std_error[b] = std::sqrt(ss / (n * (n - 1.0)));
        }
    } else {
        // Single realization: fall back to the dispersion across segments,
        // ignoring overlap correlations (approximate).
        const auto& series = realizations.front();
        const std::size_t segs =
            welch_segment_count(series.size(), config.welch_segment, config.welch_overlap);
        for (std::size_t b = 0; b < bins; ++b)
            est.std_error[b] = est.mean[b] / std::sqrt(static_cast<double>(segs));
    }
    return est;
}

BandCompareReport compare_to_analytic(const PsdEstimate& psd, const QuadratureSpectra& spectra,
                                      bool plus_quadrature, double band_max_two_omega,
                                      double rms_tolerance, double z_tolerance) {
    if (!(band_max_two_omega > 0.0))
        throw ConfigInvalid("compare_to_analytic: band must be positive");
    if (psd.size() == 0 || spectra.size() == 0)
        throw ConfigInvalid("compare_to_analytic: empty inputs");

    // Analytic curve on the same dimensionless axis, sorted ascending.
    const double omega0 = 2.0 * constants::pi * spectra.f0;
    std::vector<std::pair<double, double>> curve(spectra.size());
    const std::vector<double>& col = plus_quadrature ? spectra.s_plus : spectra.s_minus;
    for (std::size_t i = 0; i < spectra.size(); ++i)
        curve[i] = {2.0 * spectra.omega[i] / omega0, col[i]};
    std::sort(curve.begin(), curve.end());

    if (psd.two_omega_over_omega0.back() < band_max_two_omega)
        throw BandMismatch("compare_to_analytic: estimate does not reach the requested band");
    if (curve.back().first < band_max_two_omega)
        throw BandMismatch("compare_to_analytic: analytic grid does not reach the requested band");

    BandCompareReport report;
    report.band_max = band_max_two_omega;
    report.rms_tolerance = rms_tolerance;
    report.z_tolerance = z_tolerance;

    double sum_sq = 0.0;
    for (std::size_t b = 0; b < psd.size(); ++b) {
        const double x = psd.two_omega_over_omega0[b];
        if (x > band_max_two_omega) break;
        if (x < curve.front().first)
            throw BandMismatch("compare_to_analytic: analytic grid does not cover bin axis");
        auto hi = std::lower_bound(curve.begin(), curve.end(), std::make_pair(x, -1.0));
        double ref;
        if (hi == curve.begin()) {
            ref = hi->second;
        } else if (hi == curve.end()) {
            ref = (hi - 1)->second;
        } else {
            const auto lo = hi - 1;
            const double span = hi->first - lo->first;
            const double t = span > 0.0 ? (x - lo->first) / span : 0.0;
            ref = lo->second + t * (hi->second - lo->second);
        }
        const double rel = (psd.mean[b] - ref) / ref;
        sum_sq += rel * rel;
        double z = 0.0;
        if (psd.std_error[b] > 0.0) {
            z = (psd.mean[b] - ref) / psd.std_error[b];
        } else if (psd.mean[b] != ref) {
            z = std::numeric_limits<double>::infinity();
        }
        report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
        ++report.n_bins;
    }
    if (report.n_bins == 0)
        throw BandMismatch("compare_to_analytic: no bins inside the band");
    report.rms_relative_error = std::sqrt(sum_sq / static_cast<double>(report.n_bins));
    report.pass = report.rms_relative_error < rms_tolerance && report.max_abs_z < z_tolerance;
    return report;
}

}  // namespace paramres
