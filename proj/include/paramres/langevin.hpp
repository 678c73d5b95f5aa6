#pragma once

#include <cstdint>
#include <vector>

#include "paramres/resonator.hpp"
#include "paramres/welch.hpp"

namespace paramres {

/// Euler-Maruyama settings for the rotating-frame quadrature simulation.
/// Time is measured in units of the loaded cavity lifetime 1/kappa.
struct SimConfig {
    double dt = 0.01;
    double duration = 2000.0;        ///< recorded span per realization
    double burn_in = 50.0;           ///< discarded lead-in, must be >= 10
    int n_realizations = 1;
    std::uint64_t seed = 0;
    std::size_t welch_segment = 16384;  ///< power of two
    double welch_overlap = 0.5;         ///< in [0, 1)
    double divergence_bound = 1e6;

    void validate() const;
    /// Additionally enforces dt * max decay rate <= 0.02 for the given xi*Q.
    void validate_for(double xi_q) const;
};

/// One realization of the two output quadratures (and the intracavity
/// quadratures) sampled at cfg.dt after burn-in.
struct QuadratureSeries {
    std::vector<double> out_plus;
    std::vector<double> out_minus;
    std::vector<double> cav_plus;
    std::vector<double> cav_minus;
    double dt = 0.0;
};

/// Integrates the rotating-frame quadrature Langevin equations
///
///   dX+- = -(1 -+ xi*Q)/2 * X+- dt + sqrt(Q/Q_f) dW_f + sqrt(Q/Q_u) dW_d
///
/// driven by feedline and damping-port Wiener increments whose variances per
/// step are A_f*dt and A_d*dt (thermal factors of the two baths).  The
/// emitted field is formed with the same feedline noise sample that drives
/// the cavity in that step,
///
///   Xout+-[k] = sqrt(Q/Q_f) * X+-[k] - dW_f+-[k]/dt,
///
/// which is what makes the reflected noise interfere with the cavity field
/// and squeezes the minus quadrature below the input floor.
///
/// Each realization derives an independent stream from (seed, realization);
/// results do not depend on scheduling.  Throws DivergenceDetected when any
/// |X| exceeds cfg.divergence_bound (the exception carries an amplitude
/// envelope for growth-rate fits) and ConfigInvalid for bad settings.
QuadratureSeries simulate_output_quadratures(const ResonatorParams& r,
                                             const BathTemperatures& baths, double xi,
                                             const SimConfig& cfg,
                                             std::uint64_t realization = 0);

struct EnsemblePsd {
    PsdEstimate plus;
    PsdEstimate minus;
};

/// Simulates cfg.n_realizations independent realizations (parallelized over
/// threads), Welch-averages each output series and reduces the ensemble at
/// the PSD level.  The reduction order is fixed by realization index, so the
/// result is byte-identical for any thread count.
EnsemblePsd ensemble_output_psd(const ResonatorParams& r, const BathTemperatures& baths,
                                double xi, const SimConfig& cfg, int threads = 1);

}  // namespace paramres
