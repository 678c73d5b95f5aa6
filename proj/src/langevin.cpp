#include "paramres/langevin.hpp"

#include <cmath>
#include <exception>
#include <random>
#include <string>

#include "paramres/errors.hpp"
#include "paramres/parallel.hpp"

namespace paramres {

namespace {

// SplitMix64 finalizer; spreads (seed, realization) into decorrelated
// generator seeds so realizations can be computed in any order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t realization) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (realization + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

void SimConfig::validate() const {
    if (!(std::isfinite(dt) && dt > 0.0)) throw ConfigInvalid("sim: dt must be positive");
    if (!(std::isfinite(duration) && duration > 0.0))
        throw ConfigInvalid("sim: duration must be positive");
    if (!(std::isfinite(burn_in) && burn_in >= 10.0))
        throw ConfigInvalid("sim: burn_in must be at least 10 cavity lifetimes");
    if (n_realizations < 1) throw ConfigInvalid("sim: n_realizations must be >= 1");
    if (welch_segment < 2 || (welch_segment & (welch_segment - 1)) != 0)
        throw ConfigInvalid("sim: welch_segment must be a power of two");
    if (!(welch_overlap >= 0.0 && welch_overlap < 1.0))
        throw ConfigInvalid("sim: welch_overlap must be in [0, 1)");
    if (!(std::isfinite(divergence_bound) && divergence_bound > 0.0))
        throw ConfigInvalid("sim: divergence_bound must be positive");
}

void SimConfig::validate_for(double xi_q) const {
    validate();
    const double max_rate = 0.5 * (1.0 + std::abs(xi_q));
    if (dt * max_rate > 0.02)
        throw ConfigInvalid("sim: dt too coarse, dt * max decay rate = " +
                            std::to_string(dt * max_rate) + " exceeds 0.02");
}

QuadratureSeries simulate_output_quadratures(const ResonatorParams& r,
                                             const BathTemperatures& baths, double xi,
                                             const SimConfig& cfg, std::uint64_t realization) {
    r.validate();
    baths.validate();
    if (!(std::isfinite(xi) && xi >= 0.0)) throw ConfigInvalid("sim: xi must be >= 0");

    const double q = loaded_q(r);
    const double xi_q = xi * q;
    cfg.validate_for(xi_q);

    const double lambda_p = 0.5 * (1.0 - xi_q);  // amplified quadrature decay
    const double lambda_m = 0.5 * (1.0 + xi_q);  // squeezed quadrature decay
    const double ratio_f = q / r.q_feedline;
    const double ratio_u = q * r.inv_q_unloaded();
    const double sf = std::sqrt(ratio_f);
    const double su = std::sqrt(ratio_u);

    const double a_f = thermal_factor(r.f0, baths.t_feedline);
    const double a_d = thermal_factor(r.f0, baths.t_damping);
    const double sigma_f = std::sqrt(a_f * cfg.dt);
    const double sigma_d = std::sqrt(a_d * cfg.dt);
    const double inv_dt = 1.0 / cfg.dt;

    const auto burn_steps = static_cast<std::size_t>(std::llround(cfg.burn_in / cfg.dt));
    const auto rec_steps = static_cast<std::size_t>(std::llround(cfg.duration / cfg.dt));
    const std::size_t env_stride =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.5 / cfg.dt)));

    std::mt19937_64 rng(mix_seed(cfg.seed, realization));
    std::normal_distribution<double> gauss(0.0, 1.0);

    QuadratureSeries out;
    out.dt = cfg.dt;
    out.out_plus.reserve(rec_steps);
    out.out_minus.reserve(rec_steps);
    out.cav_plus.reserve(rec_steps);
    out.cav_minus.reserve(rec_steps);

    std::vector<std::pair<double, double>> envelope;
    double xp = 0.0;
    double xm = 0.0;

    const std::size_t total = burn_steps + rec_steps;
    for (std::size_t k = 0; k < total; ++k) {
        const double dwfp = sigma_f * gauss(rng);
        const double dwfm = sigma_f * gauss(rng);
        const double dwdp = sigma_d * gauss(rng);
        const double dwdm = sigma_d * gauss(rng);

        if (k >= burn_steps) {
            // Boundary output with the same feedline noise sample that drives
            // the cavity in this step.
            out.out_plus.push_back(sf * xp - dwfp * inv_dt);
            out.out_minus.push_back(sf * xm - dwfm * inv_dt);
            out.cav_plus.push_back(xp);
            out.cav_minus.push_back(xm);
        }
        if (k % env_stride == 0)
            envelope.emplace_back(static_cast<double>(k) * cfg.dt,
                                  std::max(std::abs(xp), std::abs(xm)));

        xp += -lambda_p * xp * cfg.dt + sf * dwfp + su * dwdp;
        xm += -lambda_m * xm * cfg.dt + sf * dwfm + su * dwdm;

        if (!(std::abs(xp) < cfg.divergence_bound && std::abs(xm) < cfg.divergence_bound)) {
            const double t = static_cast<double>(k + 1) * cfg.dt;
            envelope.emplace_back(t, std::max(std::abs(xp), std::abs(xm)));
            throw DivergenceDetected("simulation diverged at t = " + std::to_string(t) +
                                         " (|X| exceeded " + std::to_string(cfg.divergence_bound) +
                                         "); xi*Q = " + std::to_string(xi_q),
                                     t, std::move(envelope));
        }
    }
    return out;
}

EnsemblePsd ensemble_output_psd(const ResonatorParams& r, const BathTemperatures& baths,
                                double xi, const SimConfig& cfg, int threads) {
    const double q = loaded_q(r);
    cfg.validate_for(xi * q);

    const auto n_real = static_cast<std::size_t>(cfg.n_realizations);
    const std::size_t bins = cfg.welch_segment / 2 + 1;
    std::vector<std::vector<double>> rows_plus(n_real), rows_minus(n_real);
    std::vector<std::exception_ptr> failures(n_real);

    parallel_for(n_real, threads, [&](std::size_t i) {
        try {
            const QuadratureSeries series =
                simulate_output_quadratures(r, baths, xi, cfg, static_cast<std::uint64_t>(i));
            const std::size_t segs = welch_segment_count(series.out_plus.size(),
                                                         cfg.welch_segment, cfg.welch_overlap);
            if (segs < 4)
                throw TooShort("ensemble: need at least 4 Welch segments per realization, got " +
                               std::to_string(segs));
            rows_plus[i] =
                welch_psd(series.out_plus, cfg.dt, cfg.welch_segment, cfg.welch_overlap);
            rows_minus[i] =
                welch_psd(series.out_minus, cfg.dt, cfg.welch_segment, cfg.welch_overlap);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    });
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    EnsemblePsd result;
    for (int pass = 0; pass < 2; ++pass) {
        const auto& rows = pass == 0 ? rows_plus : rows_minus;
        PsdEstimate& est = pass == 0 ? result.plus : result.minus;
        est.two_omega_over_omega0 = psd_axis_two_omega(cfg.welch_segment, cfg.dt, q);
        est.n_realizations = n_real;
        est.mean.assign(bins, 0.0);
        est.std_error.assign(bins, 0.0);
        const auto n = static_cast<double>(n_real);
        for (std::size_t b = 0; b < bins; ++b) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n_real; ++i) sum += rows[i][b];
            est.mean[b] = sum / n;
        }
        if (n_real > 1) {
            for (std::size_t b = 0; b < bins; ++b) {
                double ss = 0.0;
                for (std::size_t i = 0; i < n_real; ++i) {
                    const double d = rows[i][b] - est.mean[b];
                    ss += d * d;
                }
                est.std_error[b] = std::sqrt(ss / (n * (n - 1.0)));
            }
        }
    }
    return result;
}

}  // namespace paramres
