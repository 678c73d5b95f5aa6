// Acceptance suite: eight end-to-end checks of the library and CLI, one
// pass/fail line each.  Exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "paramres/errors.hpp"
#include "paramres/langevin.hpp"
#include "paramres/material.hpp"
#include "paramres/mixing.hpp"
#include "paramres/resonator.hpp"
#include "paramres/spectrum.hpp"
#include "paramres/welch.hpp"

using namespace paramres;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %d. %s%s%s\n", ok ? "PASS" : "FAIL", index, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const ResonatorParams kReference = ResonatorParams::make(5e9, 2e4, 100.0);
const BathTemperatures kReferenceBaths{0.01, 10.0};

// 1. Reference working point: deep squeezing just below threshold.
void criterion_reference_point() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        const auto pt =
            s_pm_at(kReference, kReferenceBaths, 0.01, 0.0, SpectrumVariant::AsPrinted);
        SpectrumRequest req{kReference, kReferenceBaths, 0.01, {0.0},
                            SpectrumVariant::AsPrinted};
        const auto squeezing = squeezing_check(s_pm(req));
        const double elapsed = seconds_since(t0);

        ok = pt.s_minus >= 0.200 && pt.s_minus <= 0.215 &&
             std::abs(pt.s_minus - 0.2076) < 5e-5 && squeezing.any_squeezed && elapsed < 1.0;
        char buf[160];
        std::snprintf(buf, sizeof buf, "S- = %.12g, squeezed = %s, %.3f s", pt.s_minus,
                      squeezing.any_squeezed ? "yes" : "no", elapsed);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(1, "reference working point reproduces the squeezed level", ok, detail);
}

// 2. No modulation, equal bath temperatures: flat thermal floor to 1e-12.
void criterion_equilibrium_flatness() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        const BathTemperatures equal{10.0, 10.0};
        const double a = thermal_factor(kReference.f0, 10.0);
        const double q = loaded_q(kReference);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            // 1e4 points spanning +-1e3 linewidths around the carrier.
            const double omega =
                (static_cast<double>(i) - 4999.5) / 4999.5 * 1e3 * kReference.omega0() / q;
            for (const auto variant : {SpectrumVariant::AsPrinted, SpectrumVariant::TwoBath}) {
                const auto pt = s_pm_at(kReference, equal, 0.0, omega, variant);
                worst = std::max(worst, std::abs(pt.s_plus / a - 1.0));
                worst = std::max(worst, std::abs(pt.s_minus / a - 1.0));
            }
        }
        const double elapsed = seconds_since(t0);
        ok = worst < 1e-12 && elapsed < 1.0;
        char buf[120];
        std::snprintf(buf, sizeof buf, "max |S/A - 1| = %.3g over 10^4 points, %.3f s", worst,
                      elapsed);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(2, "equilibrium spectra stay flat at the thermal factor", ok, detail);
}

// 3. Lossless vacuum resonator: minimum-uncertainty product at the carrier.
void criterion_minimum_uncertainty() {
    bool ok = true;
    std::string detail;
    try {
        const auto r = ResonatorParams::lossless(5e9, 100.0);
        const BathTemperatures vacuum{0.0, 0.0};
        const double fl = 1.0 / r.q_feedline;
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double xi = 0.99 * fl * static_cast<double>(i) / 99.0;
            const auto pt = s_pm_at(r, vacuum, xi, 0.0, SpectrumVariant::TwoBath);
            worst = std::max(worst, std::abs(pt.s_plus * pt.s_minus / 0.25 - 1.0));
        }
        const auto third = s_pm_at(r, vacuum, fl / 3.0, 0.0, SpectrumVariant::TwoBath);
        const double dm = std::abs(third.s_minus - 0.125);
        const double dp = std::abs(third.s_plus - 2.0);
        ok = worst < 1e-12 && dm < 1e-12 && dp < 1e-12;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "max |S+S-/A^2 - 1| = %.3g; closed-form point off by (%.3g, %.3g)", worst,
                      dm, dp);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(3, "lossless squeezing keeps the minimum-uncertainty product", ok, detail);
}

// 4. Monte-Carlo PSD vs the stationary two-bath spectra, band-restricted.
void criterion_simulation_matches_analytic() {
    bool ok = true;
    std::string detail;
    try {
        SimConfig cfg;
        cfg.dt = 0.01;
        cfg.duration = 2000.0;
        cfg.burn_in = 50.0;
        cfg.n_realizations = 256;  // criterion requires at least 200
        cfg.seed = 20240817;
        cfg.welch_segment = 16384;

        const double xi = 0.005025;  // xi * Q = 0.5
        const double q = loaded_q(kReference);
        const auto psd = ensemble_output_psd(kReference, kReferenceBaths, xi, cfg);

        SpectrumRequest req{kReference, kReferenceBaths, xi, {}, SpectrumVariant::TwoBath};
        for (const double x : psd.plus.two_omega_over_omega0)
            req.omega_grid.push_back(0.5 * x * kReference.omega0());
        const auto analytic = s_pm(req);

        const double band = 3.0 / q;
        const auto plus = compare_to_analytic(psd.plus, analytic, true, band, 0.05, 4.0);
        const auto minus = compare_to_analytic(psd.minus, analytic, false, band, 0.05, 4.0);
        ok = plus.pass && minus.pass;
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "amplified rms %.3g max|z| %.2f; squeezed rms %.3g max|z| %.2f "
                      "(%zu bins, 256 realizations)",
                      plus.rms_relative_error, plus.max_abs_z, minus.rms_relative_error,
                      minus.max_abs_z, plus.n_bins);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(4, "Monte-Carlo spectra match the stationary curves in band", ok, detail);
}

// 5. Above threshold the integration diverges at the analytic rate; below it
// a long run stays stationary.
void criterion_threshold_behavior() {
    bool ok = true;
    std::string detail;
    try {
        const double q = loaded_q(kReference);

        SimConfig cfg;
        cfg.dt = 0.01;
        cfg.duration = 400.0;
        cfg.burn_in = 10.0;
        cfg.seed = 2024;

        bool diverged = false;
        double slope = 0.0;
        try {
            simulate_output_quadratures(kReference, BathTemperatures{0.0, 0.0}, 1.5 / q, cfg, 0);
        } catch (const DivergenceDetected& e) {
            diverged = true;
            double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
            std::size_t m = 0;
            for (const auto& [t, amp] : e.amplitude_envelope) {
                if (amp < 1e1 || amp > 1e5) continue;
                const double y = std::log(amp);
                sx += t;
                sy += y;
                sxx += t * t;
                sxy += t * y;
                ++m;
            }
            if (m >= 5) {
                const double md = static_cast<double>(m);
                slope = (md * sxy - sx * sy) / (md * sxx - sx * sx);
            }
        }
        const bool rate_ok = diverged && std::abs(slope - 0.25) <= 0.05;  // within 20 percent

        SimConfig stay = cfg;
        stay.duration = 1000.0;
        bool stationary = true;
        try {
            simulate_output_quadratures(kReference, BathTemperatures{0.0, 0.0}, 0.5 / q, stay, 0);
        } catch (const DivergenceDetected&) {
            stationary = false;
        }

        ok = rate_ok && stationary;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "growth rate %.4f (expect 0.25 +- 20%%); half-threshold run %s", slope,
                      stationary ? "stationary over 10^3 lifetimes" : "diverged");
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(5, "threshold crossing separates divergence from stationarity", ok, detail);
}

// 6. Intermodulation comb: five bin-exact tones, detection margins, and the
// quadratic power scaling of the first-order tone.
void criterion_mixing_comb() {
    bool ok = true;
    std::string detail;
    try {
        const auto r = ResonatorParams::lossless(1.0, 100.0);

        DriveConfig drive;
        drive.f_pump = 1.0;
        drive.pump_amplitude = 0.4;
        drive.delta_f = 5e-4;  // linewidth / 20 at Q = 100
        drive.xi = 0.005;      // xi * Q = 0.5

        MixingSimConfig sim;
        sim.duration = 16000.0;
        sim.burn_in = 800.0;

        const auto spec = simulate_mixing(r, drive, sim);
        bool all_detected = spec.tones.size() == 5;
        bool margins = true;
        for (const auto& t : spec.tones) {
            all_detected = all_detected && t.detected;
            if (std::abs(t.n) == 1)
                margins = margins && (t.relative_power_db - spec.floor_db >= 20.0);
        }

        // Power of the first-order tone doubles in depth -> +6.02 dB, checked
        // at xi*Q = 0.05 -> 0.1 -> 0.2.
        MixingSimConfig short_sim = sim;
        short_sim.duration = 8000.0;
        auto first_tone_db = [&](double xi) {
            DriveConfig d = drive;
            d.xi = xi;
            const auto s = simulate_mixing(r, d, short_sim);
            for (const auto& t : s.tones)
                if (t.n == 1) return t.relative_power_db;
            return 0.0;
        };
        const double db_005 = first_tone_db(0.0005);
        const double db_010 = first_tone_db(0.001);
        const double db_020 = first_tone_db(0.002);
        const double step1 = db_010 - db_005;
        const double step2 = db_020 - db_010;
        const double expect = 20.0 * std::log10(2.0);  // 6.0206 dB per doubling
        const bool scaling_ok =
            std::abs(step1 - expect) <= 1.0 && std::abs(step2 - expect) <= 1.0;

        // Comb arithmetic at the literal microwave frequencies.
        DriveConfig literal;
        literal.f_pump = 3.71e9;
        literal.delta_f = 800.0;
        const auto tones = predicted_tones(literal, 2);
        bool comb_ok = tones.size() == 5;
        for (int i = 0; i < 5 && comb_ok; ++i)
            comb_ok = tones[static_cast<std::size_t>(i)].frequency ==
                      3.71e9 + static_cast<double>(i - 2) * 800.0;

        ok = all_detected && margins && scaling_ok && comb_ok;
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "5 tones detected = %s; doubling steps %.2f / %.2f dB (expect 6.02 +- 1); "
                      "literal comb exact = %s",
                      all_detected && margins ? "yes" : "no", step1, step2,
                      comb_ok ? "yes" : "no");
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(6, "driven modulation produces the bin-exact intermodulation comb", ok, detail);
}

// 7. Carrier response identities over randomized omega*tau.
void criterion_material_identities() {
    bool ok = true;
    std::string detail;
    try {
        std::mt19937_64 gen(20240823);
        std::uniform_real_distribution<double> log_wt(std::log(1e-6), std::log(10.0));
        double worst = 0.0;
        for (int i = 0; i < 500; ++i) {
            const double wt = std::exp(log_wt(gen));
            const CarrierParams c{1.0, wt};
            const double product = semiconductor_shift_ratio(c) * superconductor_shift_ratio(c);
            const double skin = london_skin_ratio(c);
            worst = std::max(worst, std::abs(product - 1.0));
            worst = std::max(worst, std::abs(2.0 * skin * skin / wt - 1.0));
        }
        ok = worst < 1e-12;
        char buf[120];
        std::snprintf(buf, sizeof buf, "max relative identity error %.3g over 500 draws", worst);
        detail = buf;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(7, "carrier response identities hold to 1e-12", ok, detail);
}

// 8. The simulate command is bitwise deterministic across runs and threads.
void criterion_determinism() {
    bool ok = true;
    std::string detail;
    try {
        const fs::path base =
            fs::temp_directory_path() / ("paramres_accept_" + std::to_string(::getpid()));
        fs::create_directories(base);
        const std::string cfg =
            (fs::path(PARAMRES_CONFIG_DIR) / "determinism.json").string();

        auto run = [&](const std::string& label, const std::string& extra) -> fs::path {
            const fs::path out = base / label;
            fs::create_directories(out);
            const std::string cmd = std::string(PARAMRES_CLI_PATH) + " simulate --config " +
                                    cfg + " " + extra + " --out " + out.string() + " > " +
                                    (out / "stdout.txt").string() + " 2>&1";
            const int status = std::system(cmd.c_str());
            if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
                throw std::runtime_error("simulate run failed: " + label);
            return out;
        };
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };

        const fs::path a = run("a", "--threads 1");
        const fs::path b = run("b", "--threads 1");
        const fs::path c = run("c", "--threads 4");

        const bool rerun_same = slurp(a / "psd.csv") == slurp(b / "psd.csv") &&
                                slurp(a / "comparison.json") == slurp(b / "comparison.json");
        const bool threads_same = slurp(a / "psd.csv") == slurp(c / "psd.csv") &&
                                  slurp(a / "comparison.json") == slurp(c / "comparison.json");
        fs::remove_all(base);

        ok = rerun_same && threads_same;
        detail = std::string("rerun identical = ") + (rerun_same ? "yes" : "no") +
                 ", threads 1 vs 4 identical = " + (threads_same ? "yes" : "no");
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(8, "fixed-seed simulation output is byte-identical", ok, detail);
}

}  // namespace

int main() {
    criterion_reference_point();
    criterion_equilibrium_flatness();
    criterion_minimum_uncertainty();
    criterion_simulation_matches_analytic();
    criterion_threshold_behavior();
    criterion_mixing_comb();
    criterion_material_identities();
    criterion_determinism();

    if (failures != 0) {
        std::printf("%d of 8 acceptance checks failed\n", failures);
        return 1;
    }
    std::printf("all 8 acceptance checks passed\n");
    return 0;
}
