// Command-line front end for the parametric-resonator library.
//
// Subcommands:
//   spectrum      analytic quadrature spectra on a frequency grid
//   simulate      Langevin ensemble + Welch PSD, checked against the analytic curve
//   mixing        intermodulation comb of the detuned-pump experiment
//   sweep         spectra over a 1-D or 2-D parameter grid
//   material      carrier response ratios and the acceleration-temperature scale
//   estimate-xiq  threshold parameter from a static resonance shift
//   repro-paper   self-contained reference checks of the analytic model
//
// Exit codes: 0 success, 1 usage/config error, 2 physics refusal
// (above threshold, divergence, empty grid), 3 verification failure.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paramres/config.hpp"
#include "paramres/constants.hpp"
#include "paramres/errors.hpp"
#include "paramres/io.hpp"
#include "paramres/langevin.hpp"
#include "paramres/material.hpp"
#include "paramres/mixing.hpp"
#include "paramres/parallel.hpp"
#include "paramres/resonator.hpp"
#include "paramres/spectrum.hpp"
#include "paramres/sweep.hpp"
#include "paramres/welch.hpp"

namespace {

using paramres::RunConfig;
using json = nlohmann::ordered_json;

const char* variant_label(paramres::SpectrumVariant v) {
    return v == paramres::SpectrumVariant::AsPrinted ? "as_printed" : "two_bath";
}

void require_parametric_resonance(const RunConfig& cfg, const char* command) {
    const double target = 2.0 * cfg.resonator.f0;
    if (std::abs(cfg.f_mod_hz - target) > 1e-9 * target)
        throw paramres::ConfigInvalid(std::string(command) +
                                      ": the analytic model assumes modulation at exactly twice "
                                      "the resonance; set modulation.f_mod_hz = 2 * f0_hz");
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw paramres::ConfigInvalid("cannot write " + path);
    out << text;
}

void write_json(const std::string& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::string out_path(const std::string& dir, const std::string& name) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / name).string();
}

// ---------------------------------------------------------------- spectrum --

int cmd_spectrum(const RunConfig& cfg, const std::string& outdir) {
    if (!cfg.spectrum)
        throw paramres::ConfigInvalid("spectrum: config lacks a \"spectrum\" section");
    require_parametric_resonance(cfg, "spectrum");

    const auto& sc = *cfg.spectrum;
    const double q = paramres::loaded_q(cfg.resonator);
    const double half_linewidth = cfg.resonator.omega0() / (2.0 * q);

    paramres::SpectrumRequest req;
    req.resonator = cfg.resonator;
    req.baths = cfg.baths;
    req.xi = cfg.xi;
    req.variant = sc.variant;
    if (!sc.omega_values_rad_s.empty()) {
        req.omega_grid = sc.omega_values_rad_s;
    } else if (sc.points == 1) {
        req.omega_grid.push_back(0.0);
    } else {
        const double span = sc.span_linewidths * half_linewidth;
        for (std::size_t i = 0; i < sc.points; ++i)
            req.omega_grid.push_back(-span +
                                     2.0 * span * static_cast<double>(i) /
                                         static_cast<double>(sc.points - 1));
    }
    req.validate();

    const auto spectra = paramres::s_pm(req);
    const auto squeezing = paramres::squeezing_check(spectra);

    std::vector<std::vector<double>> slices;
    for (const double phi : sc.phases_rad)
        slices.push_back(paramres::homodyne_spectrum(spectra, paramres::HomodynePhase{phi}));

    paramres::CsvWriter csv;
    csv.comment("paramres spectrum");
    csv.comment("config_hash: " + paramres::hex_string(cfg.config_hash()));
    csv.comment(std::string("variant: ") + variant_label(sc.variant));
    csv.comment("xi_q: " + paramres::format_double(cfg.xi * q));
    csv.comment("spectra in thermal-factor units (vacuum level 0.5); "
                "omega is the offset from the carrier");
    std::vector<std::string> names = {"omega_over_halfwidth", "two_omega_over_omega0",
                                      "s_plus", "s_minus", "is_squeezed"};
    for (const double phi : sc.phases_rad)
        names.push_back("s_phi=" + paramres::format_double(phi));
    csv.columns(names);
    const double omega0 = cfg.resonator.omega0();
    for (std::size_t i = 0; i < spectra.size(); ++i) {
        std::vector<double> row = {spectra.omega[i] / half_linewidth,
                                   2.0 * spectra.omega[i] / omega0,
                                   spectra.s_plus[i], spectra.s_minus[i],
                                   squeezing.is_squeezed[i] ? 1.0 : 0.0};
        for (const auto& slice : slices) row.push_back(slice[i]);
        csv.numeric_row(row);
    }
    csv.write_file(out_path(outdir, "spectrum.csv"));

    std::printf("spectrum: variant=%s xi*Q=%s points=%zu\n", variant_label(sc.variant),
                paramres::format_double(cfg.xi * q).c_str(), spectra.size());
    std::printf("min S- = %s at omega = %s rad/s (margin to vacuum %s)\n",
                paramres::format_double(squeezing.min_s_minus).c_str(),
                paramres::format_double(squeezing.omega_at_min).c_str(),
                paramres::format_double(squeezing.best_margin).c_str());
    std::printf("squeezed below vacuum: %s\n", squeezing.any_squeezed ? "yes" : "no");
    std::printf("wrote %s\n", out_path(outdir, "spectrum.csv").c_str());
    return 0;
}

// ---------------------------------------------------------------- simulate --

int cmd_simulate(const RunConfig& cfg, const std::string& outdir, int threads) {
    if (!cfg.simulate)
        throw paramres::ConfigInvalid("simulate: config lacks a \"simulate\" section");
    require_parametric_resonance(cfg, "simulate");

    const auto& sm = *cfg.simulate;
    const double q = paramres::loaded_q(cfg.resonator);
    sm.sim.validate_for(cfg.xi * q);

    const auto psd = paramres::ensemble_output_psd(cfg.resonator, cfg.baths, cfg.xi,
                                                   sm.sim, threads);

    // Analytic reference: the Langevin model is the two-bath reading of the
    // spectra, evaluated here exactly at the Welch bin positions.
    const double xi_ref = sm.compare_xi.value_or(cfg.xi);
    paramres::SpectrumRequest ref;
    ref.resonator = cfg.resonator;
    ref.baths = cfg.baths;
    ref.xi = xi_ref;
    ref.variant = paramres::SpectrumVariant::TwoBath;
    const double omega0 = cfg.resonator.omega0();
    for (const double a : psd.plus.two_omega_over_omega0)
        ref.omega_grid.push_back(0.5 * a * omega0);
    const auto analytic = paramres::s_pm(ref);

    const double band_max = sm.band_linewidths / q;
    const auto rep_plus = paramres::compare_to_analytic(psd.plus, analytic, true, band_max,
                                                        sm.rms_tolerance, sm.z_tolerance);
    const auto rep_minus = paramres::compare_to_analytic(psd.minus, analytic, false, band_max,
                                                         sm.rms_tolerance, sm.z_tolerance);
    const bool pass = rep_plus.pass && rep_minus.pass;

    paramres::CsvWriter csv;
    csv.comment("paramres simulate");
    csv.comment("config_hash: " + paramres::hex_string(cfg.config_hash()));
    csv.comment("n_realizations: " + std::to_string(sm.sim.n_realizations));
    csv.comment("analytic columns: two-bath quadrature spectra at xi = " +
                paramres::format_double(xi_ref));
    csv.comment("spectra in thermal-factor units (vacuum level 0.5)");
    csv.columns({"two_omega_over_omega0", "s_plus_mean", "s_plus_stderr", "s_minus_mean",
                 "s_minus_stderr", "s_plus_analytic", "s_minus_analytic"});
    for (std::size_t i = 0; i < psd.plus.size(); ++i)
        csv.numeric_row({psd.plus.two_omega_over_omega0[i], psd.plus.mean[i],
                         psd.plus.std_error[i], psd.minus.mean[i], psd.minus.std_error[i],
                         analytic.s_plus[i], analytic.s_minus[i]});
    csv.write_file(out_path(outdir, "psd.csv"));

    const auto band_json = [](const paramres::BandCompareReport& r) {
        return json{{"n_bins", r.n_bins},
                    {"rms_relative_error", r.rms_relative_error},
                    {"max_abs_z", r.max_abs_z},
                    {"pass", r.pass}};
    };
    json report = {{"command", "simulate"},
                   {"config_hash", paramres::hex_string(cfg.config_hash())},
                   {"variant", "two_bath"},
                   {"xi", cfg.xi},
                   {"compare_xi", xi_ref},
                   {"band_max_two_omega_over_omega0", band_max},
                   {"n_realizations", sm.sim.n_realizations},
                   {"plus", band_json(rep_plus)},
                   {"minus", band_json(rep_minus)},
                   {"tolerances", {{"rms", sm.rms_tolerance}, {"z", sm.z_tolerance}}},
                   {"pass", pass}};
    write_json(out_path(outdir, "comparison.json"), report);

    std::printf("simulate: %d realizations, band |2w/w0| <= %s (%zu bins)\n",
                sm.sim.n_realizations, paramres::format_double(band_max).c_str(),
                rep_plus.n_bins);
    std::printf("amplified: rms rel err %s, max |z| %s\n",
                paramres::format_double(rep_plus.rms_relative_error).c_str(),
                paramres::format_double(rep_plus.max_abs_z).c_str());
    std::printf("squeezed:  rms rel err %s, max |z| %s\n",
                paramres::format_double(rep_minus.rms_relative_error).c_str(),
                paramres::format_double(rep_minus.max_abs_z).c_str());
    std::printf("agreement with analytic spectra: %s\n", pass ? "pass" : "FAIL");
    std::printf("wrote %s and %s\n", out_path(outdir, "psd.csv").c_str(),
                out_path(outdir, "comparison.json").c_str());
    return pass ? 0 : 3;
}

// ------------------------------------------------------------------ mixing --

void print_tones(const std::vector<paramres::Tone>& tones) {
    std::printf("%4s  %-18s  %-22s  %12s  %s\n", "n", "frequency", "identity", "rel power",
                "detected");
    for (const auto& t : tones) {
        std::string power = std::isnan(t.relative_power_db)
                                ? std::string("-")
                                : paramres::format_double(t.relative_power_db) + " dB";
        std::printf("%4d  %-18s  %-22s  %12s  %s\n", t.n,
                    paramres::format_double(t.frequency).c_str(), t.identity.c_str(),
                    power.c_str(), t.detected ? "yes" : (std::isnan(t.relative_power_db)
                                                             ? "-"
                                                             : "no"));
    }
}

int cmd_mixing(const RunConfig& cfg, const std::string& outdir) {
    if (!cfg.mixing) throw paramres::ConfigInvalid("mixing: config lacks a \"mixing\" section");
    const auto& mx = *cfg.mixing;
    const double q = paramres::loaded_q(cfg.resonator);

    paramres::CsvWriter csv;
    csv.comment("paramres mixing");
    csv.comment("config_hash: " + paramres::hex_string(cfg.config_hash()));
    csv.comment("comb: f_n = f_pump + n * delta_f with f_m = 2*f_pump + delta_f");

    if (mx.scaled_units) {
        if (paramres::delta_f_exceeds_linewidth(mx.drive, 1.0, q))
            std::fprintf(stderr,
                         "warning: delta_f = %s is not small against the linewidth f0/Q = %s; "
                         "the comb picture assumes delta_f well inside the linewidth\n",
                         paramres::format_double(mx.drive.delta_f).c_str(),
                         paramres::format_double(1.0 / q).c_str());
        const auto spec = paramres::simulate_mixing(cfg.resonator, mx.drive, mx.sim);
        csv.comment("scaled units: resonance at f0 = 1, xi*Q = " +
                    paramres::format_double(mx.drive.xi * q));
        csv.comment("noise floor: " + paramres::format_double(spec.floor_db) +
                    " dB relative to the pump");
        csv.columns({"n", "frequency", "relative_power_db", "detected"});
        for (const auto& t : spec.tones)
            csv.numeric_row({static_cast<double>(t.n), t.frequency, t.relative_power_db,
                             t.detected ? 1.0 : 0.0});
        csv.write_file(out_path(outdir, "tones.csv"));

        std::printf("mixing (scaled units): xi*Q = %s, floor %s dB below pump\n",
                    paramres::format_double(mx.drive.xi * q).c_str(),
                    paramres::format_double(-spec.floor_db).c_str());
        print_tones(spec.tones);
    } else {
        const auto tones = paramres::predicted_tones(mx.drive, mx.sim.max_order);
        csv.comment("literal units: comb arithmetic only; tone powers require the scaled "
                    "dynamics (units = \"scaled\")");
        csv.columns({"n", "frequency_hz", "identity"});
        for (const auto& t : tones)
            csv.row({std::to_string(t.n), paramres::format_double(t.frequency), t.identity});
        csv.write_file(out_path(outdir, "tones.csv"));

        std::printf("mixing (literal units): comb positions for f_pump = %s Hz, delta_f = %s Hz\n",
                    paramres::format_double(mx.drive.f_pump).c_str(),
                    paramres::format_double(mx.drive.delta_f).c_str());
        print_tones(tones);
    }
    std::printf("wrote %s\n", out_path(outdir, "tones.csv").c_str());
    return 0;
}

// ------------------------------------------------------------------- sweep --

int cmd_sweep(const RunConfig& cfg, const std::string& outdir, int threads) {
    if (!cfg.sweep) throw paramres::ConfigInvalid("sweep: config lacks a \"sweep\" section");
    require_parametric_resonance(cfg, "sweep");
    const auto& sw = *cfg.sweep;

    paramres::SweepRequest req;
    req.base.resonator = cfg.resonator;
    req.base.baths = cfg.baths;
    req.base.xi = cfg.xi;
    req.base.variant = sw.variant;
    req.base.omega_grid = {sw.omega_rad_s};
    for (const auto& a : sw.axes)
        req.axes.push_back(paramres::make_axis(a.param, a.min, a.max, a.points));
    req.fixed_xi_q = sw.fixed_xi_q;
    req.validate();

    const auto result = paramres::run_sweep(req, threads);

    paramres::CsvWriter csv;
    csv.comment("paramres sweep");
    csv.comment("config_hash: " + paramres::hex_string(cfg.config_hash()));
    std::string axes_desc = "axes:";
    for (const auto& a : result.axes)
        axes_desc += std::string(" ") + paramres::sweep_param_name(a.param) + "[" +
                     std::to_string(a.values.size()) + "]";
    csv.comment(axes_desc);
    if (sw.fixed_xi_q)
        csv.comment("fixed xi*Q = " + paramres::format_double(*sw.fixed_xi_q) +
                    " (xi re-derived per point)");
    csv.comment("excluded = 1 marks points at or above threshold (spectra NaN)");
    csv.columns({"xi", "q_feedline", "t_damping", "omega_rad_s", "xi_q", "s_plus", "s_minus",
                 "excluded"});
    for (const auto& p : result.points)
        csv.numeric_row({p.xi, p.q_feedline, p.t_damping, p.omega, p.xi_q, p.s_plus, p.s_minus,
                         p.excluded ? 1.0 : 0.0});
    csv.write_file(out_path(outdir, "sweep.csv"));

    const auto& best = result.points[result.argmin_index];
    json report = {{"command", "sweep"},
                   {"config_hash", paramres::hex_string(cfg.config_hash())},
                   {"n_points", result.points.size()},
                   {"n_excluded", result.n_excluded},
                   {"argmin",
                    {{"index", result.argmin_index},
                     {"xi", best.xi},
                     {"q_feedline", best.q_feedline},
                     {"t_damping", best.t_damping},
                     {"omega_rad_s", best.omega},
                     {"xi_q", best.xi_q},
                     {"s_minus", best.s_minus},
                     {"margin_to_vacuum", 0.5 - best.s_minus}}}};
    write_json(out_path(outdir, "argmin.json"), report);

    std::printf("sweep: %zu points (%zu excluded at/above threshold)\n", result.points.size(),
                result.n_excluded);
    std::printf("deepest squeezing: S- = %s at xi=%s q_feedline=%s t_damping=%s omega=%s\n",
                paramres::format_double(best.s_minus).c_str(),
                paramres::format_double(best.xi).c_str(),
                paramres::format_double(best.q_feedline).c_str(),
                paramres::format_double(best.t_damping).c_str(),
                paramres::format_double(best.omega).c_str());
    std::printf("wrote %s and %s\n", out_path(outdir, "sweep.csv").c_str(),
                out_path(outdir, "argmin.json").c_str());
    return 0;
}

// ---------------------------------------------------------------- material --

int cmd_material(const std::vector<double>& omega_tau, double acceleration,
                 bool has_acceleration) {
    if (omega_tau.empty() && !has_acceleration)
        throw paramres::ConfigInvalid(
            "material: provide at least one --omega-tau value or --acceleration");
    if (!omega_tau.empty()) {
        paramres::CsvWriter csv;
        csv.comment("carrier response ratios");
        csv.comment("semiconductor: |d_eps'/d_eps''| = omega*tau (free-carrier screening)");
        csv.comment("superconductor: the same ratio is 1/(omega*tau) (two-fluid kinetic "
                    "inductance)");
        csv.comment("london_skin: lambda0/delta = sqrt(omega*tau/2)");
        csv.columns({"omega_tau", "semiconductor_ratio", "superconductor_ratio",
                     "london_skin_ratio"});
        for (const double wt : omega_tau) {
            paramres::CarrierParams c{1.0, wt};
            csv.numeric_row({wt, paramres::semiconductor_shift_ratio(c),
                             paramres::superconductor_shift_ratio(c),
                             paramres::london_skin_ratio(c)});
        }
        std::fputs(csv.str().c_str(), stdout);
    }
    if (has_acceleration) {
        std::printf("equivalent temperature of a = %s m/s^2: %s K\n",
                    paramres::format_double(acceleration).c_str(),
                    paramres::format_double(paramres::unruh_temperature(acceleration)).c_str());
    }
    return 0;
}

// ------------------------------------------------------------ estimate-xiq --

int cmd_estimate_xiq(double f_dark, double f_illuminated, double q) {
    if (!(f_dark > 0.0) || !(f_illuminated > 0.0) || !(q > 0.0))
        throw paramres::ConfigInvalid("estimate-xiq: frequencies and Q must be positive");
    const double xi_q = paramres::xi_q_from_shift(f_dark, f_illuminated, q);
    const char* cls = std::abs(xi_q - 1.0) <= paramres::threshold_tolerance
                          ? "at_threshold"
                          : (xi_q < 1.0 ? "sub_threshold" : "above_threshold");
    json report = {{"f_dark_hz", f_dark},
                   {"f_illuminated_hz", f_illuminated},
                   {"q_loaded", q},
                   {"fractional_shift", std::abs(f_dark - f_illuminated) / f_dark},
                   {"equivalent_xi", xi_q / q},
                   {"xi_q", xi_q},
                   {"classification", cls}};
    std::printf("%s\n", report.dump(2).c_str());
    return 0;
}

// ------------------------------------------------------------- repro-paper --

struct ReproCheck {
    const char* name;
    bool pass;
    std::string detail;
};

int cmd_repro_paper() {
    std::vector<ReproCheck> checks;

    {  // Reference working point: deep squeezing just below threshold.
        const auto r = paramres::ResonatorParams::make(5e9, 2e4, 100.0);
        const paramres::BathTemperatures baths{10.0, 10.0};
        const auto pt = paramres::s_pm_at(r, baths, 0.01, 0.0,
                                          paramres::SpectrumVariant::AsPrinted);
        const bool in_range = pt.s_minus >= 0.200 && pt.s_minus <= 0.215;
        const bool near_ref = std::abs(pt.s_minus - 0.2076) <= 5e-4;
        const bool amplified = pt.s_plus > 6.5e6 && pt.s_plus < 6.9e6;
        const bool squeezed = pt.s_minus < 0.5;
        checks.push_back({"reference working point (xi*Q = 0.995)",
                          in_range && near_ref && amplified && squeezed,
                          "S- = " + paramres::format_double(pt.s_minus) +
                              ", S+ = " + paramres::format_double(pt.s_plus)});
    }

    {  // Equilibrium: without modulation both spectra sit exactly at the
       // thermal factor, independent of frequency.
        const auto r = paramres::ResonatorParams::make(5e9, 2e4, 100.0);
        const paramres::BathTemperatures baths{10.0, 10.0};
        const double a_ref = paramres::thermal_factor(5e9, 10.0);
        const double q = paramres::loaded_q(r);
        // offsets out to 1000 linewidths either side
        double worst = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double w = (i - 500) * 2.0 * r.omega0() / q;
            for (const auto v :
                 {paramres::SpectrumVariant::AsPrinted, paramres::SpectrumVariant::TwoBath}) {
                const auto pt = paramres::s_pm_at(r, baths, 0.0, w, v);
                worst = std::max({worst, std::abs(pt.s_plus / a_ref - 1.0),
                                  std::abs(pt.s_minus / a_ref - 1.0)});
            }
        }
        checks.push_back({"equilibrium spectra flat at the thermal factor", worst < 1e-12,
                          "max |S/A - 1| = " + paramres::format_double(worst)});
    }

    {  // Lossless at zero temperature: minimum-uncertainty pair, including the
       // closed-form point xi = 1/(3*Q_f) -> (S-, S+) = (0.125, 2).
        const auto r = paramres::ResonatorParams::lossless(5e9, 100.0);
        const paramres::BathTemperatures baths{0.0, 0.0};
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double xi = 0.99 * i / (99.0 * 100.0);
            const auto pt = paramres::s_pm_at(r, baths, xi, 0.0,
                                              paramres::SpectrumVariant::AsPrinted);
            worst = std::max(worst, std::abs(pt.s_plus * pt.s_minus / 0.25 - 1.0));
        }
        const auto pt = paramres::s_pm_at(r, baths, 1.0 / 300.0, 0.0,
                                          paramres::SpectrumVariant::AsPrinted);
        const bool closed_form =
            std::abs(pt.s_minus - 0.125) < 1e-12 && std::abs(pt.s_plus - 2.0) < 1e-12;
        checks.push_back({"lossless vacuum: minimum-uncertainty quadrature pair",
                          worst < 1e-12 && closed_form,
                          "max |S+S-/A^2 - 1| = " + paramres::format_double(worst) +
                              ", xi = 1/(3 Q_f) gives (S-, S+) = (" +
                              paramres::format_double(pt.s_minus) + ", " +
                              paramres::format_double(pt.s_plus) + ")"});
    }

    bool all = true;
    for (const auto& c : checks) {
        std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name, c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("repro: %s\n", all ? "all checks passed" : "CHECKS FAILED");
    return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parametrically modulated stripline resonator toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string outdir = ".";
    int threads = paramres::default_thread_count();
    std::uint64_t seed_override = 0;

    const auto add_common = [&](CLI::App* sub, bool with_threads) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", outdir, "output directory (default .)");
        if (with_threads)
            sub->add_option("--threads", threads, "worker threads (does not affect results)");
    };

    auto* spectrum = app.add_subcommand("spectrum", "analytic quadrature spectra");
    add_common(spectrum, false);

    auto* simulate = app.add_subcommand("simulate", "Langevin ensemble vs analytic spectra");
    add_common(simulate, true);
    auto* seed_opt = simulate->add_option("--seed", seed_override, "override simulate.seed");

    auto* mixing = app.add_subcommand("mixing", "intermodulation comb");
    add_common(mixing, false);

    auto* sweep = app.add_subcommand("sweep", "parameter sweep of the spectra");
    add_common(sweep, true);

    auto* material = app.add_subcommand("material", "carrier response ratios");
    std::vector<double> omega_tau;
    double acceleration = 0.0;
    material->add_option("--omega-tau", omega_tau, "probe omega times scattering time")
        ->expected(-1);
    auto* accel_opt =
        material->add_option("--acceleration", acceleration, "boundary acceleration, m/s^2");

    auto* estimate = app.add_subcommand("estimate-xiq", "threshold parameter from a static shift");
    double f_dark = 0.0, f_illuminated = 0.0, q_loaded_in = 0.0;
    estimate->add_option("--f-dark", f_dark, "resonance without illumination, Hz")->required();
    estimate->add_option("--f-illuminated", f_illuminated, "shifted resonance, Hz")->required();
    estimate->add_option("--q", q_loaded_in, "loaded quality factor")->required();

    auto* repro = app.add_subcommand("repro-paper", "self-contained reference checks");
    (void)repro;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(material))
            return cmd_material(omega_tau, acceleration, accel_opt->count() > 0);
        if (app.got_subcommand(estimate))
            return cmd_estimate_xiq(f_dark, f_illuminated, q_loaded_in);
        if (app.got_subcommand(repro)) return cmd_repro_paper();

        RunConfig cfg = paramres::load_config(config_path);
        if (seed_opt->count() > 0 && cfg.simulate) {
            cfg.simulate->sim.seed = seed_override;
            cfg.refresh_resolved();
        }
        if (app.got_subcommand(spectrum)) return cmd_spectrum(cfg, outdir);
        if (app.got_subcommand(simulate)) return cmd_simulate(cfg, outdir, threads);
        if (app.got_subcommand(mixing)) return cmd_mixing(cfg, outdir);
        if (app.got_subcommand(sweep)) return cmd_sweep(cfg, outdir, threads);
        return 1;
    } catch (const paramres::DivergenceDetected& e) {
        std::fprintf(stderr, "error: %s (t = %s)\n", e.what(),
                     paramres::format_double(e.time_of_divergence).c_str());
        return 2;
    } catch (const paramres::PhysicsError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const paramres::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
