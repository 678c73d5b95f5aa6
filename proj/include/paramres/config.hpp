#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "paramres/langevin.hpp"
#include "paramres/mixing.hpp"
#include "paramres/resonator.hpp"
#include "paramres/spectrum.hpp"
#include "paramres/sweep.hpp"

namespace paramres {

/// Settings of the `spectrum` command.
struct SpectrumCmd {
    SpectrumVariant variant = SpectrumVariant::AsPrinted;
    // Either an explicit offset grid or a symmetric span in linewidths.
    std::vector<double> omega_values_rad_s;
    double span_linewidths = 3.0;
    std::size_t points = 401;
    std::vector<double> phases_rad;  ///< optional extra homodyne slices
};

/// Settings of the `simulate` command: integration plus the band-restricted
/// comparison against the two-bath analytic spectra.
struct SimulateCmd {
    SimConfig sim;
    double band_linewidths = 3.0;
    double rms_tolerance = 0.05;
    double z_tolerance = 4.0;
    /// Verification knob: compare against the analytic curve at a different
    /// modulation depth (regression fixtures use a deliberate mismatch).
    std::optional<double> compare_xi;
};

/// Settings of the `mixing` command.  With scaled_units the dynamics run
/// (resonance at f0 = 1); otherwise the command emits the comb arithmetic
/// only, since literal microwave frequencies are not integrated directly.
struct MixingCmd {
    bool scaled_units = true;
    DriveConfig drive;
    MixingSimConfig sim;
};

struct SweepCmdAxis {
    SweepParam param = SweepParam::QFeedline;
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 2;
};

struct SweepCmd {
    SpectrumVariant variant = SpectrumVariant::AsPrinted;
    std::vector<SweepCmdAxis> axes;
    std::optional<double> fixed_xi_q;
    double omega_rad_s = 0.0;
};

/// Parsed run configuration.  Parsing is strict: unknown keys anywhere are
/// rejected.  `resolved` holds the fully materialized configuration
/// (defaults filled in) whose canonical dump is hashed into output headers.
struct RunConfig {
    ResonatorParams resonator;
    BathTemperatures baths;
    double xi = 0.0;
    double f_mod_hz = 0.0;  ///< defaults to 2*f0

    std::optional<SpectrumCmd> spectrum;
    std::optional<SimulateCmd> simulate;
    std::optional<MixingCmd> mixing;
    std::optional<SweepCmd> sweep;

    nlohmann::ordered_json resolved;

    [[nodiscard]] std::uint64_t config_hash() const;
    /// Re-materializes `resolved` (after overrides such as --seed).
    void refresh_resolved();
};

RunConfig parse_config(const nlohmann::ordered_json& j);
RunConfig load_config(const std::string& path);

}  // namespace paramres
