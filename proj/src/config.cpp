#include "paramres/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>

#include "paramres/errors.hpp"
#include "paramres/io.hpp"

namespace paramres {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigInvalid("config: " + path + " must be an object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ConfigInvalid("config: unknown key \"" + path + "." + item.key() + "\"");
    }
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigInvalid("config: missing \"" + path + "." + key + "\"");
    if (!it->is_number())
        throw ConfigInvalid("config: \"" + path + "." + key + "\" must be a number");
    return it->get<double>();
}

double get_number_or(const json& obj, const std::string& path, const std::string& key,
                     double fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number())
        throw ConfigInvalid("config: \"" + path + "." + key + "\" must be a number");
    return it->get<double>();
}

std::uint64_t get_u64_or(const json& obj, const std::string& path, const std::string& key,
                         std::uint64_t fallback) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number_unsigned() && !it->is_number_integer())
        throw ConfigInvalid("config: \"" + path + "." + key + "\" must be an integer");
    return it->get<std::uint64_t>();
}

SpectrumVariant parse_variant(const json& obj, const std::string& path) {
    const auto it = obj.find("variant");
    if (it == obj.end()) return SpectrumVariant::AsPrinted;
    if (!it->is_string())
        throw ConfigInvalid("config: \"" + path + ".variant\" must be a string");
    const std::string v = it->get<std::string>();
    if (v == "as_printed") return SpectrumVariant::AsPrinted;
    if (v == "two_bath") return SpectrumVariant::TwoBath;
    throw ConfigInvalid("config: \"" + path + ".variant\" must be \"as_printed\" or \"two_bath\"");
}

const char* variant_name(SpectrumVariant v) {
    return v == SpectrumVariant::AsPrinted ? "as_printed" : "two_bath";
}

SweepParam parse_sweep_param(const std::string& name, const std::string& path) {
    if (name == "xi") return SweepParam::Xi;
    if (name == "q_feedline") return SweepParam::QFeedline;
    if (name == "t_damping") return SweepParam::TDamping;
    if (name == "omega") return SweepParam::Omega;
    throw ConfigInvalid("config: " + path +
                        ".param must be one of xi, q_feedline, t_damping, omega");
}

}  // namespace

RunConfig parse_config(const json& j) {
    check_keys(j, "$",
               {"resonator", "baths", "modulation", "spectrum", "simulate", "mixing", "sweep"});

    RunConfig cfg;

    {
        const auto it = j.find("resonator");
        if (it == j.end()) throw ConfigInvalid("config: missing \"resonator\" section");
        check_keys(*it, "resonator", {"f0_hz", "q_unloaded", "q_feedline"});
        const double f0 = get_number(*it, "resonator", "f0_hz");
        double qu;
        const auto qit = it->find("q_unloaded");
        if (qit == it->end())
            throw ConfigInvalid("config: missing \"resonator.q_unloaded\"");
        if (qit->is_string()) {
            if (qit->get<std::string>() != "lossless")
                throw ConfigInvalid(
                    "config: \"resonator.q_unloaded\" string form must be \"lossless\"");
            qu = std::numeric_limits<double>::infinity();
        } else if (qit->is_number()) {
            qu = qit->get<double>();
        } else {
            throw ConfigInvalid("config: \"resonator.q_unloaded\" must be a number or \"lossless\"");
        }
        cfg.resonator = ResonatorParams::make(f0, qu, get_number(*it, "resonator", "q_feedline"));
    }

    {
        const auto it = j.find("baths");
        if (it == j.end()) throw ConfigInvalid("config: missing \"baths\" section");
        check_keys(*it, "baths", {"t_feedline_k", "t_damping_k"});
        cfg.baths.t_feedline = get_number(*it, "baths", "t_feedline_k");
        cfg.baths.t_damping = get_number(*it, "baths", "t_damping_k");
        cfg.baths.validate();
    }

    cfg.f_mod_hz = 2.0 * cfg.resonator.f0;
    if (const auto it = j.find("modulation"); it != j.end()) {
        check_keys(*it, "modulation", {"xi", "f_mod_hz"});
        cfg.xi = get_number_or(*it, "modulation", "xi", 0.0);
        cfg.f_mod_hz = get_number_or(*it, "modulation", "f_mod_hz", cfg.f_mod_hz);
        Modulation{cfg.xi, cfg.f_mod_hz}.validate();
    }

    if (const auto it = j.find("spectrum"); it != j.end()) {
        check_keys(*it, "spectrum",
                   {"variant", "omega_grid", "phases_rad"});
        SpectrumCmd cmd;
        cmd.variant = parse_variant(*it, "spectrum");
        if (const auto git = it->find("omega_grid"); git != it->end()) {
            check_keys(*git, "spectrum.omega_grid",
                       {"span_linewidths", "points", "values_rad_s"});
            if (const auto vit = git->find("values_rad_s"); vit != git->end()) {
                if (git->size() != 1)
                    throw ConfigInvalid(
                        "config: spectrum.omega_grid.values_rad_s excludes the span form");
                if (!vit->is_array())
                    throw ConfigInvalid("config: spectrum.omega_grid.values_rad_s must be an array");
                for (const auto& v : *vit) {
                    if (!v.is_number())
                        throw ConfigInvalid(
                            "config: spectrum.omega_grid.values_rad_s entries must be numbers");
                    cmd.omega_values_rad_s.push_back(v.get<double>());
                }
                if (cmd.omega_values_rad_s.empty())
                    throw ConfigInvalid("config: spectrum.omega_grid.values_rad_s is empty");
            } else {
                cmd.span_linewidths = get_number_or(*git, "spectrum.omega_grid",
                                                    "span_linewidths", cmd.span_linewidths);
                cmd.points = static_cast<std::size_t>(
                    get_u64_or(*git, "spectrum.omega_grid", "points", cmd.points));
                if (cmd.points < 1)
                    throw ConfigInvalid("config: spectrum.omega_grid.points must be >= 1");
            }
        }
        if (const auto pit = it->find("phases_rad"); pit != it->end()) {
            if (!pit->is_array())
                throw ConfigInvalid("config: spectrum.phases_rad must be an array");
            for (const auto& v : *pit) {
                if (!v.is_number())
                    throw ConfigInvalid("config: spectrum.phases_rad entries must be numbers");
                cmd.phases_rad.push_back(v.get<double>());
            }
        }
        cfg.spectrum = std::move(cmd);
    }

    if (const auto it = j.find("simulate"); it != j.end()) {
        check_keys(*it, "simulate",
                   {"dt", "duration", "burn_in", "n_realizations", "seed", "welch_segment",
                    "welch_overlap", "divergence_bound", "band_linewidths", "rms_tolerance",
                    "z_tolerance", "compare_xi"});
        SimulateCmd cmd;
        cmd.sim.dt = get_number_or(*it, "simulate", "dt", cmd.sim.dt);
        cmd.sim.duration = get_number_or(*it, "simulate", "duration", cmd.sim.duration);
        cmd.sim.burn_in = get_number_or(*it, "simulate", "burn_in", cmd.sim.burn_in);
        cmd.sim.n_realizations = static_cast<int>(
            get_u64_or(*it, "simulate", "n_realizations",
                       static_cast<std::uint64_t>(cmd.sim.n_realizations)));
        cmd.sim.seed = get_u64_or(*it, "simulate", "seed", cmd.sim.seed);
        cmd.sim.welch_segment = static_cast<std::size_t>(
            get_u64_or(*it, "simulate", "welch_segment", cmd.sim.welch_segment));
        cmd.sim.welch_overlap = get_number_or(*it, "simulate", "welch_overlap",
                                              cmd.sim.welch_overlap);
        cmd.sim.divergence_bound = get_number_or(*it, "simulate", "divergence_bound",
                                                 cmd.sim.divergence_bound);
        cmd.band_linewidths = get_number_or(*it, "simulate", "band_linewidths",
                                            cmd.band_linewidths);
        cmd.rms_tolerance = get_number_or(*it, "simulate", "rms_tolerance", cmd.rms_tolerance);
        cmd.z_tolerance = get_number_or(*it, "simulate", "z_tolerance", cmd.z_tolerance);
        if (it->contains("compare_xi"))
            cmd.compare_xi = get_number(*it, "simulate", "compare_xi");
        cmd.sim.validate();
        cfg.simulate = std::move(cmd);
    }

    if (const auto it = j.find("mixing"); it != j.end()) {
        check_keys(*it, "mixing",
                   {"units", "f_pump", "pump_amplitude", "delta_f", "xi", "sample_rate",
                    "duration", "burn_in", "duffing", "divergence_bound",
                    "detect_threshold_db", "max_order"});
        MixingCmd cmd;
        if (const auto uit = it->find("units"); uit != it->end()) {
            if (!uit->is_string())
                throw ConfigInvalid("config: \"mixing.units\" must be a string");
            const std::string u = uit->get<std::string>();
            if (u == "scaled") cmd.scaled_units = true;
            else if (u == "literal") cmd.scaled_units = false;
            else
                throw ConfigInvalid("config: \"mixing.units\" must be \"scaled\" or \"literal\"");
        }
        cmd.drive.f_pump = get_number_or(*it, "mixing", "f_pump", cmd.drive.f_pump);
        cmd.drive.pump_amplitude = get_number_or(*it, "mixing", "pump_amplitude",
                                                 cmd.drive.pump_amplitude);
        cmd.drive.delta_f = get_number_or(*it, "mixing", "delta_f", cmd.drive.delta_f);
        cmd.drive.xi = get_number_or(*it, "mixing", "xi", cmd.drive.xi);
        cmd.sim.sample_rate = get_number_or(*it, "mixing", "sample_rate", cmd.sim.sample_rate);
        cmd.sim.duration = get_number_or(*it, "mixing", "duration", cmd.sim.duration);
        cmd.sim.burn_in = get_number_or(*it, "mixing", "burn_in", cmd.sim.burn_in);
        cmd.sim.duffing = get_number_or(*it, "mixing", "duffing", cmd.sim.duffing);
        cmd.sim.divergence_bound = get_number_or(*it, "mixing", "divergence_bound",
                                                 cmd.sim.divergence_bound);
        cmd.sim.detect_threshold_db = get_number_or(*it, "mixing", "detect_threshold_db",
                                                    cmd.sim.detect_threshold_db);
        cmd.sim.max_order = static_cast<int>(
            get_u64_or(*it, "mixing", "max_order", static_cast<std::uint64_t>(cmd.sim.max_order)));
        cmd.drive.validate();
        cmd.sim.validate();
        cfg.mixing = std::move(cmd);
    }

    if (const auto it = j.find("sweep"); it != j.end()) {
        check_keys(*it, "sweep", {"variant", "axes", "fixed_xi_q", "omega_rad_s"});
        SweepCmd cmd;
        cmd.variant = parse_variant(*it, "sweep");
        const auto ait = it->find("axes");
        if (ait == it->end() || !ait->is_array() || ait->empty() || ait->size() > 2)
            throw ConfigInvalid("config: sweep.axes must be an array of 1 or 2 axes");
        std::size_t idx = 0;
        for (const auto& axis : *ait) {
            const std::string path = "sweep.axes[" + std::to_string(idx++) + "]";
            check_keys(axis, path, {"param", "min", "max", "points"});
            const auto pit = axis.find("param");
            if (pit == axis.end() || !pit->is_string())
                throw ConfigInvalid("config: " + path + ".param must be a string");
            SweepCmdAxis a;
            a.param = parse_sweep_param(pit->get<std::string>(), path);
            a.min = get_number(axis, path, "min");
            a.max = get_number(axis, path, "max");
            a.points = static_cast<std::size_t>(get_u64_or(axis, path, "points", 2));
            if (a.points < 1)
                throw ConfigInvalid("config: " + path + ".points must be >= 1");
            cmd.axes.push_back(a);
        }
        if (it->contains("fixed_xi_q"))
            cmd.fixed_xi_q = get_number(*it, "sweep", "fixed_xi_q");
        cmd.omega_rad_s = get_number_or(*it, "sweep", "omega_rad_s", 0.0);
        cfg.sweep = std::move(cmd);
    }

    cfg.refresh_resolved();
    return cfg;
}

void RunConfig::refresh_resolved() {
    json out;
    out["resonator"] = {{"f0_hz", resonator.f0},
                        {"q_unloaded", resonator.is_lossless()
                                           ? json("lossless")
                                           : json(resonator.q_unloaded)},
                        {"q_feedline", resonator.q_feedline}};
    out["baths"] = {{"t_feedline_k", baths.t_feedline}, {"t_damping_k", baths.t_damping}};
    out["modulation"] = {{"xi", xi}, {"f_mod_hz", f_mod_hz}};
    if (spectrum) {
        json g;
        if (!spectrum->omega_values_rad_s.empty())
            g = {{"values_rad_s", spectrum->omega_values_rad_s}};
        else
            g = {{"span_linewidths", spectrum->span_linewidths}, {"points", spectrum->points}};
        out["spectrum"] = {{"variant", variant_name(spectrum->variant)},
                           {"omega_grid", g},
                           {"phases_rad", spectrum->phases_rad}};
    }
    if (simulate) {
        out["simulate"] = {{"dt", simulate->sim.dt},
                           {"duration", simulate->sim.duration},
                           {"burn_in", simulate->sim.burn_in},
                           {"n_realizations", simulate->sim.n_realizations},
                           {"seed", simulate->sim.seed},
                           {"welch_segment", simulate->sim.welch_segment},
                           {"welch_overlap", simulate->sim.welch_overlap},
                           {"divergence_bound", simulate->sim.divergence_bound},
                           {"band_linewidths", simulate->band_linewidths},
                           {"rms_tolerance", simulate->rms_tolerance},
                           {"z_tolerance", simulate->z_tolerance}};
        if (simulate->compare_xi) out["simulate"]["compare_xi"] = *simulate->compare_xi;
    }
    if (mixing) {
        out["mixing"] = {{"units", mixing->scaled_units ? "scaled" : "literal"},
                         {"f_pump", mixing->drive.f_pump},
                         {"pump_amplitude", mixing->drive.pump_amplitude},
                         {"delta_f", mixing->drive.delta_f},
                         {"xi", mixing->drive.xi},
                         {"sample_rate", mixing->sim.sample_rate},
                         {"duration", mixing->sim.duration},
                         {"burn_in", mixing->sim.burn_in},
                         {"duffing", mixing->sim.duffing},
                         {"divergence_bound", mixing->sim.divergence_bound},
                         {"detect_threshold_db", mixing->sim.detect_threshold_db},
                         {"max_order", mixing->sim.max_order}};
    }
    if (sweep) {
        json axes = json::array();
        for (const auto& a : sweep->axes)
            axes.push_back({{"param", sweep_param_name(a.param)},
                            {"min", a.min},
                            {"max", a.max},
                            {"points", a.points}});
        out["sweep"] = {{"variant", variant_name(sweep->variant)}, {"axes", axes}};
        if (sweep->fixed_xi_q) out["sweep"]["fixed_xi_q"] = *sweep->fixed_xi_q;
        out["sweep"]["omega_rad_s"] = sweep->omega_rad_s;
    }
    resolved = std::move(out);
}

std::uint64_t RunConfig::config_hash() const {
    return fnv1a64(resolved.dump());
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("config: cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigInvalid("config: JSON parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

}  // namespace paramres
