#include "feq/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <utility>

#include "feq/errors.hpp"
#include "feq/kernels.hpp"

namespace feq::cli {

namespace {

using nlohmann::json;

template <class T>
using FieldTable = std::vector<std::pair<std::string_view, double T::*>>;

const FieldTable<CouplingInputs>& coupling_fields() {
    static const FieldTable<CouplingInputs> table{
        {"capacitance_pF", &CouplingInputs::capacitance_pF},
        {"resonator_MHz", &CouplingInputs::resonator_MHz},
        {"lever_arm", &CouplingInputs::lever_arm},
        {"kappa_over_2pi_MHz", &CouplingInputs::kappa_over_2pi_MHz},
        {"gradient_mT_per_nm", &CouplingInputs::gradient_mT_per_nm},
        {"b0_T", &CouplingInputs::b0_T},
        {"e_ac_V_per_m", &CouplingInputs::e_ac_V_per_m},
        {"orbital_GHz", &CouplingInputs::orbital_GHz},
        {"interdot_nm", &CouplingInputs::interdot_nm},
        {"spin_photon_gc_over_2pi_MHz", &CouplingInputs::spin_photon_gc_over_2pi_MHz},
        {"spin_orbit_detuning_GHz", &CouplingInputs::spin_orbit_detuning_GHz},
        {"gamma_c_over_2pi_MHz", &CouplingInputs::gamma_c_over_2pi_MHz},
        {"dipole_length_nm", &CouplingInputs::dipole_length_nm},
        {"dipole_separation_um", &CouplingInputs::dipole_separation_um},
    };
    return table;
}

const FieldTable<ReadoutInputs>& readout_fields() {
    static const FieldTable<ReadoutInputs> table{
        {"detuning_GHz", &ReadoutInputs::detuning_GHz},
        {"drive_GHz", &ReadoutInputs::drive_GHz},
        {"probe_amplitude_MHz", &ReadoutInputs::probe_amplitude_MHz},
        {"probe_frequency_MHz", &ReadoutInputs::probe_frequency_MHz},
        {"gamma1_over_2pi_MHz", &ReadoutInputs::gamma1_over_2pi_MHz},
        {"gamma_phi_over_2pi_MHz", &ReadoutInputs::gamma_phi_over_2pi_MHz},
        {"n_bar", &ReadoutInputs::n_bar},
        {"n_noise", &ReadoutInputs::n_noise},
        {"t_int_us", &ReadoutInputs::t_int_us},
    };
    return table;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key)) throw ValidationError(where + ": unknown key '" + key + "'");
}

template <class T>
std::set<std::string> keys_of(const FieldTable<T>& table) {
    std::set<std::string> out;
    for (const auto& [name, member] : table) out.emplace(name);
    return out;
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ValidationError(where + ": expected a number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& where) {
    if (!j.is_number_integer() && !j.is_number_unsigned())
        throw ValidationError(where + ": expected a non-negative integer");
    const auto v = j.get<long long>();
    if (v < 0) throw ValidationError(where + ": expected a non-negative integer");
    return static_cast<std::size_t>(v);
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) throw ValidationError(where + ": expected a string");
    return j.get<std::string>();
}

template <class T>
void read_fields(const json& j, const FieldTable<T>& table, T& target, const std::string& where) {
    for (const auto& [name, member] : table) {
        const std::string key(name);
        if (j.contains(key)) target.*member = number(j.at(key), where + "." + key);
    }
}

template <class T>
void write_fields(json& j, const FieldTable<T>& table, const T& source) {
    for (const auto& [name, member] : table) j[std::string(name)] = source.*member;
}

std::string_view basis_name(RelaxationBasis b) {
    return b == RelaxationBasis::Bare ? "bare" : "dressed";
}

RelaxationBasis parse_basis(const std::string& s) {
    if (s == "bare") return RelaxationBasis::Bare;
    if (s == "dressed") return RelaxationBasis::Dressed;
    throw ValidationError("readout.relaxation_basis: expected 'bare' or 'dressed', got '" + s + "'");
}

double parse_double(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end)
        throw ValidationError(std::string(what) + ": cannot parse '" + std::string(s) + "' as a number");
    return v;
}

}  // namespace

std::string_view to_string(Command c) noexcept {
    switch (c) {
        case Command::Spectrum: return "spectrum";
        case Command::StarkSweep: return "stark-sweep";
        case Command::Couplings: return "couplings";
        case Command::Readout: return "readout";
        case Command::EscapeWindow: return "escape-window";
        case Command::Convergence: return "convergence";
        case Command::ReproducePaper: return "reproduce-paper";
    }
    return "unknown";
}

Command parse_command(std::string_view text) {
    for (auto c : {Command::Spectrum, Command::StarkSweep, Command::Couplings, Command::Readout,
                   Command::EscapeWindow, Command::Convergence, Command::ReproducePaper})
        if (to_string(c) == text) return c;
    throw ValidationError("unknown command '" + std::string(text) + "'");
}

std::vector<double> SweepAxis::values() const {
    validate();
    std::vector<double> out(points);
    if (points == 1) {
        out[0] = min;
        return out;
    }
    const double span = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / span;
        out[i] = scale == Scale::Linear ? min + (max - min) * f
                                        : std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
    }
    out.back() = max;
    return out;
}

void SweepAxis::validate() const {
    if (points < 1) throw ValidationError("sweep '" + name + "': needs at least one point");
    if (!std::isfinite(min) || !std::isfinite(max))
        throw ValidationError("sweep '" + name + "': bounds must be finite");
    if (points > 1 && !(min < max))
        throw ValidationError("sweep '" + name + "': requires min < max");
    if (scale == Scale::Log && !(min > 0.0))
        throw ValidationError("sweep '" + name + "': log scale requires positive bounds");
}

SweepAxis parse_range(std::string_view name, std::string_view text) {
    SweepAxis axis;
    axis.name = std::string(name);
    const auto first = text.find(':');
    if (first == std::string_view::npos) {
        axis.min = axis.max = parse_double(text, name);
        axis.points = 1;
        return axis;
    }
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
        throw ValidationError(std::string(name) + ": expected VALUE or MIN:MAX:POINTS");
    axis.min = parse_double(text.substr(0, first), name);
    axis.max = parse_double(text.substr(first + 1, second - first - 1), name);
    const double pts = parse_double(text.substr(second + 1), name);
    if (!(pts >= 0.0) || pts != std::floor(pts))
        throw ValidationError(std::string(name) + ": point count must be a non-negative integer");
    axis.points = static_cast<std::size_t>(pts);
    axis.validate();
    return axis;
}

ResonatorElectrical CouplingInputs::resonator() const {
    ResonatorElectrical r{capacitance_pF * units::pF, angular_from_hz(resonator_MHz * units::MHz),
                          lever_arm, angular_from_hz(kappa_over_2pi_MHz * units::MHz)};
    r.validate();
    return r;
}

TwoLevelReadoutModel ReadoutInputs::model(const PhysicalConstants& pc) const {
    TwoLevelReadoutModel m{pc.planck * detuning_GHz * units::GHz,
                           pc.planck * drive_GHz * units::GHz,
                           pc.planck * probe_amplitude_MHz * units::MHz,
                           angular_from_hz(probe_frequency_MHz * units::MHz),
                           angular_from_hz(gamma1_over_2pi_MHz * units::MHz),
                           angular_from_hz(gamma_phi_over_2pi_MHz * units::MHz),
                           basis};
    m.validate();
    return m;
}

SubstrateParams RunConfig::substrate_for(std::string_view material_name) const {
    const SubstrateKind kind = parse_substrate_kind(material_name);
    const std::string canonical(to_string(kind));
    json merged = kind == SubstrateKind::Custom ? json::object() : to_json(feq::substrate(kind));
    if (material_overrides.contains(canonical)) merged.update(material_overrides.at(canonical));
    if (kind == SubstrateKind::Custom && merged.empty())
        throw ValidationError("material 'custom' requires materials.custom in the config");
    auto p = substrate_from_json(merged, kind, canonical);
    p.validate();
    return p;
}

PhysicalConstants RunConfig::constants() const {
    return constants_override ? constants_from_json(*constants_override) : PhysicalConstants::si();
}

std::string RunConfig::output_path() const {
    return out.empty() ? std::string(to_string(command)) + ".csv" : out;
}

std::vector<std::string_view> sweep_axes(Command c) {
    std::vector<std::string_view> out;
    switch (c) {
        case Command::Spectrum:
        case Command::StarkSweep: out.push_back("eperp_V_per_m"); break;
        case Command::Couplings:
            for (const auto& [name, member] : coupling_fields()) out.push_back(name);
            break;
        case Command::Readout:
            for (const auto& [name, member] : readout_fields()) out.push_back(name);
            break;
        default: break;
    }
    return out;
}

void RunConfig::validate() const {
    grid.validate();
    const auto sub = substrate();
    const auto pc = constants();
    (void)sub;
    if (levels < 2 || levels > grid.points() / 10)
        throw ValidationError("levels must lie in [2, grid points / 10]");
    if (threads < 1) throw ValidationError("threads must be >= 1");
    if (!simd.empty()) kernels::parse_level(simd);
    if (!(std::abs(eperp_V_per_m) < kMaxFieldMagnitude))
        throw ValidationError("eperp_V_per_m: |E_perp| must be below 1e7 V/m");
    for (const auto& [name, value] : material_overrides.items()) (void)substrate_for(name);
    if (sweep) {
        sweep->validate();
        const auto axes = sweep_axes(command);
        if (std::find(axes.begin(), axes.end(), sweep->name) == axes.end())
            throw ValidationError("sweep axis '" + sweep->name + "' is not supported by command '" +
                                  std::string(to_string(command)) + "'");
        if (sweep->name == "eperp_V_per_m" &&
            !(std::max(std::abs(sweep->min), std::abs(sweep->max)) < kMaxFieldMagnitude))
            throw ValidationError("eperp_V_per_m: |E_perp| must be below 1e7 V/m");
    }
    if (command == Command::Couplings || command == Command::Readout ||
        command == Command::ReproducePaper)
        (void)couplings.resonator();
    if (command == Command::Readout) {
        (void)readout.model(pc);
        if (!(readout.n_bar > 0.0) || !(readout.n_noise > 0.0) || !(readout.t_int_us > 0.0))
            throw ValidationError("readout: n_bar, n_noise and t_int_us must be positive");
    }
    if (command == Command::EscapeWindow) {
        if (!(escape.n_bound >= 1 && escape.n_bound < escape.n_escape))
            throw ValidationError("escape: requires 1 <= n_bound < n_escape");
        if (!(escape.range_min_V_per_m < escape.range_max_V_per_m && escape.range_max_V_per_m < 0.0))
            throw ValidationError("escape: requires range_min < range_max < 0");
        if (escape.points < 2) throw ValidationError("escape: points must be >= 2");
    }
}

RunConfig config_from_json(const json& j) {
    reject_unknown(j,
                   {"command", "material", "materials", "constants", "grid", "levels",
                    "eperp_V_per_m", "sweep", "out", "threads", "simd", "couplings", "readout",
                    "escape"},
                   "config");
    RunConfig c;
    if (j.contains("command")) c.command = parse_command(text(j.at("command"), "command"));
    if (j.contains("material")) c.material = text(j.at("material"), "material");
    if (j.contains("materials")) {
        const auto& m = j.at("materials");
        reject_unknown(m, {"helium", "neon", "custom"}, "materials");
        c.material_overrides = m;
        for (const auto& [name, value] : m.items()) (void)c.substrate_for(name);
    }
    if (j.contains("constants")) c.constants_override = j.at("constants");
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        reject_unknown(g, {"z_min_nm", "z_max_nm", "step_nm"}, "grid");
        if (g.contains("z_min_nm")) c.grid.z_min = number(g.at("z_min_nm"), "grid.z_min_nm") * units::nm;
        if (g.contains("z_max_nm")) c.grid.z_max = number(g.at("z_max_nm"), "grid.z_max_nm") * units::nm;
        if (g.contains("step_nm")) c.grid.step = number(g.at("step_nm"), "grid.step_nm") * units::nm;
    }
    if (j.contains("levels")) c.levels = count(j.at("levels"), "levels");
    if (j.contains("eperp_V_per_m")) c.eperp_V_per_m = number(j.at("eperp_V_per_m"), "eperp_V_per_m");
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        reject_unknown(s, {"axis", "min", "max", "points", "scale"}, "sweep");
        SweepAxis axis;
        if (!s.contains("axis")) throw ValidationError("sweep: missing 'axis'");
        axis.name = text(s.at("axis"), "sweep.axis");
        if (!s.contains("min") || !s.contains("points"))
            throw ValidationError("sweep: requires 'min' and 'points'");
        axis.min = number(s.at("min"), "sweep.min");
        axis.max = s.contains("max") ? number(s.at("max"), "sweep.max") : axis.min;
        axis.points = count(s.at("points"), "sweep.points");
        if (s.contains("scale")) {
            const auto sc = text(s.at("scale"), "sweep.scale");
            if (sc == "linear") axis.scale = Scale::Linear;
            else if (sc == "log") axis.scale = Scale::Log;
            else throw ValidationError("sweep.scale: expected 'linear' or 'log'");
        }
        c.sweep = axis;
    }
    if (j.contains("out")) c.out = text(j.at("out"), "out");
    if (j.contains("threads")) {
        const auto t = count(j.at("threads"), "threads");
        c.threads = static_cast<unsigned>(std::min<std::size_t>(t, 1024));
    }
    if (j.contains("simd")) c.simd = text(j.at("simd"), "simd");
    if (j.contains("couplings")) {
        const auto& cj = j.at("couplings");
        reject_unknown(cj, keys_of(coupling_fields()), "couplings");
        read_fields(cj, coupling_fields(), c.couplings, "couplings");
    }
    if (j.contains("readout")) {
        const auto& rj = j.at("readout");
        auto allowed = keys_of(readout_fields());
        allowed.insert({"relaxation_basis", "integrator"});
        reject_unknown(rj, allowed, "readout");
        read_fields(rj, readout_fields(), c.readout, "readout");
        if (rj.contains("relaxation_basis"))
            c.readout.basis = parse_basis(text(rj.at("relaxation_basis"), "readout.relaxation_basis"));
        if (rj.contains("integrator")) {
            const auto& ij = rj.at("integrator");
            reject_unknown(ij, {"steps_per_period", "min_steps_per_period", "tolerance", "max_periods",
                                "floquet_seed"},
                           "readout.integrator");
            auto& o = c.readout.integrator;
            if (ij.contains("steps_per_period"))
                o.steps_per_period = count(ij.at("steps_per_period"), "readout.integrator.steps_per_period");
            if (ij.contains("min_steps_per_period"))
                o.min_steps_per_period =
                    count(ij.at("min_steps_per_period"), "readout.integrator.min_steps_per_period");
            if (ij.contains("tolerance"))
                o.tolerance = number(ij.at("tolerance"), "readout.integrator.tolerance");
            if (ij.contains("max_periods"))
                o.max_periods = count(ij.at("max_periods"), "readout.integrator.max_periods");
            if (ij.contains("floquet_seed")) {
                if (!ij.at("floquet_seed").is_boolean())
                    throw ValidationError("readout.integrator.floquet_seed: expected a boolean");
                o.floquet_seed = ij.at("floquet_seed").get<bool>();
            }
        }
    }
    if (j.contains("escape")) {
        const auto& ej = j.at("escape");
        reject_unknown(ej, {"n_bound", "n_escape", "range_min_V_per_m", "range_max_V_per_m", "points"},
                       "escape");
        if (ej.contains("n_bound")) c.escape.n_bound = count(ej.at("n_bound"), "escape.n_bound");
        if (ej.contains("n_escape")) c.escape.n_escape = count(ej.at("n_escape"), "escape.n_escape");
        if (ej.contains("range_min_V_per_m"))
            c.escape.range_min_V_per_m = number(ej.at("range_min_V_per_m"), "escape.range_min_V_per_m");
        if (ej.contains("range_max_V_per_m"))
            c.escape.range_max_V_per_m = number(ej.at("range_max_V_per_m"), "escape.range_max_V_per_m");
        if (ej.contains("points")) c.escape.points = count(ej.at("points"), "escape.points");
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("config '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

json to_json(const RunConfig& c) {
    json j;
    j["command"] = std::string(to_string(c.command));
    j["material"] = c.material;
    json materials = json::object();
    for (const auto* name : {"helium", "neon"}) materials[name] = feq::to_json(c.substrate_for(name));
    if (c.material_overrides.contains("custom"))
        materials["custom"] = feq::to_json(c.substrate_for("custom"));
    j["materials"] = materials;
    j["constants"] = feq::to_json(c.constants());
    j["grid"] = {{"z_min_nm", c.grid.z_min / units::nm},
                 {"z_max_nm", c.grid.z_max / units::nm},
                 {"step_nm", c.grid.step / units::nm}};
    j["levels"] = c.levels;
    j["eperp_V_per_m"] = c.eperp_V_per_m;
    if (c.sweep)
        j["sweep"] = {{"axis", c.sweep->name},
                      {"min", c.sweep->min},
                      {"max", c.sweep->max},
                      {"points", c.sweep->points},
                      {"scale", c.sweep->scale == Scale::Linear ? "linear" : "log"}};
    j["out"] = c.output_path();
    j["threads"] = c.threads;
    j["simd"] = c.simd.empty() ? std::string(kernels::name(kernels::active_level())) : c.simd;
    json cj;
    write_fields(cj, coupling_fields(), c.couplings);
    j["couplings"] = cj;
    json rj;
    write_fields(rj, readout_fields(), c.readout);
    rj["relaxation_basis"] = std::string(basis_name(c.readout.basis));
    const auto& o = c.readout.integrator;
    rj["integrator"] = {{"steps_per_period", o.steps_per_period},
                        {"min_steps_per_period", o.min_steps_per_period},
                        {"tolerance", o.tolerance},
                        {"max_periods", o.max_periods},
                        {"floquet_seed", o.floquet_seed}};
    j["readout"] = rj;
    j["escape"] = {{"n_bound", c.escape.n_bound},
                   {"n_escape", c.escape.n_escape},
                   {"range_min_V_per_m", c.escape.range_min_V_per_m},
                   {"range_max_V_per_m", c.escape.range_max_V_per_m},
                   {"points", c.escape.points}};
    return j;
}

RunConfig with_axis_value(const RunConfig& base, std::string_view axis, double value) {
    RunConfig c = base;
    if (axis == "eperp_V_per_m") {
        c.eperp_V_per_m = value;
        return c;
    }
    for (const auto& [name, member] : coupling_fields())
        if (name == axis) {
            c.couplings.*member = value;
            return c;
        }
    for (const auto& [name, member] : readout_fields())
        if (name == axis) {
            c.readout.*member = value;
            return c;
        }
    throw ValidationError("unknown sweep axis '" + std::string(axis) + "'");
}

}  // namespace feq::cli
