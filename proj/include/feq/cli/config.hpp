#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "feq/constants.hpp"
#include "feq/materials.hpp"
#include "feq/readout.hpp"
#include "feq/schrodinger.hpp"

namespace feq::cli {

enum class Command { Spectrum, StarkSweep, Couplings, Readout, EscapeWindow, Convergence, ReproducePaper };

std::string_view to_string(Command c) noexcept;
Command parse_command(std::string_view text);

enum class Scale { Linear, Log };

struct SweepAxis {
    std::string name;  // config key of the swept quantity, e.g. "eperp_V_per_m"
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 1;
    Scale scale = Scale::Linear;

    /// Ascending sample list (min, ..., max); one point -> {min}.
    [[nodiscard]] std::vector<double> values() const;
    void validate() const;
};

/// Parses "value" or "min:max:points".
SweepAxis parse_range(std::string_view name, std::string_view text);

// Coupling inputs, stored in the human units of their config keys.
struct CouplingInputs {
    double capacitance_pF = 2.0;
    double resonator_MHz = 100.0;
    double lever_arm = 0.01;
    double kappa_over_2pi_MHz = 0.4;
    double gradient_mT_per_nm = 0.1;
    double b0_T = 0.5;
    double e_ac_V_per_m = 1e3;
    double orbital_GHz = 20.0;
    double interdot_nm = 100.0;
    double spin_photon_gc_over_2pi_MHz = 3.5;
    double spin_orbit_detuning_GHz = 1.0;
    double gamma_c_over_2pi_MHz = 0.36;
    double dipole_length_nm = 10.0;
    double dipole_separation_um = 1.0;

    [[nodiscard]] ResonatorElectrical resonator() const;
};

struct ReadoutInputs {
    double detuning_GHz = 0.0;
    double drive_GHz = 0.5;
    double probe_amplitude_MHz = 1.0;
    double probe_frequency_MHz = 100.0;
    double gamma1_over_2pi_MHz = 1.0;
    double gamma_phi_over_2pi_MHz = 0.1;
    RelaxationBasis basis = RelaxationBasis::Dressed;
    double n_bar = 10.0;
    double n_noise = 1.0;
    double t_int_us = 1.0;
    IntegratorOptions integrator;

    [[nodiscard]] TwoLevelReadoutModel model(const PhysicalConstants& pc) const;
};

struct EscapeInputs {
    std::size_t n_bound = 1;
    std::size_t n_escape = 2;
    double range_min_V_per_m = -1e5;
    double range_max_V_per_m = -1.0;
    std::size_t points = 201;  // classification table resolution
};

struct RunConfig {
    Command command = Command::Spectrum;
    std::string material = "helium";
    nlohmann::json material_overrides = nlohmann::json::object();  // {"neon": {"epsilon_r": ...}}
    std::optional<nlohmann::json> constants_override;
    Grid1D grid;
    std::size_t levels = 3;
    double eperp_V_per_m = 0.0;
    std::optional<SweepAxis> sweep;
    std::string out;
    unsigned threads = 1;
    std::string simd;  // empty: FEQ_SIMD or the best available level
    CouplingInputs couplings;
    ReadoutInputs readout;
    EscapeInputs escape;

    /// Catalog entry for `kind` with the config overrides applied.
    [[nodiscard]] SubstrateParams substrate_for(std::string_view material_name) const;
    [[nodiscard]] SubstrateParams substrate() const { return substrate_for(material); }
    [[nodiscard]] PhysicalConstants constants() const;
    /// Output path, defaulting to "<command>.csv".
    [[nodiscard]] std::string output_path() const;
    /// Checks every module invariant reachable from the config.
    void validate() const;
};

/// Strict parse: unknown keys and wrong types are ValidationErrors.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
/// Fully resolved config (every field present).
nlohmann::json to_json(const RunConfig& c);

/// Copy of `base` with the swept quantity `axis` set to `value`.
RunConfig with_axis_value(const RunConfig& base, std::string_view axis, double value);

/// Sweep axes accepted by each command.
std::vector<std::string_view> sweep_axes(Command c);

}  // namespace feq::cli
