#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "feq/constants.hpp"

namespace feq {

enum class SubstrateKind { Helium4, Neon, Custom };

/// Material constants of the cryogenic substrate under the electron.
///
/// `barrier_height` is the repulsive step at the surface (z <= 0); it is not
/// the resonator's rms vacuum voltage. `offset` is the empirical z0 entering
/// the image potential as 1/(z + z0).
struct SubstrateParams {
    SubstrateKind kind = SubstrateKind::Custom;
    std::string name;
    double epsilon_r = 1.0;
    double image_factor = 0.0;       // (eps_r - 1)/(eps_r + 1)
    double barrier_height = 0.0;     // J
    double offset = 0.0;             // m
    std::optional<double> nuclear_broadening;  // rad/s

    /// Throws ValidationError unless eps_r > 1, 0 < Lambda < 1 (and consistent
    /// with eps_r), U_b > 0 and z0 >= 0.
    void validate() const;
};

/// (eps_r - 1)/(eps_r + 1). Rejects eps_r < 1.
double image_charge_factor(double epsilon_r);

/// Catalog entry for helium-4 or neon. Custom has no catalog entry and is
/// rejected here; build those with `custom_substrate`.
SubstrateParams substrate(SubstrateKind kind);

/// Validated user-defined substrate. Lambda is derived from eps_r.
SubstrateParams custom_substrate(std::string name, double epsilon_r, double barrier_height,
                                 double offset,
                                 std::optional<double> nuclear_broadening = std::nullopt);

std::string_view to_string(SubstrateKind kind);
/// Accepts "helium", "helium4", "he", "neon", "ne", "custom" (case-insensitive).
SubstrateKind parse_substrate_kind(std::string_view text);

/// Config representation in human units:
///   {"epsilon_r": 1.056, "barrier_eV": 1.0, "z0_nm": 0.1,
///    "nuclear_broadening_over_2pi_kHz": 10}   (last key optional)
/// Unknown keys are rejected.
nlohmann::json to_json(const SubstrateParams& params);
SubstrateParams substrate_from_json(const nlohmann::json& j, SubstrateKind kind,
                                    std::string name);

/// Independent constants in SI; derived ones are rebuilt on load.
nlohmann::json to_json(const PhysicalConstants& pc);
PhysicalConstants constants_from_json(const nlohmann::json& j);

}  // namespace feq
