#include "feq/materials.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "feq/errors.hpp"

namespace feq {

namespace {

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                         std::string_view where) {
    if (!j.is_object()) throw ValidationError(std::string(where) + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (!allowed.contains(key))
            throw ValidationError(std::string(where) + ": unknown key '" + key + "'");
    }
}

double require_number(const nlohmann::json& j, const char* key, std::string_view where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ValidationError(std::string(where) + ": missing numeric field '" + key + "'");
    return j.at(key).get<double>();
}

}  // namespace

double image_charge_factor(double epsilon_r) {
    if (!(epsilon_r >= 1.0))
        throw ValidationError("image_charge_factor: epsilon_r must be >= 1");
    return (epsilon_r - 1.0) / (epsilon_r + 1.0);
}

void SubstrateParams::validate() const {
    if (!(epsilon_r > 1.0))
        throw ValidationError("substrate '" + name + "': epsilon_r must be > 1");
    if (!(image_factor > 0.0 && image_factor < 1.0))
        throw ValidationError("substrate '" + name + "': image factor outside (0, 1)");
    const double expected = image_charge_factor(epsilon_r);
    if (std::abs(image_factor - expected) > 1e-12 * expected)
        throw ValidationError("substrate '" + name + "': image factor inconsistent with epsilon_r");
    if (!(barrier_height > 0.0))
        throw ValidationError("substrate '" + name + "': barrier height must be > 0");
    if (!(offset >= 0.0)) throw ValidationError("substrate '" + name + "': z0 must be >= 0");
    if (nuclear_broadening && !(*nuclear_broadening >= 0.0))
        throw ValidationError("substrate '" + name + "': nuclear broadening must be >= 0");
}

SubstrateParams custom_substrate(std::string name, double epsilon_r, double barrier_height,
                                 double offset, std::optional<double> nuclear_broadening) {
    if (!(epsilon_r > 1.0))
        throw ValidationError("substrate '" + name + "': epsilon_r must be > 1");
    SubstrateParams p;
    p.kind = SubstrateKind::Custom;
    p.name = std::move(name);
    p.epsilon_r = epsilon_r;
    p.image_factor = image_charge_factor(epsilon_r);
    p.barrier_height = barrier_height;
    p.offset = offset;
    p.nuclear_broadening = nuclear_broadening;
    p.validate();
    return p;
}

SubstrateParams substrate(SubstrateKind kind) {
    switch (kind) {
        case SubstrateKind::Helium4: {
            auto p = custom_substrate("helium4", 1.056, 1.0 * units::eV, 0.1 * units::nm);
            p.kind = kind;
            return p;
        }
        case SubstrateKind::Neon: {
            auto p = custom_substrate("neon", 1.244, 0.7 * units::eV, 0.23 * units::nm,
                                      angular_from_hz(10.0 * units::kHz));
            p.kind = kind;
            return p;
        }
        case SubstrateKind::Custom:
            break;
    }
    throw ValidationError("substrate: no catalog entry for custom substrates");
}

std::string_view to_string(SubstrateKind kind) {
    switch (kind) {
        case SubstrateKind::Helium4: return "helium";
        case SubstrateKind::Neon: return "neon";
        case SubstrateKind::Custom: return "custom";
    }
    return "custom";
}

SubstrateKind parse_substrate_kind(std::string_view text) {
    const std::string t = lowercase(text);
    if (t == "helium" || t == "helium4" || t == "helium-4" || t == "he") return SubstrateKind::Helium4;
    if (t == "neon" || t == "ne") return SubstrateKind::Neon;
    if (t == "custom") return SubstrateKind::Custom;
    throw ValidationError("unknown material '" + std::string(text) + "'");
}

nlohmann::json to_json(const SubstrateParams& params) {
    nlohmann::json j = {
        {"epsilon_r", params.epsilon_r},
        {"barrier_eV", params.barrier_height / units::eV},
        {"z0_nm", params.offset / units::nm},
    };
    if (params.nuclear_broadening)
        j["nuclear_broadening_over_2pi_kHz"] = hz_from_angular(*params.nuclear_broadening) / units::kHz;
    return j;
}

SubstrateParams substrate_from_json(const nlohmann::json& j, SubstrateKind kind, std::string name) {
    const std::string where = "materials." + name;
    reject_unknown_keys(j, {"epsilon_r", "barrier_eV", "z0_nm", "nuclear_broadening_over_2pi_kHz"},
                        where);
    std::optional<double> broadening;
    if (j.contains("nuclear_broadening_over_2pi_kHz"))
        broadening = angular_from_hz(require_number(j, "nuclear_broadening_over_2pi_kHz", where) *
                                     units::kHz);
    auto p = custom_substrate(std::move(name), require_number(j, "epsilon_r", where),
                              require_number(j, "barrier_eV", where) * units::eV,
                              require_number(j, "z0_nm", where) * units::nm, broadening);
    p.kind = kind;
    return p;
}

nlohmann::json to_json(const PhysicalConstants& pc) {
    return {
        {"elementary_charge_C", pc.elementary_charge},
        {"planck_J_s", pc.planck},
        {"electron_mass_kg", pc.electron_mass},
        {"vacuum_permittivity_F_per_m", pc.vacuum_permittivity},
        {"bohr_magneton_J_per_T", pc.bohr_magneton},
        {"g_factor", pc.g_factor},
    };
}

PhysicalConstants constants_from_json(const nlohmann::json& j) {
    const char* where = "constants";
    reject_unknown_keys(j,
                        {"elementary_charge_C", "planck_J_s", "electron_mass_kg",
                         "vacuum_permittivity_F_per_m", "bohr_magneton_J_per_T", "g_factor"},
                        where);
    auto pc = PhysicalConstants::from_base(
        require_number(j, "elementary_charge_C", where), require_number(j, "planck_J_s", where),
        require_number(j, "electron_mass_kg", where),
        require_number(j, "vacuum_permittivity_F_per_m", where),
        require_number(j, "bohr_magneton_J_per_T", where), require_number(j, "g_factor", where));
    for (double v : {pc.elementary_charge, pc.planck, pc.electron_mass, pc.vacuum_permittivity,
                     pc.bohr_magneton, pc.g_factor}) {
        if (!(v > 0.0)) throw ValidationError("constants: all values must be positive");
    }
    return pc;
}

}  // namespace feq
