#include "feq/couplings.hpp"

#include <cmath>
#include <numbers>

#include "feq/errors.hpp"

namespace feq {

namespace {

constexpr double kPoleTolerance = 1e-6;

void require_positive(double value, const char* what) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw ValidationError(std::string(what) + " must be positive and finite");
}

CouplingResult make(double value, const char* unit, Formula f,
                    std::vector<std::pair<std::string, double>> inputs) {
    if (!std::isfinite(value)) throw NumericalError("coupling value is not finite");
    return CouplingResult{value, unit, f, std::move(inputs), true};
}

// gradient e E l0^2 w / (2 hbar (w^2 - wl^2)), shared by both EDSR variants
// so the omega_c = 0 reduction is exact.
double edsr_core(double gradient, double e_ac, double l0, double omega, double omega_l,
                 const PhysicalConstants& pc) {
    const double denom = omega * omega - omega_l * omega_l;
    if (std::abs(denom) < kPoleTolerance * omega * omega)
        throw SingularityError("EDSR field: drive is resonant with the orbital frequency");
    return gradient * pc.elementary_charge * e_ac * l0 * l0 * omega /
           (2.0 * pc.reduced_planck * denom);
}

}  // namespace

std::string_view to_string(Formula f) noexcept {
    switch (f) {
        case Formula::VacuumVoltage: return "vacuum_voltage";
        case Formula::ChargePhoton: return "charge_photon_g";
        case Formula::EdsrField: return "edsr_field";
        case Formula::EdsrFieldLandau: return "edsr_field_landau";
        case Formula::DqdSpinPhotonField: return "dqd_spin_photon_field";
        case Formula::DqdSpinPhoton: return "dqd_spin_photon";
        case Formula::SpinDecoherenceFromCharge: return "spin_decoherence_from_charge";
        case Formula::DipoleDipole: return "dipole_dipole_coupling";
    }
    return "unknown";
}

void ResonatorElectrical::validate() const {
    require_positive(capacitance, "resonator capacitance");
    require_positive(omega_r, "resonator frequency");
    require_positive(kappa, "resonator loss rate");
    if (!(lever_arm > 0.0 && lever_arm <= 1.0))
        throw ValidationError("lever arm must lie in (0, 1]");
}

TrapParams TrapParams::harmonic(double omega0, double orbital_gap, const PhysicalConstants& pc) {
    const double l0 = feq::orbital_spread(omega0, pc);
    return TrapParams{omega0, l0, feq::dot_size(l0), orbital_gap};
}

MagneticEnvironment MagneticEnvironment::from_field(double b0, double gradient, double e_ac,
                                                    const PhysicalConstants& pc) {
    return MagneticEnvironment{b0, gradient, larmor(b0, pc), cyclotron(b0, pc), e_ac};
}

CouplingResult vacuum_voltage(double capacitance, double omega_r, const PhysicalConstants& pc) {
    require_positive(capacitance, "capacitance");
    require_positive(omega_r, "resonator frequency");
    return make(std::sqrt(pc.reduced_planck * omega_r / (2.0 * capacitance)), "V",
                Formula::VacuumVoltage, {{"capacitance_F", capacitance}, {"omega_r_rad_per_s", omega_r}});
}

CouplingResult charge_photon_g(double lever_arm, double v_rms, const PhysicalConstants& pc) {
    if (!(lever_arm >= 0.0 && lever_arm <= 1.0))
        throw ValidationError("charge_photon_g: lever arm must lie in [0, 1]");
    if (!(v_rms >= 0.0)) throw ValidationError("charge_photon_g: v_rms must be non-negative");
    return make(pc.elementary_charge * lever_arm * v_rms / pc.reduced_planck, "rad/s",
                Formula::ChargePhoton, {{"lever_arm", lever_arm}, {"v_rms_V", v_rms}});
}

CouplingResult charge_photon_g(const ResonatorElectrical& resonator, const PhysicalConstants& pc) {
    resonator.validate();
    const auto v = vacuum_voltage(resonator.capacitance, resonator.omega_r, pc);
    return charge_photon_g(resonator.lever_arm, v.value, pc);
}

CouplingResult edsr_field(double gradient, double e_ac, double orbital_spread, double omega0,
                          double omega_l, const PhysicalConstants& pc) {
    require_positive(orbital_spread, "orbital spread");
    require_positive(omega0, "orbital frequency");
    return make(edsr_core(gradient, e_ac, orbital_spread, omega0, omega_l, pc), "T",
                Formula::EdsrField,
                {{"gradient_T_per_m", gradient},
                 {"e_ac_V_per_m", e_ac},
                 {"orbital_spread_m", orbital_spread},
                 {"omega0_rad_per_s", omega0},
                 {"omega_l_rad_per_s", omega_l}});
}

double landau_dressed_frequency(double omega0, double omega_c) {
    return omega0 * std::sqrt(1.0 + omega_c * omega_c / (4.0 * omega0 * omega0));
}

CouplingResult edsr_field_landau(double gradient, double e_ac, double orbital_spread,
                                 double omega0, double omega_l, double omega_c,
                                 const PhysicalConstants& pc) {
    require_positive(orbital_spread, "orbital spread");
    require_positive(omega0, "orbital frequency");
    if (!(omega_c >= 0.0)) throw ValidationError("cyclotron frequency must be non-negative");
    const double dressed = landau_dressed_frequency(omega0, omega_c);
    return make(edsr_core(gradient, e_ac, orbital_spread, dressed, omega_l / 2.0, pc), "T",
                Formula::EdsrFieldLandau,
                {{"gradient_T_per_m", gradient},
                 {"e_ac_V_per_m", e_ac},
                 {"orbital_spread_m", orbital_spread},
                 {"omega0_rad_per_s", omega0},
                 {"omega_l_rad_per_s", omega_l},
                 {"omega_c_rad_per_s", omega_c}});
}

double spin_orbit_detuning(double orbital_gap, double omega_l, const PhysicalConstants& pc) {
    return orbital_gap - pc.reduced_planck * omega_l;
}

SpinPhotonResult dqd_spin_photon(double gradient, double g_c, double interdot, double detuning,
                                 const PhysicalConstants& pc) {
    if (std::abs(detuning) == 0.0 || !std::isfinite(detuning))
        throw SingularityError("dqd_spin_photon: zero spin-orbit detuning");
    const double field = gradient * (pc.reduced_planck * g_c) * interdot / (4.0 * detuning);
    std::vector<std::pair<std::string, double>> inputs{{"gradient_T_per_m", gradient},
                                                       {"g_c_rad_per_s", g_c},
                                                       {"interdot_m", interdot},
                                                       {"detuning_J", detuning}};
    auto b = make(field, "T", Formula::DqdSpinPhotonField, inputs);
    auto g = make(pc.g_factor * pc.bohr_magneton * field / pc.reduced_planck, "rad/s",
                  Formula::DqdSpinPhoton, std::move(inputs));
    return {std::move(b), std::move(g)};
}

CouplingResult spin_decoherence_from_charge(double gradient, double interdot, double detuning,
                                            double gamma_c, const PhysicalConstants& pc) {
    if (std::abs(detuning) == 0.0 || !std::isfinite(detuning))
        throw SingularityError("spin_decoherence_from_charge: zero spin-orbit detuning");
    if (!(gamma_c >= 0.0)) throw ValidationError("charge decoherence rate must be non-negative");
    const double mixing_energy = pc.g_factor * pc.bohr_magneton * gradient * interdot / 2.0;
    const double ratio = mixing_energy / detuning;
    auto result = make(ratio * ratio * gamma_c, "rad/s", Formula::SpinDecoherenceFromCharge,
                       {{"gradient_T_per_m", gradient},
                        {"interdot_m", interdot},
                        {"detuning_J", detuning},
                        {"gamma_c_rad_per_s", gamma_c}});
    result.within_validity = std::abs(ratio) <= kSpinMixingValidityLimit;
    return result;
}

CouplingResult dipole_dipole_coupling(double dipole_length, double separation,
                                      const PhysicalConstants& pc) {
    require_positive(separation, "separation");
    if (!(dipole_length >= 0.0)) throw ValidationError("dipole length must be non-negative");
    if (!(separation > 10.0 * dipole_length))
        throw ValidationError("dipole_dipole_coupling: point-dipole limit requires r > 10 d");
    const double moment = pc.elementary_charge * dipole_length;
    const double value = moment * moment /
                         (4.0 * std::numbers::pi * pc.vacuum_permittivity * separation * separation *
                          separation * pc.reduced_planck);
    return make(value, "rad/s", Formula::DipoleDipole,
                {{"dipole_length_m", dipole_length}, {"separation_m", separation}});
}

double larmor(double b0, const PhysicalConstants& pc) {
    require_positive(b0, "magnetic field");
    return pc.g_factor * pc.bohr_magneton * b0 / pc.reduced_planck;
}

double cyclotron(double b0, const PhysicalConstants& pc) {
    require_positive(b0, "magnetic field");
    return pc.elementary_charge * b0 / pc.electron_mass;
}

double orbital_spread(double omega0, const PhysicalConstants& pc) {
    require_positive(omega0, "orbital frequency");
    return std::sqrt(pc.reduced_planck / (pc.electron_mass * omega0));
}

double dot_size(double orbital_spread) {
    require_positive(orbital_spread, "orbital spread");
    return orbital_spread / std::sqrt(2.0);
}

}  // namespace feq
