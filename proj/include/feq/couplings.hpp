#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "feq/constants.hpp"

namespace feq {

struct ResonatorElectrical {
    double capacitance;  // F
    double omega_r;      // rad/s
    double lever_arm;    // alpha, 0 < alpha <= 1
    double kappa;        // rad/s

    void validate() const;
};

struct TrapParams {
    double omega0;          // rad/s
    double orbital_spread;  // l0, m
    double dot_size;        // d, m
    double orbital_gap;     // 2t, J (DQD-like traps)

    /// Harmonic trap with l0 = sqrt(hbar/m_e omega0) and d = l0/sqrt(2).
    static TrapParams harmonic(double omega0, double orbital_gap = 0.0,
                               const PhysicalConstants& pc = PhysicalConstants::si());
};

struct MagneticEnvironment {
    double b0;        // T
    double gradient;  // T/m
    double omega_l;   // rad/s
    double omega_c;   // rad/s
    double e_ac;      // V/m

    /// Larmor and cyclotron frequencies derived from b0 (field normal to the plane).
    static MagneticEnvironment from_field(double b0, double gradient, double e_ac,
                                          const PhysicalConstants& pc = PhysicalConstants::si());
};

enum class Formula {
    VacuumVoltage,
    ChargePhoton,
    EdsrField,
    EdsrFieldLandau,
    DqdSpinPhotonField,
    DqdSpinPhoton,
    SpinDecoherenceFromCharge,
    DipoleDipole,
};

std::string_view to_string(Formula f) noexcept;

struct CouplingResult {
    double value = 0.0;
    std::string unit;  // "V", "rad/s", "T"
    Formula formula{};
    std::vector<std::pair<std::string, double>> inputs;  // SI echo
    /// False when a perturbative validity condition is not met.
    bool within_validity = true;

    /// value / 2 pi for rate-valued results.
    [[nodiscard]] double hz() const noexcept { return hz_from_angular(value); }
};

/// Zero-point rms voltage sqrt(hbar omega_r / 2C).
CouplingResult vacuum_voltage(double capacitance, double omega_r,
                              const PhysicalConstants& pc = PhysicalConstants::si());

/// g_c = e alpha v_rms / hbar.
CouplingResult charge_photon_g(double lever_arm, double v_rms,
                               const PhysicalConstants& pc = PhysicalConstants::si());

/// Charge-photon coupling of a resonator: vacuum_voltage -> charge_photon_g.
CouplingResult charge_photon_g(const ResonatorElectrical& resonator,
                               const PhysicalConstants& pc = PhysicalConstants::si());

/// Effective AC field of gradient-driven EDSR in a harmonic trap:
///   B_AC = gradient e E_AC l0^2 omega0 / (2 hbar (omega0^2 - omega_L^2)).
/// Sign is kept. Throws SingularityError within 1e-6 (relative) of the pole.
CouplingResult edsr_field(double gradient, double e_ac, double orbital_spread, double omega0,
                          double omega_l, const PhysicalConstants& pc = PhysicalConstants::si());

/// Landau-level corrected variant for a field normal to the plane:
/// omega0 -> omega0 sqrt(1 + omega_c^2 / 4 omega0^2), omega_L -> omega_L / 2.
CouplingResult edsr_field_landau(double gradient, double e_ac, double orbital_spread,
                                 double omega0, double omega_l, double omega_c,
                                 const PhysicalConstants& pc = PhysicalConstants::si());

/// omega0 sqrt(1 + omega_c^2 / (4 omega0^2))
double landau_dressed_frequency(double omega0, double omega_c);

struct SpinPhotonResult {
    CouplingResult field;     // B_sp, T
    CouplingResult coupling;  // g_s, rad/s
};

/// Double-dot spin-photon coupling through a field gradient:
///   B_sp = gradient (hbar g_c) d / (4 detuning),  g_s = g mu_B B_sp / hbar,
/// with detuning = 2t - hbar omega_L (J, signed).
SpinPhotonResult dqd_spin_photon(double gradient, double g_c, double interdot,
                                 double detuning,
                                 const PhysicalConstants& pc = PhysicalConstants::si());

/// 2t - hbar omega_L
double spin_orbit_detuning(double orbital_gap, double omega_l,
                           const PhysicalConstants& pc = PhysicalConstants::si());

/// Spin dephasing inherited from charge noise,
///   (g mu_B gradient d / (2 detuning))^2 gamma_c.
/// within_validity is false when g mu_B gradient d / 2 exceeds a quarter of
/// |detuning| (the perturbative mixing regime no longer applies).
CouplingResult spin_decoherence_from_charge(double gradient, double interdot, double detuning,
                                            double gamma_c,
                                            const PhysicalConstants& pc = PhysicalConstants::si());

inline constexpr double kSpinMixingValidityLimit = 0.25;

/// Point-dipole Coulomb coupling J = (e d)^2 / (4 pi eps0 r^3 hbar). Requires r > 10 d.
CouplingResult dipole_dipole_coupling(double dipole_length, double separation,
                                      const PhysicalConstants& pc = PhysicalConstants::si());

// Kinematic helpers.
double larmor(double b0, const PhysicalConstants& pc = PhysicalConstants::si());
double cyclotron(double b0, const PhysicalConstants& pc = PhysicalConstants::si());
double orbital_spread(double omega0, const PhysicalConstants& pc = PhysicalConstants::si());
double dot_size(double orbital_spread);

}  // namespace feq
