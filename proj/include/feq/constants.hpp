#pragma once

#include <numbers>

namespace feq {

/// Physical constants in a coherent unit system (SI unless rescaled).
///
/// Every formula in the library takes its constants from an instance of this
/// struct, so the same code can be exercised in an alternate coherent unit
/// set (the unit-homogeneity tests do exactly that).
struct PhysicalConstants {
    double elementary_charge;      // C
    double planck;                 // J s
    double reduced_planck;         // J s
    double electron_mass;          // kg
    double vacuum_permittivity;    // F/m
    double bohr_magneton;          // J/T
    double g_factor;               // |g| of the free electron
    double rydberg_frequency;      // R_inf / h, Hz

    /// CODATA 2018 values. R_inf/h is derived as m_e e^4 / (8 eps0^2 h^3).
    static const PhysicalConstants& si();

    /// Builds a consistent set from the independent constants; hbar and the
    /// Rydberg frequency are derived.
    static PhysicalConstants from_base(double e, double h, double m_e, double eps0,
                                       double mu_b, double g);

    /// e^2 / (4 pi eps0), J m.
    [[nodiscard]] double coulomb_constant_e2() const noexcept {
        return elementary_charge * elementary_charge /
               (4.0 * std::numbers::pi * vacuum_permittivity);
    }
};

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Human-unit conversions. Rates are stored as angular frequencies.
constexpr double angular_from_hz(double f) noexcept { return kTwoPi * f; }
constexpr double hz_from_angular(double omega) noexcept { return omega / kTwoPi; }

namespace units {
inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double pF = 1e-12;
inline constexpr double kHz = 1e3;
inline constexpr double MHz = 1e6;
inline constexpr double GHz = 1e9;
inline constexpr double mT_per_nm = 1e-3 / 1e-9;  // T/m
inline constexpr double eV = 1.602176634e-19;      // J
}  // namespace units

}  // namespace feq
