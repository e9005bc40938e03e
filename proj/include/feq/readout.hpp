#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "feq/constants.hpp"
#include "feq/couplings.hpp"

namespace feq {

enum class RelaxationBasis {
    Bare,     // decay toward the lower s_z state |1>
    Dressed,  // decay toward the ground state of the static Hamiltonian
};

/// Two lowest Rydberg levels under a microwave drive and a probe modulation:
///   H(t) = ((epsilon + delta_epsilon cos(omega_m t)) / 2) s_z + t s_x,
/// with s_z = diag(-1, +1) in the (|1>, |2>) basis.
struct TwoLevelReadoutModel {
    double detuning;       // epsilon, J
    double drive;          // t, J
    double probe_amplitude;  // delta_epsilon, J
    double omega_m;        // rad/s
    double gamma1;         // rad/s
    double gamma_phi;      // rad/s
    RelaxationBasis basis = RelaxationBasis::Dressed;

    void validate() const;
    /// sqrt(epsilon^2 + 4 t^2), J
    [[nodiscard]] double gap() const;
    /// delta_epsilon <= gap / 100
    [[nodiscard]] bool linear_response() const;
};

struct RotatedFrameParams {
    double gap;             // nu, J
    double angle;           // theta = atan(epsilon / 2t), rad
    double g_eff;           // -(t / nu) g_c, rad/s
    double qubit_detuning;  // nu/hbar - omega_m, rad/s
    double resonator_detuning;  // omega_r - omega_m, rad/s
};

RotatedFrameParams rotate_basis(double detuning, double drive, double g_c, double omega_m = 0.0,
                                double omega_r = 0.0,
                                const PhysicalConstants& pc = PhysicalConstants::si());

struct IntegratorOptions {
    std::size_t min_steps_per_period = 256;
    /// 0 selects max(min_steps_per_period, ceil(rate_max T / 0.1)).
    std::size_t steps_per_period = 0;
    double tolerance = 1e-8;  // max |<s_z>| change between successive periods
    std::size_t max_periods = 1000000;
    /// Seed the march with the fixed point of the one-period propagator.
    bool floquet_seed = true;
};

inline constexpr double kMaxRateTimesStep = 0.1;

struct SteadyStateTrajectory {
    std::vector<double> times;  // s, one probe period, t_j = j T / M
    std::vector<double> sz;     // <s_z>(t_j)
    std::size_t steps_per_period = 0;
    std::size_t periods = 0;    // periods marched after seeding
    double last_change = 0.0;
    bool seeded = false;
    // Density-matrix diagnostics over every marched step.
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 1.0;
    double max_eigenvalue = 0.0;
};

SteadyStateTrajectory steady_state_sz(const TwoLevelReadoutModel& model,
                                      const IntegratorOptions& options = {},
                                      const PhysicalConstants& pc = PhysicalConstants::si());

/// conj((hbar / delta_epsilon) (1/T) integral_0^T e^{i omega_m t} <s_z> dt), s.
std::complex<double> susceptibility(const SteadyStateTrajectory& trajectory,
                                    const TwoLevelReadoutModel& model,
                                    const PhysicalConstants& pc = PhysicalConstants::si());

std::complex<double> susceptibility(const TwoLevelReadoutModel& model,
                                    const IntegratorOptions& options = {},
                                    const PhysicalConstants& pc = PhysicalConstants::si());

struct Transmission {
    std::complex<double> value;
    double magnitude;
    double phase;  // rad
};

/// t_c = i kappa / (delta0 + g_c^2 chi - i kappa / 2).
Transmission transmission(std::complex<double> chi, double g_c, double delta0, double kappa);

struct ReadoutResponse {
    std::complex<double> chi;       // s
    std::complex<double> t_c;
    std::complex<double> t_c_bare;  // chi = 0
    std::complex<double> delta_t_c;
    double delta_c;     // F
    double snr;
    double s_c;         // F/sqrt(Hz), NaN when delta_t_c = 0
    double g_c;         // rad/s
    double delta0;      // rad/s
    double n_bar;
    double n_noise;
    double t_int;       // s
};

/// Resonator detuning delta0 = omega_r - omega_m.
ReadoutResponse readout_figures(std::complex<double> chi, const TwoLevelReadoutModel& model,
                                const ResonatorElectrical& resonator, double n_bar,
                                double n_noise, double t_int,
                                const PhysicalConstants& pc = PhysicalConstants::si());

ReadoutResponse readout_figures(const TwoLevelReadoutModel& model,
                                const ResonatorElectrical& resonator, double n_bar,
                                double n_noise, double t_int,
                                const IntegratorOptions& options = {},
                                const PhysicalConstants& pc = PhysicalConstants::si());

}  // namespace feq
