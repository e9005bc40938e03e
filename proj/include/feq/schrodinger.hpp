#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "feq/constants.hpp"
#include "feq/errors.hpp"
#include "feq/materials.hpp"

namespace feq {

/// Uniform grid along the surface normal, z_i = z_min + i * step.
struct Grid1D {
    double z_min = -20.0 * units::nm;
    double z_max = 100.0 * units::nm;
    double step = 0.1 * units::nm;

    /// round((z_max - z_min)/step) + 1
    [[nodiscard]] std::size_t points() const;
    /// Requires z_min < 0 < z_max, step > 0 and at least 100 points.
    void validate() const;
    /// Grid coordinates; points within 1e-6 step of the surface are snapped to 0.
    [[nodiscard]] std::vector<double> coordinates() const;
};

/// Sampled vertical potential: U_b for z <= 0, image attraction plus Stark
/// term e z E_perp for z > 0. Positive E_perp presses toward the surface.
struct PotentialSpec {
    SubstrateParams substrate;
    double e_perp = 0.0;  // V/m
    Grid1D grid;
    std::vector<double> z;       // m
    std::vector<double> values;  // J
};

inline constexpr double kMaxFieldMagnitude = 1e7;  // V/m

PotentialSpec build_potential(const SubstrateParams& substrate, double e_perp,
                              const Grid1D& grid = {},
                              const PhysicalConstants& pc = PhysicalConstants::si());

/// Closed-form V(z) at one point (no grid).
double potential_at(const SubstrateParams& substrate, double e_perp, double z,
                    const PhysicalConstants& pc = PhysicalConstants::si());

/// Lowest Rydberg levels. Level numbers are 1-based (n = 1 is the ground state).
class RydbergSpectrum {
public:
    RydbergSpectrum(Grid1D grid, std::vector<double> z, std::vector<double> energies,
                    std::vector<std::vector<double>> wavefunctions, double planck);

    [[nodiscard]] std::size_t levels() const noexcept { return energies_.size(); }
    [[nodiscard]] const Grid1D& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const double> z() const noexcept { return z_; }

    [[nodiscard]] double energy(std::size_t n) const;         // J
    [[nodiscard]] std::span<const double> wavefunction(std::size_t n) const;  // 1/sqrt(m)
    [[nodiscard]] double mean_position(std::size_t n) const;  // <z>_n, m
    [[nodiscard]] double z_element(std::size_t m, std::size_t n) const;  // <m|z|n>, m
    /// (E_n - E_m)/h, Hz.
    [[nodiscard]] double transition_frequency(std::size_t m, std::size_t n) const;
    /// Probability of finding level n at z <= 0.
    [[nodiscard]] double leakage(std::size_t n) const;
    /// <psi_m|psi_n> on the grid (sum psi_m psi_n h).
    [[nodiscard]] double overlap(std::size_t m, std::size_t n) const;

    /// Rydberg dipole length d = <z>_2 - <z>_1.
    [[nodiscard]] double dipole_length() const { return mean_position(2) - mean_position(1); }
    [[nodiscard]] double f12() const { return transition_frequency(1, 2); }

private:
    void check_level(std::size_t n) const;

    Grid1D grid_;
    std::vector<double> z_;
    std::vector<double> energies_;
    std::vector<std::vector<double>> wavefunctions_;
    std::vector<double> mean_z_;
    std::vector<double> z_matrix_;  // k x k, row-major
    double planck_;
};

/// Finite-difference eigensolve with psi = 0 at both grid ends. Returns the k
/// lowest levels. Requires 2 <= k <= N/10.
RydbergSpectrum solve(const PotentialSpec& potential, std::size_t k,
                      const PhysicalConstants& pc = PhysicalConstants::si());

/// Convenience: build_potential + solve.
RydbergSpectrum solve(const SubstrateParams& substrate, double e_perp, std::size_t k,
                      const Grid1D& grid = {},
                      const PhysicalConstants& pc = PhysicalConstants::si());

struct StarkPoint {
    double e_perp;      // V/m
    double f12;         // Hz
    double mean_z1;     // m
    double mean_z2;     // m
    double dipole;      // m
};

struct StarkSweep {
    std::vector<StarkPoint> points;
    /// +1 if f12 strictly increases along the list, -1 if strictly decreasing,
    /// 0 otherwise (or a single point).
    int monotonic_sign = 0;
};

/// Solver failure inside a sweep, tagged with the field value that failed.
class SweepError : public NumericalError {
public:
    SweepError(const std::string& what, double e_perp) : NumericalError(what), e_perp_(e_perp) {}
    [[nodiscard]] double e_perp() const noexcept { return e_perp_; }

private:
    double e_perp_;
};

/// One solve per field value; evaluated on `threads` workers, results in
/// input order.
StarkSweep stark_sweep(const SubstrateParams& substrate, std::span<const double> e_perp_list,
                       std::size_t k = 3, const Grid1D& grid = {}, unsigned threads = 1,
                       const PhysicalConstants& pc = PhysicalConstants::si());

/// |dE_n/dE_perp - e<z>_n| / (e<z>_n), derivative by central difference
/// with a 100 V/m step.
double hellmann_feynman_residual(const SubstrateParams& substrate, double e_perp, std::size_t n,
                                 const Grid1D& grid = {},
                                 const PhysicalConstants& pc = PhysicalConstants::si());

/// Bisection on z0 in [0, 1 nm] until |f12(z0) - target| < 10 MHz (E_perp = 0).
/// Throws BracketError if the target is not reachable in that interval or
/// lies outside +-30% of the f12 obtained with the substrate's own z0.
double calibrate_z0(const SubstrateParams& base, double target_f12, const Grid1D& grid = {},
                    const PhysicalConstants& pc = PhysicalConstants::si());

/// Classical escape classification under a pulling field (E_perp < 0).
///
/// A level counts as escaped at field E when its zero-field energy, shifted
/// to first order by -e<z>_n|E|, exceeds the top of the barrier formed by the
/// image attraction and the pulling field. Once a level has escaped at some
/// |E| it stays escaped for every stronger field (see escape_threshold).
struct EscapeWindow {
    double e_low;   // V/m, most negative field of the window
    double e_high;  // V/m, least negative field of the window
};

/// Barrier top V(z*) for E_perp < 0, with z* = sqrt(e Lambda /(16 pi eps0 |E|)) - z0.
double escape_barrier_top(const SubstrateParams& substrate, double e_perp,
                          const PhysicalConstants& pc = PhysicalConstants::si());

/// Smallest |E_perp| (V/m) at which the first-order criterion fires for a
/// level with zero-field energy `energy` and mean height `mean_z`;
/// nullopt if it never does.
std::optional<double> escape_threshold(const SubstrateParams& substrate, double energy,
                                       double mean_z,
                                       const PhysicalConstants& pc = PhysicalConstants::si());

/// Sub-range of [range_low, range_high] (both < 0) in which level n_escape is
/// escaped while n_bound is still bound; nullopt if empty.
std::optional<EscapeWindow> escape_window(const SubstrateParams& substrate, std::size_t n_bound,
                                          std::size_t n_escape, double range_low,
                                          double range_high, const Grid1D& grid = {},
                                          const PhysicalConstants& pc = PhysicalConstants::si());

/// Escape flag of level n at field e_perp (< 0), from a zero-field spectrum.
bool is_escaped(const SubstrateParams& substrate, const RydbergSpectrum& zero_field,
                std::size_t n, double e_perp,
                const PhysicalConstants& pc = PhysicalConstants::si());

}  // namespace feq
