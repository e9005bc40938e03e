#include "feq/schrodinger.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "feq/kernels.hpp"
#include "feq/parallel.hpp"
#include "feq/tridiagonal.hpp"

namespace feq {

namespace {

constexpr double kHellmannFeynmanStep = 100.0;        // V/m
constexpr double kCalibrationTolerance = 10.0e6;      // Hz
constexpr double kCalibrationMaxOffset = 1.0 * units::nm;

kernels::ImagePotentialCoeffs potential_coeffs(const SubstrateParams& s, double e_perp,
                                               const PhysicalConstants& pc) {
    return {pc.coulomb_constant_e2() * s.image_factor / 4.0, s.offset,
            pc.elementary_charge * e_perp, s.barrier_height};
}

SubstrateParams with_offset(const SubstrateParams& base, double offset) {
    SubstrateParams s = base;
    s.offset = offset;
    return s;
}

}  // namespace

// Grid1D ---------------------------------------------------------------------

std::size_t Grid1D::points() const {
    const double span = (z_max - z_min) / step;
    if (!std::isfinite(span) || span < 0.0) return 0;
    return static_cast<std::size_t>(std::llround(span)) + 1;
}

void Grid1D::validate() const {
    if (!(z_min < 0.0 && z_max > 0.0))
        throw ValidationError("grid: requires z_min < 0 < z_max");
    if (!(step > 0.0)) throw ValidationError("grid: step must be positive");
    if (points() < 100) throw ValidationError("grid: fewer than 100 points");
}

std::vector<double> Grid1D::coordinates() const {
    const std::size_t n = points();
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = z_min + static_cast<double>(i) * step;
        z[i] = std::abs(zi) < 1e-6 * step ? 0.0 : zi;
    }
    return z;
}

// Potential ------------------------------------------------------------------

double potential_at(const SubstrateParams& substrate, double e_perp, double z,
                    const PhysicalConstants& pc) {
    const auto c = potential_coeffs(substrate, e_perp, pc);
    if (z <= 0.0) return c.barrier;
    return c.field * z - c.coulomb / (z + c.offset);
}

PotentialSpec build_potential(const SubstrateParams& substrate, double e_perp, const Grid1D& grid,
                              const PhysicalConstants& pc) {
    substrate.validate();
    grid.validate();
    if (!(std::abs(e_perp) < kMaxFieldMagnitude))
        throw ValidationError("build_potential: |E_perp| must be below 1e7 V/m");
    PotentialSpec spec;
    spec.substrate = substrate;
    spec.e_perp = e_perp;
    spec.grid = grid;
    spec.z = grid.coordinates();
    spec.values.resize(spec.z.size());
    kernels::image_potential(spec.z, spec.values, potential_coeffs(substrate, e_perp, pc));
    return spec;
}

// RydbergSpectrum ------------------------------------------------------------

RydbergSpectrum::RydbergSpectrum(Grid1D grid, std::vector<double> z, std::vector<double> energies,
                                 std::vector<std::vector<double>> wavefunctions, double planck)
    : grid_(grid),
      z_(std::move(z)),
      energies_(std::move(energies)),
      wavefunctions_(std::move(wavefunctions)),
      planck_(planck) {
    const std::size_t k = energies_.size();
    const double h = grid_.step;
    mean_z_.resize(k);
    z_matrix_.assign(k * k, 0.0);
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t n = m; n < k; ++n) {
            const double element = kernels::weighted_dot(wavefunctions_[m], z_, wavefunctions_[n]) * h;
            z_matrix_[m * k + n] = element;
            z_matrix_[n * k + m] = element;
        }
        mean_z_[m] = z_matrix_[m * k + m];
    }
}

void RydbergSpectrum::check_level(std::size_t n) const {
    if (n < 1 || n > energies_.size())
        throw ValidationError("RydbergSpectrum: level " + std::to_string(n) + " out of range");
}

double RydbergSpectrum::energy(std::size_t n) const {
    check_level(n);
    return energies_[n - 1];
}

std::span<const double> RydbergSpectrum::wavefunction(std::size_t n) const {
    check_level(n);
    return wavefunctions_[n - 1];
}

double RydbergSpectrum::mean_position(std::size_t n) const {
    check_level(n);
    return mean_z_[n - 1];
}

double RydbergSpectrum::z_element(std::size_t m, std::size_t n) const {
    check_level(m);
    check_level(n);
    return z_matrix_[(m - 1) * energies_.size() + (n - 1)];
}

double RydbergSpectrum::transition_frequency(std::size_t m, std::size_t n) const {
    return (energy(n) - energy(m)) / planck_;
}

double RydbergSpectrum::leakage(std::size_t n) const {
    const auto psi = wavefunction(n);
    const auto inside = static_cast<std::size_t>(
        std::count_if(z_.begin(), z_.end(), [](double z) { return z <= 0.0; }));
    const auto head = psi.first(inside);
    return kernels::dot(head, head) * grid_.step;
}

double RydbergSpectrum::overlap(std::size_t m, std::size_t n) const {
    return kernels::dot(wavefunction(m), wavefunction(n)) * grid_.step;
}

// Solver ---------------------------------------------------------------------

RydbergSpectrum solve(const PotentialSpec& potential, std::size_t k, const PhysicalConstants& pc) {
    potential.grid.validate();
    const std::size_t n_points = potential.z.size();
    if (potential.values.size() != n_points || n_points != potential.grid.points())
        throw ValidationError("solve: potential samples do not match the grid");
    if (k < 2 || k > n_points / 10)
        throw ValidationError("solve: k must satisfy 2 <= k <= N/10");

    // H = kinetic * T with T_ii = 2 + V_i/kinetic, T_i,i+1 = -1 on the
    // interior points; psi vanishes at both grid ends.
    const double h = potential.grid.step;
    const double kinetic =
        pc.reduced_planck * pc.reduced_planck / (2.0 * pc.electron_mass * h * h);
    const std::size_t interior = n_points - 2;
    std::vector<double> diag(interior);
    for (std::size_t i = 0; i < interior; ++i) diag[i] = 2.0 + potential.values[i + 1] / kinetic;
    const std::vector<double> offdiag(interior - 1, -1.0);

    const auto pairs = lowest_eigenpairs(diag, offdiag, k);

    std::vector<double> energies(k);
    std::vector<std::vector<double>> psi(k, std::vector<double>(n_points, 0.0));
    const double scale = 1.0 / std::sqrt(h);
    for (std::size_t j = 0; j < k; ++j) {
        energies[j] = kinetic * pairs.values[j];
        for (std::size_t i = 0; i < interior; ++i) psi[j][i + 1] = pairs.vectors[j][i] * scale;
    }
    return RydbergSpectrum(potential.grid, potential.z, std::move(energies), std::move(psi),
                           pc.planck);
}

RydbergSpectrum solve(const SubstrateParams& substrate, double e_perp, std::size_t k,
                      const Grid1D& grid, const PhysicalConstants& pc) {
    return solve(build_potential(substrate, e_perp, grid, pc), k, pc);
}

StarkSweep stark_sweep(const SubstrateParams& substrate, std::span<const double> e_perp_list,
                       std::size_t k, const Grid1D& grid, unsigned threads,
                       const PhysicalConstants& pc) {
    if (e_perp_list.empty()) throw ValidationError("stark_sweep: empty field list");
    StarkSweep sweep;
    sweep.points = parallel_map<StarkPoint>(e_perp_list.size(), threads, [&](std::size_t i) {
        const double field = e_perp_list[i];
        try {
            const auto spectrum = solve(substrate, field, std::max<std::size_t>(k, 2), grid, pc);
            return StarkPoint{field, spectrum.f12(), spectrum.mean_position(1),
                              spectrum.mean_position(2), spectrum.dipole_length()};
        } catch (const ValidationError&) {
            throw;
        } catch (const std::exception& err) {
            throw SweepError("stark_sweep: solve failed at E_perp = " + std::to_string(field) +
                                 " V/m: " + err.what(),
                             field);
        }
    });
    if (sweep.points.size() > 1) {
        bool increasing = true;
        bool decreasing = true;
        for (std::size_t i = 1; i < sweep.points.size(); ++i) {
            const double df = sweep.points[i].f12 - sweep.points[i - 1].f12;
            increasing = increasing && df > 0.0;
            decreasing = decreasing && df < 0.0;
        }
        sweep.monotonic_sign = increasing ? 1 : (decreasing ? -1 : 0);
    }
    return sweep;
}

double hellmann_feynman_residual(const SubstrateParams& substrate, double e_perp, std::size_t n,
                                 const Grid1D& grid, const PhysicalConstants& pc) {
    const std::size_t k = std::max<std::size_t>(n, 2);
    const auto centre = solve(substrate, e_perp, k, grid, pc);
    const auto above = solve(substrate, e_perp + kHellmannFeynmanStep, k, grid, pc);
    const auto below = solve(substrate, e_perp - kHellmannFeynmanStep, k, grid, pc);
    const double derivative = (above.energy(n) - below.energy(n)) / (2.0 * kHellmannFeynmanStep);
    const double expected = pc.elementary_charge * centre.mean_position(n);
    return std::abs(derivative - expected) / std::abs(expected);
}

double calibrate_z0(const SubstrateParams& base, double target_f12, const Grid1D& grid,
                    const PhysicalConstants& pc) {
    base.validate();
    auto f12_at = [&](double offset) { return solve(with_offset(base, offset), 0.0, 2, grid, pc).f12(); };

    // f12 falls monotonically as z0 softens the image attraction.
    const double f_upper = f12_at(0.0);
    const double f_lower = f12_at(kCalibrationMaxOffset);
    if (!(target_f12 <= f_upper && target_f12 >= f_lower))
        throw BracketError("calibrate_z0: target f12 = " + std::to_string(target_f12 / units::GHz) +
                           " GHz is outside the reachable range [" +
                           std::to_string(f_lower / units::GHz) + ", " +
                           std::to_string(f_upper / units::GHz) + "] GHz");
    const double uncalibrated = f12_at(base.offset);
    if (std::abs(target_f12 - uncalibrated) > 0.3 * uncalibrated)
        throw BracketError("calibrate_z0: target f12 is more than 30% away from the uncalibrated value");

    double lo = 0.0;
    double hi = kCalibrationMaxOffset;
    for (int iter = 0; iter < 100; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double f = f12_at(mid);
        if (std::abs(f - target_f12) < kCalibrationTolerance) return mid;
        if (f > target_f12)
            lo = mid;
        else
            hi = mid;
    }
    throw NumericalError("calibrate_z0: bisection did not reach the 10 MHz tolerance");
}

// Escape classification ------------------------------------------------------

double escape_barrier_top(const SubstrateParams& substrate, double e_perp,
                          const PhysicalConstants& pc) {
    if (!(e_perp < 0.0)) throw ValidationError("escape_barrier_top: requires E_perp < 0");
    const double coulomb = pc.coulomb_constant_e2() * substrate.image_factor / 4.0;
    const double pull = pc.elementary_charge * -e_perp;  // e|E|
    return -2.0 * std::sqrt(coulomb * pull) + pull * substrate.offset;
}

std::optional<double> escape_threshold(const SubstrateParams& substrate, double energy,
                                       double mean_z, const PhysicalConstants& pc) {
    // Escaped when E_n + 2 sqrt(c e x) - e (<z>_n + z0) x > 0 with x = |E|;
    // a quadratic in u = sqrt(x) whose smaller root is the onset.
    if (energy >= 0.0) return 0.0;
    const double e = pc.elementary_charge;
    const double coulomb = pc.coulomb_constant_e2() * substrate.image_factor / 4.0;
    const double lever = e * (mean_z + substrate.offset);
    const double b = std::sqrt(coulomb * e);
    const double disc = coulomb * e + lever * energy;
    if (disc < 0.0) return std::nullopt;
    const double u = (b - std::sqrt(disc)) / lever;
    return u * u;
}

bool is_escaped(const SubstrateParams& substrate, const RydbergSpectrum& zero_field, std::size_t n,
                double e_perp, const PhysicalConstants& pc) {
    if (!(e_perp < 0.0)) return false;
    const auto onset = escape_threshold(substrate, zero_field.energy(n), zero_field.mean_position(n), pc);
    return onset && -e_perp >= *onset;
}

std::optional<EscapeWindow> escape_window(const SubstrateParams& substrate, std::size_t n_bound,
                                          std::size_t n_escape, double range_low,
                                          double range_high, const Grid1D& grid,
                                          const PhysicalConstants& pc) {
    if (!(range_low < range_high)) throw ValidationError("escape_window: requires range_low < range_high");
    if (!(range_high < 0.0)) throw ValidationError("escape_window: range must be entirely negative");
    if (!(n_bound >= 1 && n_bound < n_escape))
        throw ValidationError("escape_window: requires 1 <= n_bound < n_escape");

    const auto spectrum = solve(substrate, 0.0, std::max<std::size_t>(n_escape, 2), grid, pc);
    const auto escape_onset =
        escape_threshold(substrate, spectrum.energy(n_escape), spectrum.mean_position(n_escape), pc);
    if (!escape_onset) return std::nullopt;
    const auto bound_onset =
        escape_threshold(substrate, spectrum.energy(n_bound), spectrum.mean_position(n_bound), pc);

    const double weakest = std::max(*escape_onset, -range_high);
    const double strongest = bound_onset ? std::min(*bound_onset, -range_low) : -range_low;
    if (!(weakest < strongest)) return std::nullopt;
    return EscapeWindow{-strongest, -weakest};
}

}  // namespace feq
