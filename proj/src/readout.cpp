#include "feq/readout.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "feq/errors.hpp"

namespace feq {

namespace {

using cplx = std::complex<double>;
// Row-major 2x2: [00, 01, 10, 11].
using Mat2 = std::array<cplx, 4>;

constexpr std::size_t kMaxStepsPerPeriod = 50000000;

Mat2 mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 adjoint(const Mat2& a) {
    return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

Mat2 axpy(const Mat2& y, double s, const Mat2& x) {
    return {y[0] + s * x[0], y[1] + s * x[1], y[2] + s * x[2], y[3] + s * x[3]};
}

Mat2 outer(const std::array<double, 2>& u, const std::array<double, 2>& v) {
    return {u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]};
}

struct Dissipator {
    std::array<Mat2, 2> jumps;
    std::array<Mat2, 2> jumps_dag;
    Mat2 anti{};  // sum L^dag L / 2
};

// Ground/excited vectors of the relaxation basis.
std::array<std::array<double, 2>, 2> relaxation_vectors(const TwoLevelReadoutModel& m) {
    if (m.basis == RelaxationBasis::Bare) return {{{1.0, 0.0}, {0.0, 1.0}}};
    const double eps = m.detuning;
    const double t = m.drive;
    const double nu = std::hypot(eps, 2.0 * t);
    std::array<double, 2> g = eps > 0.0 ? std::array<double, 2>{(eps + nu) / 2.0, -t}
                                        : std::array<double, 2>{t, (eps - nu) / 2.0};
    const double norm = std::hypot(g[0], g[1]);
    g = {g[0] / norm, g[1] / norm};
    return {g, {-g[1], g[0]}};
}

Dissipator make_dissipator(const TwoLevelReadoutModel& m) {
    const auto [g, e] = relaxation_vectors(m);
    Dissipator d;
    Mat2 lower = outer(g, e);
    Mat2 dephase = outer(e, e);
    const Mat2 gg = outer(g, g);
    for (std::size_t i = 0; i < 4; ++i) {
        lower[i] *= std::sqrt(m.gamma1);
        dephase[i] = (dephase[i] - gg[i]) * std::sqrt(m.gamma_phi / 2.0);
    }
    d.jumps = {lower, dephase};
    for (std::size_t k = 0; k < 2; ++k) {
        d.jumps_dag[k] = adjoint(d.jumps[k]);
        d.anti = axpy(d.anti, 0.5, mul(d.jumps_dag[k], d.jumps[k]));
    }
    return d;
}

struct Lindbladian {
    double hz0;   // epsilon / 2 hbar
    double hz1;   // delta_epsilon / 2 hbar
    double hx;    // t / hbar
    double omega;
    Dissipator diss;

    // d rho / dt at local time s within the period.
    Mat2 operator()(double s, const Mat2& rho) const {
        const double hz = hz0 + hz1 * std::cos(omega * s);
        // H = [[-hz, hx], [hx, hz]];  -i [H, rho]
        const Mat2 h{cplx(-hz), cplx(hx), cplx(hx), cplx(hz)};
        const Mat2 hr = mul(h, rho);
        const Mat2 rh = mul(rho, h);
        const cplx mi(0.0, -1.0);
        Mat2 out;
        for (std::size_t i = 0; i < 4; ++i) out[i] = mi * (hr[i] - rh[i]);
        for (std::size_t k = 0; k < 2; ++k) {
            const Mat2 lrl = mul(mul(diss.jumps[k], rho), diss.jumps_dag[k]);
            for (std::size_t i = 0; i < 4; ++i) out[i] += lrl[i];
        }
        const Mat2 ar = mul(diss.anti, rho);
        const Mat2 ra = mul(rho, diss.anti);
        for (std::size_t i = 0; i < 4; ++i) out[i] -= ar[i] + ra[i];
        return out;
    }
};

Mat2 rk4_step(const Lindbladian& f, double s, double dt, const Mat2& rho) {
    const Mat2 k1 = f(s, rho);
    const Mat2 k2 = f(s + dt / 2.0, axpy(rho, dt / 2.0, k1));
    const Mat2 k3 = f(s + dt / 2.0, axpy(rho, dt / 2.0, k2));
    const Mat2 k4 = f(s + dt, axpy(rho, dt, k3));
    Mat2 out;
    for (std::size_t i = 0; i < 4; ++i)
        out[i] = rho[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

double rate_max(const TwoLevelReadoutModel& m, const PhysicalConstants& pc) {
    const double nu_max = std::hypot(std::abs(m.detuning) + std::abs(m.probe_amplitude),
                                     2.0 * m.drive);
    return std::max({m.omega_m, nu_max / pc.reduced_planck, m.gamma1, m.gamma_phi});
}

std::size_t resolve_steps(const TwoLevelReadoutModel& m, const IntegratorOptions& o,
                          const PhysicalConstants& pc) {
    const double period = kTwoPi / m.omega_m;
    const double rate = rate_max(m, pc);
    std::size_t steps = o.steps_per_period;
    if (steps == 0) {
        const double needed = std::ceil(rate * period / kMaxRateTimesStep);
        if (!(needed <= static_cast<double>(kMaxStepsPerPeriod)))
            throw ValidationError("steady_state_sz: probe period too long for the fastest rate");
        steps = std::max(o.min_steps_per_period, static_cast<std::size_t>(needed));
    }
    if (steps < o.min_steps_per_period)
        throw ValidationError("steady_state_sz: fewer steps per period than the minimum");
    if (rate * period / static_cast<double>(steps) >= kMaxRateTimesStep)
        throw ValidationError("steady_state_sz: step too coarse for the fastest rate");
    return steps;
}

// Fixed point of the one-period map with unit trace; false if singular.
bool floquet_fixed_point(const Lindbladian& f, std::size_t steps, double dt, Mat2& rho) {
    std::array<Mat2, 4> cols{};
    for (std::size_t j = 0; j < 4; ++j) cols[j][j] = 1.0;
    for (std::size_t s = 0; s < steps; ++s) {
        const double local = static_cast<double>(s) * dt;
        for (auto& c : cols) c = rk4_step(f, local, dt, c);
    }
    std::array<std::array<cplx, 5>, 4> a{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a[i][j] = cols[j][i] - (i == j ? 1.0 : 0.0);
    a[0] = {1.0, 0.0, 0.0, 1.0, 1.0};

    double scale = 0.0;
    for (const auto& row : a)
        for (std::size_t j = 0; j < 4; ++j) scale = std::max(scale, std::abs(row[j]));
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < 4; ++i)
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        if (std::abs(a[p][k]) < 1e-12 * scale) return false;
        std::swap(a[p], a[k]);
        for (std::size_t i = k + 1; i < 4; ++i) {
            const cplx factor = a[i][k] / a[k][k];
            for (std::size_t j = k; j < 5; ++j) a[i][j] -= factor * a[k][j];
        }
    }
    for (std::size_t k = 4; k-- > 0;) {
        cplx acc = a[k][4];
        for (std::size_t j = k + 1; j < 4; ++j) acc -= a[k][j] * rho[j];
        rho[k] = acc / a[k][k];
    }
    return std::all_of(rho.begin(), rho.end(),
                       [](cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

void record_diagnostics(const Mat2& rho, SteadyStateTrajectory& out) {
    const cplx tr = rho[0] + rho[3];
    out.max_trace_error = std::max(out.max_trace_error, std::abs(tr - 1.0));
    out.max_hermiticity_error =
        std::max({out.max_hermiticity_error, std::abs(rho[1] - std::conj(rho[2])),
                  std::abs(rho[0].imag()), std::abs(rho[3].imag())});
    const double a = rho[0].real();
    const double d = rho[3].real();
    const cplx off = (rho[1] + std::conj(rho[2])) / 2.0;
    const double mean = (a + d) / 2.0;
    const double radius = std::hypot((a - d) / 2.0, std::abs(off));
    out.min_eigenvalue = std::min(out.min_eigenvalue, mean - radius);
    out.max_eigenvalue = std::max(out.max_eigenvalue, mean + radius);
}

}  // namespace

void TwoLevelReadoutModel::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(detuning) || !finite(drive) || !finite(probe_amplitude))
        throw ValidationError("readout model: energies must be finite");
    if (!(omega_m > 0.0) || !finite(omega_m))
        throw ValidationError("readout model: probe frequency must be positive");
    if (!(gamma1 >= 0.0) || !(gamma_phi >= 0.0) || !finite(gamma1) || !finite(gamma_phi))
        throw ValidationError("readout model: relaxation rates must be non-negative");
    if (!(gamma1 + gamma_phi > 0.0))
        throw ValidationError("readout model: no periodic steady state without dissipation");
    if (!(probe_amplitude >= 0.0))
        throw ValidationError("readout model: probe amplitude must be non-negative");
    if (basis == RelaxationBasis::Dressed && detuning == 0.0 && drive == 0.0)
        throw ValidationError("readout model: dressed basis undefined at epsilon = t = 0");
}

double TwoLevelReadoutModel::gap() const { return std::hypot(detuning, 2.0 * drive); }

bool TwoLevelReadoutModel::linear_response() const { return probe_amplitude <= gap() / 100.0; }

RotatedFrameParams rotate_basis(double detuning, double drive, double g_c, double omega_m,
                                double omega_r, const PhysicalConstants& pc) {
    if (detuning == 0.0 && drive == 0.0)
        throw ValidationError("rotate_basis: angle undefined for epsilon = t = 0");
    const double nu = std::hypot(detuning, 2.0 * drive);
    const double theta = drive == 0.0 ? std::copysign(std::numbers::pi / 2.0, detuning)
                                      : std::atan(detuning / (2.0 * drive));
    return RotatedFrameParams{nu, theta, -(drive / nu) * g_c, nu / pc.reduced_planck - omega_m,
                              omega_r - omega_m};
}

SteadyStateTrajectory steady_state_sz(const TwoLevelReadoutModel& model,
                                      const IntegratorOptions& options,
                                      const PhysicalConstants& pc) {
    model.validate();
    if (!(options.tolerance > 0.0)) throw ValidationError("steady_state_sz: tolerance must be positive");
    if (options.max_periods < 2) throw ValidationError("steady_state_sz: need at least two periods");
    const std::size_t steps = resolve_steps(model, options, pc);
    const double period = kTwoPi / model.omega_m;
    const double dt = period / static_cast<double>(steps);
    const double hbar = pc.reduced_planck;
    const Lindbladian f{model.detuning / (2.0 * hbar), model.probe_amplitude / (2.0 * hbar),
                        model.drive / hbar, model.omega_m, make_dissipator(model)};

    SteadyStateTrajectory out;
    out.steps_per_period = steps;
    out.times.resize(steps);
    for (std::size_t j = 0; j < steps; ++j) out.times[j] = static_cast<double>(j) * dt;

    Mat2 rho{};
    out.seeded = options.floquet_seed && floquet_fixed_point(f, steps, dt, rho);
    if (!out.seeded) {
        const auto vecs = relaxation_vectors(model);
        rho = outer(vecs[0], vecs[0]);
    }

    std::vector<double> current(steps), previous(steps);
    double change = std::numeric_limits<double>::infinity();
    for (std::size_t p = 1; p <= options.max_periods; ++p) {
        for (std::size_t s = 0; s < steps; ++s) {
            current[s] = (rho[3] - rho[0]).real();
            record_diagnostics(rho, out);
            rho = rk4_step(f, out.times[s], dt, rho);
        }
        if (p > 1) {
            change = 0.0;
            for (std::size_t s = 0; s < steps; ++s)
                change = std::max(change, std::abs(current[s] - previous[s]));
        }
        std::swap(current, previous);
        out.periods = p;
        out.last_change = change;
        if (!std::isfinite(previous[0])) throw NumericalError("steady_state_sz: integration diverged");
        if (change < options.tolerance) {
            out.sz = std::move(previous);
            return out;
        }
    }
    throw NumericalError("steady_state_sz: no periodic steady state within the period cap");
}

std::complex<double> susceptibility(const SteadyStateTrajectory& trajectory,
                                    const TwoLevelReadoutModel& model,
                                    const PhysicalConstants& pc) {
    if (!(model.probe_amplitude > 0.0))
        throw ValidationError("susceptibility: probe amplitude must be positive");
    const std::size_t m = trajectory.sz.size();
    if (m == 0 || trajectory.times.size() != m)
        throw ValidationError("susceptibility: empty trajectory");
    cplx acc = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        acc += trajectory.sz[j] * std::polar(1.0, kTwoPi * static_cast<double>(j) /
                                                      static_cast<double>(m));
    return std::conj(acc * (pc.reduced_planck / model.probe_amplitude / static_cast<double>(m)));
}

std::complex<double> susceptibility(const TwoLevelReadoutModel& model,
                                    const IntegratorOptions& options,
                                    const PhysicalConstants& pc) {
    if (!(model.probe_amplitude > 0.0))
        throw ValidationError("susceptibility: probe amplitude must be positive");
    return susceptibility(steady_state_sz(model, options, pc), model, pc);
}

Transmission transmission(std::complex<double> chi, double g_c, double delta0, double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw ValidationError("transmission: kappa must be positive");
    const cplx denom = delta0 + g_c * g_c * chi - cplx(0.0, kappa / 2.0);
    if (std::abs(denom) <= 1e-12 * kappa)
        throw SingularityError("transmission: vanishing denominator");
    const cplx value = cplx(0.0, kappa) / denom;
    return Transmission{value, std::abs(value), std::arg(value)};
}

ReadoutResponse readout_figures(std::complex<double> chi, const TwoLevelReadoutModel& model,
                                const ResonatorElectrical& resonator, double n_bar,
                                double n_noise, double t_int, const PhysicalConstants& pc) {
    resonator.validate();
    if (!(n_bar > 0.0) || !(n_noise > 0.0) || !(t_int > 0.0))
        throw ValidationError("readout_figures: photon numbers and integration time must be positive");
    const double g_c = charge_photon_g(resonator, pc).value;
    const double delta0 = resonator.omega_r - model.omega_m;
    const double kappa = resonator.kappa;

    ReadoutResponse r{};
    r.chi = chi;
    r.g_c = g_c;
    r.delta0 = delta0;
    r.n_bar = n_bar;
    r.n_noise = n_noise;
    r.t_int = t_int;
    r.t_c = transmission(chi, g_c, delta0, kappa).value;
    r.t_c_bare = transmission(0.0, g_c, delta0, kappa).value;
    r.delta_t_c = r.t_c - r.t_c_bare;
    const double charge = resonator.lever_arm * pc.elementary_charge;
    r.delta_c = charge * charge * chi.real() / pc.reduced_planck;
    const double contrast = std::abs(r.delta_t_c);
    r.snr = contrast * contrast * (n_bar / n_noise) * (kappa / kTwoPi) * t_int;
    r.s_c = contrast == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                            : (r.delta_c / contrast) * std::sqrt((n_noise / n_bar) * (kTwoPi / kappa));
    return r;
}

ReadoutResponse readout_figures(const TwoLevelReadoutModel& model,
                                const ResonatorElectrical& resonator, double n_bar,
                                double n_noise, double t_int, const IntegratorOptions& options,
                                const PhysicalConstants& pc) {
    return readout_figures(susceptibility(model, options, pc), model, resonator, n_bar, n_noise,
                           t_int, pc);
}

}  // namespace feq
