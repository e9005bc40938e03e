#include "feq/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>

#include "feq/cli/reproduce.hpp"
#include "feq/couplings.hpp"
#include "feq/errors.hpp"
#include "feq/parallel.hpp"
#include "feq/readout.hpp"
#include "feq/schrodinger.hpp"

namespace feq::cli {

namespace {

constexpr double kDisplayScaleGHz = 700.0;
constexpr double kMicrosecond = 1e-6;

std::vector<double> axis_values(const RunConfig& c, double fallback) {
    return c.sweep ? c.sweep->values() : std::vector<double>{fallback};
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    const auto stem = p.stem().string();
    return (p.parent_path() / (stem + suffix + ".csv")).string();
}

double ghz(double energy, const PhysicalConstants& pc) { return energy / pc.planck / units::GHz; }

CommandResult run_spectrum(const RunConfig& c) {
    const auto sub = c.substrate();
    const auto pc = c.constants();
    const auto fields = axis_values(c, c.eperp_V_per_m);
    const auto spectra = parallel_map<std::optional<RydbergSpectrum>>(
        fields.size(), c.threads,
        [&](std::size_t i) { return std::optional(solve(sub, fields[i], c.levels, c.grid, pc)); });

    ResultTable levels({"eperp_V_per_m", "level", "energy_GHz", "z_mean_nm", "leakage",
                        "f_from_1_GHz"});
    std::vector<std::string> wf_cols{"eperp_V_per_m", "z_nm", "potential_GHz"};
    for (std::size_t n = 1; n <= c.levels; ++n) wf_cols.push_back("psi" + std::to_string(n) + "_display_GHz");
    ResultTable waves(wf_cols);
    const double root_step = std::sqrt(c.grid.step);

    for (std::size_t i = 0; i < fields.size(); ++i) {
        const auto& s = *spectra[i];
        for (std::size_t n = 1; n <= s.levels(); ++n)
            levels.add_row(std::vector<double>{fields[i], static_cast<double>(n), ghz(s.energy(n), pc),
                                               s.mean_position(n) / units::nm, s.leakage(n),
                                               n == 1 ? 0.0 : s.transition_frequency(1, n) / units::GHz});
        const auto potential = build_potential(sub, fields[i], c.grid, pc);
        const auto z = s.z();
        for (std::size_t k = 0; k < z.size(); ++k) {
            std::vector<double> row{fields[i], z[k] / units::nm, ghz(potential.values[k], pc)};
            for (std::size_t n = 1; n <= s.levels(); ++n)
                row.push_back(ghz(s.energy(n), pc) + kDisplayScaleGHz * s.wavefunction(n)[k] * root_step);
            waves.add_row(row);
        }
    }
    add_provenance(levels, c);
    add_provenance(waves, c);
    waves.add_meta("display = E_n/h [GHz] + 700 * unit-norm eigenvector component");

    CommandResult r;
    const auto path = c.output_path();
    r.files.push_back({path, std::move(levels)});
    r.files.push_back({sibling_path(path, "_wavefunctions"), std::move(waves)});
    const auto& first = *spectra.front();
    r.messages.push_back("E_perp = " + format_number(fields.front()) + " V/m: <z>_1 = " +
                         format_number(first.mean_position(1) / units::nm) + " nm, f12 = " +
                         format_number(first.f12() / units::GHz) + " GHz");
    return r;
}

CommandResult run_stark_sweep(const RunConfig& c) {
    const auto sub = c.substrate();
    const auto pc = c.constants();
    const auto fields = axis_values(c, c.eperp_V_per_m);
    const auto sweep = stark_sweep(sub, fields, c.levels, c.grid, c.threads, pc);
    ResultTable t({"eperp_V_per_m", "f12_GHz", "z1_nm", "z2_nm", "dipole_nm"});
    for (const auto& p : sweep.points)
        t.add_row(std::vector<double>{p.e_perp, p.f12 / units::GHz, p.mean_z1 / units::nm,
                                      p.mean_z2 / units::nm, p.dipole / units::nm});
    add_provenance(t, c);
    t.add_meta("f12_monotonic_sign: " + std::to_string(sweep.monotonic_sign));
    CommandResult r;
    r.files.push_back({c.output_path(), std::move(t)});
    r.messages.push_back(std::to_string(sweep.points.size()) + " field points, f12 monotonic sign " +
                         std::to_string(sweep.monotonic_sign));
    return r;
}

std::vector<double> coupling_row(const CouplingInputs& in, const PhysicalConstants& pc) {
    const auto res = in.resonator();
    const auto v = vacuum_voltage(res.capacitance, res.omega_r, pc);
    const auto gc = charge_photon_g(res.lever_arm, v.value, pc);
    const double gradient = in.gradient_mT_per_nm * units::mT_per_nm;
    const auto magnet = MagneticEnvironment::from_field(in.b0_T, gradient, in.e_ac_V_per_m, pc);
    const auto trap = TrapParams::harmonic(angular_from_hz(in.orbital_GHz * units::GHz), 0.0, pc);
    const auto edsr = edsr_field(gradient, in.e_ac_V_per_m, trap.orbital_spread, trap.omega0,
                                 magnet.omega_l, pc);
    const auto landau = edsr_field_landau(gradient, in.e_ac_V_per_m, trap.orbital_spread, trap.omega0,
                                          magnet.omega_l, magnet.omega_c, pc);
    const double detuning = pc.planck * in.spin_orbit_detuning_GHz * units::GHz;
    const double interdot = in.interdot_nm * units::nm;
    const auto sp = dqd_spin_photon(gradient, angular_from_hz(in.spin_photon_gc_over_2pi_MHz * units::MHz),
                                    interdot, detuning, pc);
    const auto deco = spin_decoherence_from_charge(
        gradient, interdot, detuning, angular_from_hz(in.gamma_c_over_2pi_MHz * units::MHz), pc);
    const auto dd = dipole_dipole_coupling(in.dipole_length_nm * units::nm,
                                           in.dipole_separation_um * units::um, pc);
    return {v.value / 1e-9,
            gc.hz() / units::MHz,
            hz_from_angular(magnet.omega_l) / units::GHz,
            hz_from_angular(magnet.omega_c) / units::GHz,
            trap.orbital_spread / units::nm,
            trap.dot_size / units::nm,
            edsr.value / 1e-3,
            landau.value / 1e-3,
            sp.field.value / 1e-6,
            sp.coupling.hz() / units::MHz,
            deco.hz() / units::kHz,
            deco.within_validity ? 1.0 : 0.0,
            dd.hz() / units::MHz};
}

CommandResult run_couplings(const RunConfig& c) {
    const auto pc = c.constants();
    std::vector<std::string> cols;
    if (c.sweep) cols.push_back(c.sweep->name);
    for (const char* name : {"v_rms_nV", "gc_over_2pi_MHz", "larmor_GHz", "cyclotron_GHz", "l0_nm", "d_nm",
                             "edsr_field_mT", "edsr_field_landau_mT", "spin_photon_field_uT",
                             "gs_over_2pi_MHz", "spin_decoherence_over_2pi_kHz", "decoherence_valid",
                             "dipole_coupling_over_2pi_MHz"})
        cols.emplace_back(name);
    ResultTable t(cols);
    const auto values = c.sweep ? c.sweep->values() : std::vector<double>{0.0};
    const auto rows = parallel_map<std::vector<double>>(values.size(), c.threads, [&](std::size_t i) {
        const auto point = c.sweep ? with_axis_value(c, c.sweep->name, values[i]) : c;
        auto row = coupling_row(point.couplings, pc);
        if (c.sweep) row.insert(row.begin(), values[i]);
        return row;
    });
    for (const auto& row : rows) t.add_row(row);
    add_provenance(t, c);
    CommandResult r;
    r.files.push_back({c.output_path(), std::move(t)});
    const auto& first = rows.front();
    const std::size_t off = c.sweep ? 1 : 0;
    r.messages.push_back("v_rms = " + format_number(first[off]) + " nV, g_c/2pi = " +
                         format_number(first[off + 1]) + " MHz, g_s/2pi = " + format_number(first[off + 9]) +
                         " MHz");
    return r;
}

CommandResult run_readout(const RunConfig& c) {
    const auto pc = c.constants();
    std::vector<std::string> cols;
    if (c.sweep) cols.push_back(c.sweep->name);
    for (const char* name :
         {"detuning_GHz", "drive_GHz", "gap_GHz", "theta_rad", "g_eff_over_2pi_MHz", "chi_re_s", "chi_im_s",
          "tc_re", "tc_im", "tc_abs", "tc_phase_rad", "delta_tc_abs", "delta_c_F", "snr",
          "s_c_F_per_sqrt_Hz", "steps_per_period", "periods"})
        cols.emplace_back(name);
    ResultTable t(cols);
    const auto values = c.sweep ? c.sweep->values() : std::vector<double>{0.0};
    const auto rows = parallel_map<std::vector<double>>(values.size(), c.threads, [&](std::size_t i) {
        const auto point = c.sweep ? with_axis_value(c, c.sweep->name, values[i]) : c;
        const auto& in = point.readout;
        const auto model = in.model(pc);
        const auto resonator = point.couplings.resonator();
        const auto trajectory = steady_state_sz(model, in.integrator, pc);
        const auto chi = susceptibility(trajectory, model, pc);
        const auto fig = readout_figures(chi, model, resonator, in.n_bar, in.n_noise,
                                         in.t_int_us * kMicrosecond, pc);
        const auto frame = rotate_basis(model.detuning, model.drive, fig.g_c, model.omega_m,
                                        resonator.omega_r, pc);
        const auto tc = transmission(chi, fig.g_c, fig.delta0, resonator.kappa);
        std::vector<double> row{in.detuning_GHz,
                                in.drive_GHz,
                                ghz(frame.gap, pc),
                                frame.angle,
                                hz_from_angular(frame.g_eff) / units::MHz,
                                chi.real(),
                                chi.imag(),
                                tc.value.real(),
                                tc.value.imag(),
                                tc.magnitude,
                                tc.phase,
                                std::abs(fig.delta_t_c),
                                fig.delta_c,
                                fig.snr,
                                fig.s_c,
                                static_cast<double>(trajectory.steps_per_period),
                                static_cast<double>(trajectory.periods)};
        if (c.sweep) row.insert(row.begin(), values[i]);
        return row;
    });
    for (const auto& row : rows) t.add_row(row);
    add_provenance(t, c);
    CommandResult r;
    r.files.push_back({c.output_path(), std::move(t)});
    const std::size_t off = c.sweep ? 1 : 0;
    r.messages.push_back("chi = " + format_number(rows.front()[off + 5]) + " + " +
                         format_number(rows.front()[off + 6]) + "i s, SNR = " +
                         format_number(rows.front()[off + 13]));
    return r;
}

CommandResult run_escape_window(const RunConfig& c) {
    const auto sub = c.substrate();
    const auto pc = c.constants();
    const auto& e = c.escape;
    const auto zero_field = solve(sub, 0.0, std::max<std::size_t>(e.n_escape, 2), c.grid, pc);
    const auto window = escape_window(sub, e.n_bound, e.n_escape, e.range_min_V_per_m,
                                      e.range_max_V_per_m, c.grid, pc);
    const std::string nb = "n" + std::to_string(e.n_bound) + "_escaped";
    const std::string ne = "n" + std::to_string(e.n_escape) + "_escaped";
    ResultTable t({"eperp_V_per_m", nb, ne, "in_window"});
    SweepAxis axis{"eperp_V_per_m", e.range_min_V_per_m, e.range_max_V_per_m, e.points, Scale::Linear};
    for (double field : axis.values()) {
        const bool bound_escaped = is_escaped(sub, zero_field, e.n_bound, field, pc);
        const bool upper_escaped = is_escaped(sub, zero_field, e.n_escape, field, pc);
        t.add_row(std::vector<double>{field, bound_escaped ? 1.0 : 0.0, upper_escaped ? 1.0 : 0.0,
                                      (upper_escaped && !bound_escaped) ? 1.0 : 0.0});
    }
    add_provenance(t, c);
    CommandResult r;
    if (window) {
        t.add_meta("window_V_per_m: " + format_number(window->e_low) + " " + format_number(window->e_high));
        r.messages.push_back("escape window: [" + format_number(window->e_low) + ", " +
                             format_number(window->e_high) + "] V/m");
    } else {
        t.add_meta("window_V_per_m: none");
        r.messages.push_back("escape window: none in the requested range");
    }
    r.files.push_back({c.output_path(), std::move(t)});
    return r;
}

CommandResult run_convergence(const RunConfig& c) {
    const auto study = convergence_study(c.substrate(), c.grid, c.threads, c.constants());
    const auto pc = c.constants();
    ResultTable t({"step_nm", "z_max_nm", "f12_GHz", "e1_GHz", "e2_GHz"});
    for (const auto& row : study.rows)
        t.add_row(std::vector<double>{row.step / units::nm, row.z_max / units::nm, row.f12 / units::GHz,
                                      ghz(row.e1, pc), ghz(row.e2, pc)});
    add_provenance(t, c);
    t.add_meta("observed_order_f12: " + format_number(study.observed_order));
    t.add_meta("observed_order_f12_coarse: " + format_number(study.observed_order_coarse));
    t.add_meta("halving_change_f12: " + format_number(study.halving_change));
    t.add_meta("zmax_change_e1: " + format_number(study.zmax_change_e1));
    t.add_meta("zmax_change_e2: " + format_number(study.zmax_change_e2));
    CommandResult r;
    r.files.push_back({c.output_path(), std::move(t)});
    r.messages.push_back("observed order " + format_number(study.observed_order) + ", halving change " +
                         format_number(study.halving_change));
    return r;
}

CommandResult run_reproduce(const RunConfig& c) {
    const auto rows = reproduce_paper(c);
    auto t = reproduce_table(rows);
    add_provenance(t, c);
    CommandResult r;
    for (const auto& row : rows) {
        r.messages.push_back(std::string(row.pass() ? "PASS " : "FAIL ") + row.id + ": " +
                             format_number(row.computed) + " " + row.unit + " (reference " +
                             format_number(row.reference) + ", tolerance " + row.tolerance + ")");
        if (!row.pass()) r.exit_code = 1;
    }
    r.files.push_back({c.output_path(), std::move(t)});
    return r;
}

}  // namespace

void add_provenance(ResultTable& table, const RunConfig& config) {
    table.add_meta(std::string("feq ") + kToolVersion + " " + std::string(to_string(config.command)));
    table.add_meta("config: " + to_json(config).dump());
    table.add_meta("grid: z_min_nm=" + format_number(config.grid.z_min / units::nm) +
                   " z_max_nm=" + format_number(config.grid.z_max / units::nm) +
                   " step_nm=" + format_number(config.grid.step / units::nm) +
                   " points=" + std::to_string(config.grid.points()));
    table.add_meta("generated: " + generated_timestamp());
}

double observed_order(double coarse, double medium, double fine) {
    const double num = coarse - medium;
    const double den = medium - fine;
    if (den == 0.0 || num / den <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return std::log2(num / den);
}

ConvergenceStudy convergence_study(const SubstrateParams& substrate, const Grid1D& base,
                                   unsigned threads, const PhysicalConstants& pc) {
    base.validate();
    std::vector<Grid1D> grids;
    for (double factor : {4.0, 2.0, 1.0, 0.5}) {
        Grid1D g = base;
        g.step = base.step * factor;
        grids.push_back(g);
    }
    Grid1D wide = base;
    wide.z_max = 2.0 * base.z_max;
    grids.push_back(wide);

    ConvergenceStudy study;
    study.rows = parallel_map<ConvergenceRow>(grids.size(), threads, [&](std::size_t i) {
        const auto s = solve(substrate, 0.0, 2, grids[i], pc);
        return ConvergenceRow{grids[i].step, grids[i].z_max, s.f12(), s.energy(1), s.energy(2)};
    });
    const auto& r = study.rows;
    study.observed_order_coarse = observed_order(r[0].f12, r[1].f12, r[2].f12);
    study.observed_order = observed_order(r[1].f12, r[2].f12, r[3].f12);
    study.halving_change = std::abs(r[3].f12 - r[2].f12) / r[2].f12;
    study.zmax_change_e1 = std::abs(r[4].e1 - r[2].e1) / std::abs(r[2].e1);
    study.zmax_change_e2 = std::abs(r[4].e2 - r[2].e2) / std::abs(r[2].e2);
    return study;
}

CommandResult execute(const RunConfig& config) {
    config.validate();
    switch (config.command) {
        case Command::Spectrum: return run_spectrum(config);
        case Command::StarkSweep: return run_stark_sweep(config);
        case Command::Couplings: return run_couplings(config);
        case Command::Readout: return run_readout(config);
        case Command::EscapeWindow: return run_escape_window(config);
        case Command::Convergence: return run_convergence(config);
        case Command::ReproducePaper: return run_reproduce(config);
    }
    throw ValidationError("unknown command");
}

void write_outputs(const CommandResult& result) {
    for (const auto& f : result.files) f.table.write_csv(f.path);
}

}  // namespace feq::cli
