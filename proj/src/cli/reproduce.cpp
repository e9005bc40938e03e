#include "feq/cli/reproduce.hpp"

#include "feq/couplings.hpp"
#include "feq/schrodinger.hpp"

namespace feq::cli {

namespace {

ReproRow relative(std::string id, std::string quantity, std::string unit, double reference,
                  double computed, double fraction, std::string tolerance) {
    return {std::move(id), std::move(quantity), std::move(unit), reference, computed,
            reference * (1.0 - fraction), reference * (1.0 + fraction), std::move(tolerance)};
}

ReproRow absolute(std::string id, std::string quantity, std::string unit, double reference,
                  double computed, double delta, std::string tolerance) {
    return {std::move(id), std::move(quantity), std::move(unit), reference, computed,
            reference - delta, reference + delta, std::move(tolerance)};
}

}  // namespace

std::vector<ReproRow> reproduce_paper(const RunConfig& config) {
    const auto pc = config.constants();
    const auto helium = solve(config.substrate_for("helium"), 0.0, 2, config.grid, pc);
    const auto neon = solve(config.substrate_for("neon"), 0.0, 2, config.grid, pc);

    std::vector<ReproRow> rows;
    rows.push_back(relative("he_z1", "helium ground-state height <z>_1", "nm", 10.6,
                            helium.mean_position(1) / units::nm, 0.03, "3%"));
    rows.push_back(relative("ne_z1", "neon ground-state height <z>_1", "nm", 2.5,
                            neon.mean_position(1) / units::nm, 0.05, "5%"));
    rows.push_back({"he_f12", "helium Rydberg transition f12", "GHz", 127.0, helium.f12() / units::GHz,
                    115.0, 132.0, "[115, 132]"});

    const auto v = vacuum_voltage(2.0 * units::pF, angular_from_hz(100.0 * units::MHz), pc);
    rows.push_back(absolute("v_rms", "vacuum fluctuation voltage (2 pF, 100 MHz)", "nV", 130.0,
                            v.value / 1e-9, 2.0, "2 nV"));
    const auto gc = charge_photon_g(0.01, v.value, pc);
    rows.push_back(absolute("g_c", "charge-photon coupling g_c/2pi (alpha = 0.01)", "MHz", 0.31,
                            gc.hz() / units::MHz, 0.02, "0.02 MHz"));

    const double gradient = 0.1 * units::mT_per_nm;
    const double interdot = 100.0 * units::nm;
    const double g_c = angular_from_hz(3.5 * units::MHz);
    const double so_1ghz = pc.planck * 1.0 * units::GHz;
    const double so_100mhz = pc.planck * 100.0 * units::MHz;
    rows.push_back(relative("g_s_1GHz", "spin-photon coupling g_s/2pi (detuning 1 GHz)", "MHz", 0.2,
                            dqd_spin_photon(gradient, g_c, interdot, so_1ghz, pc).coupling.hz() / units::MHz,
                            0.30, "30%"));
    rows.push_back(relative("g_s_100MHz", "spin-photon coupling g_s/2pi (detuning 100 MHz)", "MHz", 2.0,
                            dqd_spin_photon(gradient, g_c, interdot, so_100mhz, pc).coupling.hz() / units::MHz,
                            0.30, "30%"));
    const auto deco = spin_decoherence_from_charge(gradient, interdot, so_1ghz,
                                                   angular_from_hz(0.36 * units::MHz), pc);
    rows.push_back(relative("spin_decoherence", "charge-induced spin decoherence /2pi", "kHz", 7.0,
                            deco.hz() / units::kHz, 0.10, "10%"));
    return rows;
}

ResultTable reproduce_table(const std::vector<ReproRow>& rows) {
    ResultTable t({"id", "quantity", "unit", "reference", "computed", "lower", "upper", "tolerance", "status"});
    for (const auto& r : rows)
        t.add_row(std::vector<std::string>{r.id, "\"" + r.quantity + "\"", r.unit, format_number(r.reference),
                                           format_number(r.computed), format_number(r.lower),
                                           format_number(r.upper), "\"" + r.tolerance + "\"",
                                           r.pass() ? "pass" : "fail"});
    return t;
}

}  // namespace feq::cli
