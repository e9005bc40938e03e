#include "doctest.h"
#include "approx.hpp"

#include <cmath>
#include <numbers>

#include "feq/couplings.hpp"
#include "feq/errors.hpp"

using namespace feq;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = 1.602176634e-19;
constexpr double kH = 6.62607015e-34;
constexpr double kHbar = kH / (2.0 * kPi);
constexpr double kMe = 9.1093837015e-31;
constexpr double kEps0 = 8.8541878128e-12;
constexpr double kMuB = 9.2740100783e-24;
constexpr double kG = 2.00231930436256;

constexpr double kGradient = 0.1e-3 / 1e-9;  // 0.1 mT/nm in T/m
constexpr double kInterdot = 100e-9;

double oracle_edsr(double db, double eac, double l0, double w0, double wl) {
    return db * kE * eac * l0 * l0 * w0 / (2.0 * kHbar * (w0 * w0 - wl * wl));
}

double oracle_gs(double db, double gc, double d, double det) {
    const double bsp = db * (kHbar * gc) * d / (4.0 * det);
    return kG * kMuB * bsp / kHbar;
}

}  // namespace

TEST_CASE("vacuum voltage") {
    const auto v = vacuum_voltage(2e-12, 2 * kPi * 100e6);
    CHECK(v.value == approx(std::sqrt(kHbar * 2 * kPi * 100e6 / (2 * 2e-12))).epsilon(1e-12));
    CHECK(std::abs(v.value - 130e-9) <= 2e-9);
    CHECK(v.formula == Formula::VacuumVoltage);
    CHECK(v.unit == "V");
    CHECK(vacuum_voltage(8e-12, 2 * kPi * 100e6).value == approx(v.value / 2).epsilon(1e-14));
    const auto high = vacuum_voltage(1e-15, 2 * kPi * 6e9);
    CHECK(high.value == approx(std::sqrt(kHbar * 2 * kPi * 6e9 / 2e-15)).epsilon(1e-12));
    CHECK_THROWS_AS(vacuum_voltage(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(vacuum_voltage(1e-12, -1.0), ValidationError);
    CHECK_THROWS_AS(vacuum_voltage(NAN, 1.0), ValidationError);
}

TEST_CASE("charge-photon coupling") {
    const auto g = charge_photon_g(0.01, 130e-9);
    CHECK(g.value == approx(kE * 0.01 * 130e-9 / kHbar).epsilon(1e-12));
    CHECK(std::abs(g.hz() - 0.31e6) <= 0.02e6);
    CHECK(charge_photon_g(0.0, 130e-9).value == 0.0);

    const double v6 = std::sqrt(kHbar * 2 * kPi * 6e9 / 2e-15);
    CHECK(charge_photon_g(0.03, v6).value == approx(kE * 0.03 * v6 / kHbar).epsilon(1e-12));

    const ResonatorElectrical r{2e-12, 2 * kPi * 100e6, 0.01, 2 * kPi * 0.4e6};
    CHECK(charge_photon_g(r).value ==
          approx(charge_photon_g(0.01, vacuum_voltage(2e-12, 2 * kPi * 100e6).value).value));
    CHECK_THROWS_AS(charge_photon_g(1.5, 1e-7), ValidationError);
    CHECK_THROWS_AS(charge_photon_g(-0.1, 1e-7), ValidationError);
    CHECK_THROWS_AS((ResonatorElectrical{2e-12, 1.0, 0.0, 1.0}.validate()), ValidationError);
}

TEST_CASE("EDSR effective field") {
    const double w0 = 2 * kPi * 20e9;
    const double wl = 2 * kPi * 14e9;
    const double l0 = std::sqrt(kHbar / (kMe * w0));
    const auto b = edsr_field(kGradient, 1e3, l0, w0, wl);
    CHECK(b.value == approx(oracle_edsr(kGradient, 1e3, l0, w0, wl)).epsilon(1e-12));
    CHECK(b.unit == "T");
    CHECK(edsr_field(0.0, 1e3, l0, w0, wl).value == 0.0);
    CHECK(edsr_field(kGradient, 0.0, l0, w0, wl).value == 0.0);
    // odd in the gradient, linear in the drive
    CHECK(edsr_field(-kGradient, 1e3, l0, w0, wl).value == -b.value);
    CHECK(edsr_field(kGradient, 3e3, l0, w0, wl).value == approx(3 * b.value).epsilon(1e-14));
    // sign flips across the pole
    CHECK(edsr_field(kGradient, 1e3, l0, w0, 2 * kPi * 25e9).value < 0.0);
    CHECK_THROWS_AS(edsr_field(kGradient, 1e3, l0, w0, w0), SingularityError);
    CHECK_THROWS_AS(edsr_field(kGradient, 1e3, l0, w0, w0 * (1 + 1e-8)), SingularityError);
    CHECK_NOTHROW(edsr_field(kGradient, 1e3, l0, w0, w0 * (1 + 1e-4)));
}

TEST_CASE("Landau-level corrected EDSR field") {
    const double w0 = 2 * kPi * 20e9;
    const double wl = 2 * kPi * 14e9;
    const double l0 = std::sqrt(kHbar / (kMe * w0));
    CHECK(edsr_field_landau(kGradient, 1e3, l0, w0, wl, 0.0).value ==
          edsr_field(kGradient, 1e3, l0, w0, wl / 2).value);

    const double wc = cyclotron(1.0);
    CHECK(hz_from_angular(wc) == approx(28.0e9).epsilon(0.1 / 28.0));
    const double wt = w0 * std::sqrt(1 + wc * wc / (4 * w0 * w0));
    CHECK(landau_dressed_frequency(w0, wc) == approx(wt).epsilon(1e-14));
    CHECK(edsr_field_landau(kGradient, 1e3, l0, w0, wl, wc).value ==
          approx(oracle_edsr(kGradient, 1e3, l0, wt, wl / 2)).epsilon(1e-12));
    for (double c : {0.0, 1e9, 1e11, 1e13}) CHECK(landau_dressed_frequency(w0, c) >= w0);
    CHECK_THROWS_AS(edsr_field_landau(kGradient, 1e3, l0, w0, 2 * w0, 0.0), SingularityError);
}

TEST_CASE("double-dot spin-photon coupling") {
    const double gc = 2 * kPi * 3.5e6;
    for (double det_hz : {1e9, 100e6}) {
        const double det = kH * det_hz;
        const auto r = dqd_spin_photon(kGradient, gc, kInterdot, det);
        const double oracle = oracle_gs(kGradient, gc, kInterdot, det);
        CHECK(r.coupling.value == approx(oracle).epsilon(1e-12));
        CHECK(r.field.value == approx(kGradient * kHbar * gc * kInterdot / (4 * det)).epsilon(1e-12));
        CHECK(r.field.unit == "T");
    }
    const auto at1 = dqd_spin_photon(kGradient, gc, kInterdot, kH * 1e9).coupling.hz();
    const auto at100 = dqd_spin_photon(kGradient, gc, kInterdot, kH * 100e6).coupling.hz();
    CHECK(std::abs(at1 - 0.245e6) <= 0.01e6);
    CHECK(std::abs(at100 - 2.45e6) <= 0.1e6);
    CHECK(std::abs(at1 - 0.2e6) <= 0.3 * 0.2e6);
    CHECK(std::abs(at100 - 2e6) <= 0.3 * 2e6);
    CHECK(dqd_spin_photon(0.0, gc, kInterdot, kH * 1e9).coupling.value == 0.0);

    const double base = dqd_spin_photon(kGradient, gc, kInterdot, kH * 1e9).coupling.value;
    CHECK(dqd_spin_photon(2 * kGradient, gc, kInterdot, kH * 1e9).coupling.value == approx(2 * base));
    CHECK(dqd_spin_photon(kGradient, 3 * gc, kInterdot, kH * 1e9).coupling.value == approx(3 * base));
    CHECK(dqd_spin_photon(kGradient, gc, 5 * kInterdot, kH * 1e9).coupling.value == approx(5 * base));
    CHECK(dqd_spin_photon(kGradient, gc, kInterdot, kH * 4e9).coupling.value == approx(base / 4));
    CHECK(dqd_spin_photon(kGradient, gc, kInterdot, -kH * 1e9).coupling.value == approx(-base));
    CHECK_THROWS_AS(dqd_spin_photon(kGradient, gc, kInterdot, 0.0), SingularityError);

    const double wl = larmor(0.5);
    CHECK(spin_orbit_detuning(kH * 20e9, wl) == approx(kH * 20e9 - kHbar * wl));
}

TEST_CASE("charge-induced spin decoherence") {
    const double gamma_c = 2 * kPi * 0.36e6;
    const auto r = spin_decoherence_from_charge(kGradient, kInterdot, kH * 1e9, gamma_c);
    const double ratio = kG * kMuB * kGradient * kInterdot / (2 * kH * 1e9);
    CHECK(r.value == approx(ratio * ratio * gamma_c).epsilon(1e-12));
    CHECK(std::abs(r.hz() - 7e3) <= 0.1 * 7e3);
    CHECK(r.within_validity);
    CHECK(spin_decoherence_from_charge(kGradient, kInterdot, kH * 1e9, 0.0).value == 0.0);
    CHECK_FALSE(spin_decoherence_from_charge(kGradient, kInterdot, kH * 100e6, gamma_c).within_validity);
    CHECK(spin_decoherence_from_charge(2 * kGradient, 2 * kInterdot, kH * 1e9, gamma_c).value ==
          approx(16 * r.value).epsilon(1e-13));
    CHECK_THROWS_AS(spin_decoherence_from_charge(kGradient, kInterdot, 0.0, gamma_c), SingularityError);
    CHECK_THROWS_AS(spin_decoherence_from_charge(kGradient, kInterdot, kH, -1.0), ValidationError);
}

TEST_CASE("dipole-dipole coupling") {
    const auto j = dipole_dipole_coupling(10e-9, 1e-6);
    const double oracle = std::pow(kE * 10e-9, 2) / (4 * kPi * kEps0 * 1e-18 * kHbar);
    CHECK(j.value == approx(oracle).epsilon(1e-12));
    // The same number divided by h instead of hbar is the angular rate over 2 pi.
    CHECK(j.hz() == approx(std::pow(kE * 10e-9, 2) / (4 * kPi * kEps0 * 1e-18 * kH)).epsilon(1e-12));
    CHECK(dipole_dipole_coupling(10e-9, 2e-6).value == approx(j.value / 8).epsilon(1e-14));
    CHECK(dipole_dipole_coupling(0.0, 1e-6).value == 0.0);
    CHECK_THROWS_AS(dipole_dipole_coupling(10e-9, 100e-9), ValidationError);
    CHECK_THROWS_AS(dipole_dipole_coupling(10e-9, 50e-9), ValidationError);
}

TEST_CASE("kinematic helpers") {
    CHECK(hz_from_angular(larmor(0.5)) == approx(14.0e9).epsilon(0.1 / 14.0));
    CHECK(larmor(0.5) == approx(kG * kMuB * 0.5 / kHbar).epsilon(1e-12));
    CHECK(cyclotron(1.0) == approx(kE / kMe).epsilon(1e-12));
    const double l0 = orbital_spread(2 * kPi * 10e9);
    CHECK(l0 == approx(std::sqrt(kHbar / (kMe * 2 * kPi * 10e9))).epsilon(1e-12));
    CHECK(l0 == approx(43e-9).epsilon(0.01));
    CHECK(dot_size(l0) == approx(l0 / std::sqrt(2.0)));
    CHECK(dot_size(l0) == approx(30e-9).epsilon(0.02));
    CHECK_THROWS_AS(larmor(0.0), ValidationError);
    CHECK_THROWS_AS(cyclotron(-1.0), ValidationError);
    CHECK_THROWS_AS(orbital_spread(0.0), ValidationError);
    CHECK_THROWS_AS(dot_size(-1.0), ValidationError);

    const auto trap = TrapParams::harmonic(2 * kPi * 10e9, kH * 20e9);
    CHECK(trap.orbital_spread == approx(l0));
    CHECK(trap.dot_size == approx(l0 / std::sqrt(2.0)));
    const auto env = MagneticEnvironment::from_field(0.5, kGradient, 1e3);
    CHECK(env.omega_l == larmor(0.5));
    CHECK(env.omega_c == cyclotron(0.5));
}

TEST_CASE("formula ids and input echo") {
    const auto g = charge_photon_g(0.01, 130e-9);
    CHECK(to_string(g.formula) == "charge_photon_g");
    CHECK_FALSE(g.inputs.empty());
    CHECK(to_string(Formula::DipoleDipole) == "dipole_dipole_coupling");
}

TEST_CASE("couplings are independent of the unit system") {
    // Base units: nm, ns, 1e-30 kg, 1e-19 C.
    const double L = 1e-9, T = 1e-9, M = 1e-30, Q = 1e-19;
    const double EU = M * L * L / (T * T);
    const auto& si = PhysicalConstants::si();
    const auto alt = PhysicalConstants::from_base(si.elementary_charge / Q, si.planck / (EU * T),
                                                  si.electron_mass / M,
                                                  si.vacuum_permittivity / (Q * Q / (EU * L)),
                                                  si.bohr_magneton / (EU * Q * T / M), si.g_factor);
    const double rate = 1.0 / T;
    const double farad = Q * Q / EU;
    const double volt = EU / Q;
    const double tesla = M / (Q * T);
    const double field = volt / L;
    const double grad = tesla / L;
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-10 * std::abs(b); };

    const double c = 2e-12, wr = 2 * kPi * 100e6;
    CHECK(close(vacuum_voltage(c / farad, wr / rate, alt).value * volt, vacuum_voltage(c, wr).value));
    CHECK(close(charge_photon_g(0.01, 130e-9 / volt, alt).value * rate, charge_photon_g(0.01, 130e-9).value));

    const double w0 = 2 * kPi * 20e9, wl = 2 * kPi * 14e9, wc = cyclotron(0.5);
    const double l0 = orbital_spread(w0);
    CHECK(close(edsr_field(kGradient / grad, 1e3 / field, l0 / L, w0 / rate, wl / rate, alt).value * tesla,
                edsr_field(kGradient, 1e3, l0, w0, wl).value));
    CHECK(close(edsr_field_landau(kGradient / grad, 1e3 / field, l0 / L, w0 / rate, wl / rate, wc / rate, alt)
                        .value * tesla,
                edsr_field_landau(kGradient, 1e3, l0, w0, wl, wc).value));

    const double gc = 2 * kPi * 3.5e6, det = kH * 1e9;
    const auto a = dqd_spin_photon(kGradient / grad, gc / rate, kInterdot / L, det / EU, alt);
    const auto b = dqd_spin_photon(kGradient, gc, kInterdot, det);
    CHECK(close(a.coupling.value * rate, b.coupling.value));
    CHECK(close(a.field.value * tesla, b.field.value));
    CHECK(close(spin_decoherence_from_charge(kGradient / grad, kInterdot / L, det / EU, 2e6 / rate, alt).value * rate,
                spin_decoherence_from_charge(kGradient, kInterdot, det, 2e6).value));
    CHECK(close(dipole_dipole_coupling(10e-9 / L, 1e-6 / L, alt).value * rate, dipole_dipole_coupling(10e-9, 1e-6).value));
    CHECK(close(larmor(0.5 / tesla, alt) * rate, larmor(0.5)));
    CHECK(close(cyclotron(0.5 / tesla, alt) * rate, cyclotron(0.5)));
    CHECK(close(orbital_spread(w0 / rate, alt) * L, orbital_spread(w0)));
}
