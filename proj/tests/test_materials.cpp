#include "doctest.h"
#include "approx.hpp"

#include <cmath>

#include "feq/errors.hpp"
#include "feq/materials.hpp"

using namespace feq;

TEST_CASE("physical constants: derived values") {
    const auto& pc = PhysicalConstants::si();
    CHECK(pc.reduced_planck == approx(1.054571817e-34).epsilon(1e-9));
    // R_inf c = 10973731.568160 1/m
    CHECK(pc.rydberg_frequency == approx(10973731.568160 * 299792458.0).epsilon(1e-9));
    CHECK(pc.coulomb_constant_e2() == approx(2.307077552e-28).epsilon(1e-9));
}

TEST_CASE("image charge factor") {
    CHECK(image_charge_factor(1.0) == 0.0);
    CHECK(image_charge_factor(3.0) == approx(0.5));
    CHECK_THROWS_AS(image_charge_factor(0.5), ValidationError);
    for (double eps : {1.01, 1.056, 1.244, 2.0, 10.0, 80.0}) {
        const double l = image_charge_factor(eps);
        CHECK(l > 0.0);
        CHECK(l < 1.0);
    }
}

TEST_CASE("catalog substrates") {
    const auto he = substrate(SubstrateKind::Helium4);
    CHECK(he.epsilon_r == 1.056);
    CHECK(he.image_factor == approx(0.056 / 2.056));
    CHECK(he.barrier_height == approx(1.0 * units::eV));
    CHECK(he.offset == approx(0.1 * units::nm));
    CHECK_FALSE(he.nuclear_broadening.has_value());

    const auto ne = substrate(SubstrateKind::Neon);
    CHECK(ne.epsilon_r == 1.244);
    CHECK(ne.image_factor == approx(0.244 / 2.244));
    CHECK(ne.barrier_height == approx(0.7 * units::eV));
    CHECK(ne.offset == approx(0.23 * units::nm));
    REQUIRE(ne.nuclear_broadening.has_value());
    CHECK(*ne.nuclear_broadening == approx(2.0 * std::numbers::pi * 10e3));

    CHECK_THROWS_AS(substrate(SubstrateKind::Custom), ValidationError);
    CHECK_NOTHROW(he.validate());
    CHECK_NOTHROW(ne.validate());
}

TEST_CASE("custom substrate validation") {
    CHECK_NOTHROW(custom_substrate("x", 1.5, 1.0 * units::eV, 0.0));
    CHECK_THROWS_AS(custom_substrate("x", 1.0, 1.0 * units::eV, 0.0), ValidationError);
    CHECK_THROWS_AS(custom_substrate("x", 1.5, 0.0, 0.0), ValidationError);
    CHECK_THROWS_AS(custom_substrate("x", 1.5, 1.0 * units::eV, -1e-10), ValidationError);

    auto p = substrate(SubstrateKind::Helium4);
    p.image_factor *= 1.01;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("substrate kind names") {
    CHECK(parse_substrate_kind("helium") == SubstrateKind::Helium4);
    CHECK(parse_substrate_kind("He") == SubstrateKind::Helium4);
    CHECK(parse_substrate_kind("NEON") == SubstrateKind::Neon);
    CHECK(parse_substrate_kind("custom") == SubstrateKind::Custom);
    CHECK_THROWS_AS(parse_substrate_kind("argon"), ValidationError);
    for (auto k : {SubstrateKind::Helium4, SubstrateKind::Neon, SubstrateKind::Custom})
        CHECK(parse_substrate_kind(to_string(k)) == k);
}

TEST_CASE("substrate json round trip") {
    for (auto kind : {SubstrateKind::Helium4, SubstrateKind::Neon}) {
        const auto p = substrate(kind);
        const auto q = substrate_from_json(to_json(p), kind, p.name);
        CHECK(q.epsilon_r == p.epsilon_r);
        CHECK(q.image_factor == approx(p.image_factor).epsilon(1e-15));
        CHECK(q.barrier_height == approx(p.barrier_height).epsilon(1e-15));
        CHECK(q.offset == approx(p.offset).epsilon(1e-15));
        CHECK(q.nuclear_broadening.has_value() == p.nuclear_broadening.has_value());
    }
}

TEST_CASE("substrate json rejects unknown and missing keys") {
    auto j = to_json(substrate(SubstrateKind::Helium4));
    j["epsilon"] = 1.1;
    CHECK_THROWS_AS(substrate_from_json(j, SubstrateKind::Custom, "x"), ValidationError);
    auto k = to_json(substrate(SubstrateKind::Helium4));
    k.erase("z0_nm");
    CHECK_THROWS_AS(substrate_from_json(k, SubstrateKind::Custom, "x"), ValidationError);
}

TEST_CASE("constants json round trip") {
    const auto& pc = PhysicalConstants::si();
    const auto q = constants_from_json(to_json(pc));
    CHECK(q.elementary_charge == pc.elementary_charge);
    CHECK(q.reduced_planck == pc.reduced_planck);
    CHECK(q.rydberg_frequency == approx(pc.rydberg_frequency).epsilon(1e-15));
    auto j = to_json(pc);
    j["speed_of_light"] = 3e8;
    CHECK_THROWS_AS(constants_from_json(j), ValidationError);
    auto k = to_json(pc);
    k["planck_J_s"] = -1.0;
    CHECK_THROWS_AS(constants_from_json(k), ValidationError);
}
