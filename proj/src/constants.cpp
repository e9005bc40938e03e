#include "feq/constants.hpp"

namespace feq {

PhysicalConstants PhysicalConstants::from_base(double e, double h, double m_e, double eps0,
                                               double mu_b, double g) {
    PhysicalConstants pc{};
    pc.elementary_charge = e;
    pc.planck = h;
    pc.reduced_planck = h / kTwoPi;
    pc.electron_mass = m_e;
    pc.vacuum_permittivity = eps0;
    pc.bohr_magneton = mu_b;
    pc.g_factor = g;
    const double e2 = e * e;
    pc.rydberg_frequency = m_e * e2 * e2 / (8.0 * eps0 * eps0 * h * h * h);
    return pc;
}

const PhysicalConstants& PhysicalConstants::si() {
    static const PhysicalConstants constants =
        from_base(1.602176634e-19, 6.62607015e-34, 9.1093837015e-31, 8.8541878128e-12,
                  9.2740100783e-24, 2.00231930436256);
    return constants;
}

}  // namespace feq
