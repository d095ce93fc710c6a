#pragma once

// CODATA 2018 constants, frozen at compile time, and the conversion between
// laboratory laser parameters and the dimensionless pair (kappa, xi) used by
// the dynamics kernels. Scaling convention: energies in units of m c^2, time
// as the laser phase theta = omega t, so one optical cycle spans 2 pi.
// kappa = hbar k/(m c) is the photon momentum in Compton units and
// xi = |q| E_hat/(k^2 hbar c) measures the field against the harmonicity
// limit; xi = 1 marks the edge of the perturbative band.

#include <cmath>

namespace spinlight {

inline constexpr double pi = 3.14159265358979323846;

struct PhysicalConstants {
    double c        = 299792458.0;      // m/s, exact
    double hbar     = 1.054571817e-34;  // J s
    double m_e      = 9.1093837015e-31; // kg
    double q_e      = 1.602176634e-19;  // C, magnitude; the electron carries -q_e
    double eps0     = 8.8541878128e-12; // F/m
    double alpha_el = 7.2973525693e-3;  // fine-structure constant

    double mc2() const { return m_e * c * c; }
    // wavelength at which kappa = 1; the fourth-order resonance guard trips here
    double compton_wavelength() const { return 2.0 * pi * hbar / (m_e * c); }
};

inline const PhysicalConstants& constants() {
    static const PhysicalConstants table{};
    return table;
}

struct ScaledUnits {
    double kappa = 0.0;     // hbar k / (m c)
    double xi = 0.0;        // |q| E_hat / (k^2 hbar c)
    double time_unit = 0.0; // one laser period, s

    static ScaledUnits from_laser(double lambda, double E_hat,
                                  const PhysicalConstants& pc = constants()) {
        const double k = 2.0 * pi / lambda;
        ScaledUnits su;
        su.kappa = pc.hbar * k / (pc.m_e * pc.c);
        su.xi = pc.q_e * E_hat / (k * k * pc.hbar * pc.c);
        su.time_unit = lambda / pc.c;
        return su;
    }

    double lambda(const PhysicalConstants& pc = constants()) const {
        return 2.0 * pi * pc.hbar / (kappa * pc.m_e * pc.c);
    }

    double E_hat(const PhysicalConstants& pc = constants()) const {
        const double k = 2.0 * pi / lambda(pc);
        return xi * k * k * pc.hbar * pc.c / pc.q_e;
    }
};

}
