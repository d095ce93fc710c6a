#pragma once

// Laser configuration and the electromagnetic fields of the standing wave:
// two counterpropagating beams along x with equal wavelength and amplitude,
// elliptically polarized with opposite helicity so the electric fields add
// on the beam axis. All quantities SI. eta is the ellipticity phase: 0 is
// linear polarization, +-pi/2 circular. Beam 1 runs toward +x, beam 2
// toward -x.

#include <array>
#include <cmath>

#include "constants.hpp"
#include "errors.hpp"

namespace spinlight {

using Vec3 = std::array<double, 3>;

struct LaserConfig {
    double lambda = 0.0;   // wavelength, m
    double E_hat = 0.0;    // peak field of each beam, V/m
    double eta = 0.5 * pi; // ellipticity phase, rad, in (-pi, pi]
    double delta_T = 0.0;  // turn-on/off ramp duration, s
    double T_total = 0.0;  // total interaction time, s

    double k() const { return 2.0 * pi / lambda; }
    double omega(const PhysicalConstants& pc = constants()) const {
        return k() * pc.c;
    }
    double period(const PhysicalConstants& pc = constants()) const {
        return lambda / pc.c;
    }
    double cycles_total(const PhysicalConstants& pc = constants()) const {
        return T_total / period(pc);
    }
    double cycles_ramp(const PhysicalConstants& pc = constants()) const {
        return delta_T / period(pc);
    }

    void validate() const {
        if (!(lambda > 0.0))
            throw ConfigError("lambda must be positive");
        if (!(E_hat >= 0.0))
            throw ConfigError("E_hat must be nonnegative");
        if (!(eta > -pi && eta <= pi))
            throw ConfigError("eta out of range (-pi, pi]");
        if (!(delta_T >= 0.0))
            throw ConfigError("delta_T must be nonnegative");
        if (!(T_total > 0.0))
            throw ConfigError("T_total must be positive");
        if (!(2.0 * delta_T <= T_total))
            throw ConfigError("ramps overlap: need 2*delta_T <= T_total");
    }

    static LaserConfig from_scaled(double kappa, double xi, double eta,
                                   double delta_T_cycles, double T_cycles,
                                   const PhysicalConstants& pc = constants()) {
        ScaledUnits su;
        su.kappa = kappa;
        su.xi = xi;
        LaserConfig cfg;
        cfg.lambda = su.lambda(pc);
        cfg.E_hat = su.E_hat(pc);
        cfg.eta = eta;
        const double period = cfg.lambda / pc.c;
        cfg.delta_T = delta_T_cycles * period;
        cfg.T_total = T_cycles * period;
        return cfg;
    }
};

// sin^2 turn-on/off envelope; identically 1 on the flat top and 0 outside
// the interaction interval. delta_T = 0 gives a rectangular window.
inline double window(double t, const LaserConfig& cfg) {
    if (t < 0.0 || t > cfg.T_total)
        return 0.0;
    if (cfg.delta_T > 0.0) {
        if (t < cfg.delta_T) {
            const double s = std::sin(0.5 * pi * t / cfg.delta_T);
            return s * s;
        }
        if (t > cfg.T_total - cfg.delta_T) {
            const double s = std::sin(0.5 * pi * (cfg.T_total - t) / cfg.delta_T);
            return s * s;
        }
    }
    return 1.0;
}

struct FieldPair {
    Vec3 E; // V/m
    Vec3 B; // T
};

// Superposed standing-wave fields. E is an elliptical field rotating
// uniformly in the yz plane at the electric antinodes; B vanishes there.
inline FieldPair standing_fields(double x, double t, const LaserConfig& cfg,
                                 const PhysicalConstants& pc = constants()) {
    const double kx = cfg.k() * x;
    const double wt = cfg.omega(pc) * t;
    const double ce = 2.0 * cfg.E_hat * std::cos(kx);
    const double cb = 2.0 * (cfg.E_hat / pc.c) * std::sin(kx);
    FieldPair f;
    f.E = {0.0, ce * std::cos(wt), ce * std::cos(wt - cfg.eta)};
    f.B = {0.0, -cb * std::sin(wt - cfg.eta), cb * std::sin(wt)};
    return f;
}

struct BeamFields {
    Vec3 E1, B1; // beam running toward +x
    Vec3 E2, B2; // beam running toward -x
};

inline BeamFields beam_fields(double x, double t, const LaserConfig& cfg,
                              const PhysicalConstants& pc = constants()) {
    const double p1 = cfg.k() * x - cfg.omega(pc) * t;
    const double p2 = cfg.k() * x + cfg.omega(pc) * t;
    const double E = cfg.E_hat;
    const double eta = cfg.eta;
    BeamFields f;
    f.E1 = {0.0, E * std::cos(p1), E * std::cos(p1 + eta)};
    f.B1 = {0.0, -(E / pc.c) * std::cos(p1 + eta), (E / pc.c) * std::cos(p1)};
    f.E2 = {0.0, E * std::cos(p2), E * std::cos(p2 - eta)};
    f.B2 = {0.0, (E / pc.c) * std::cos(p2 - eta), -(E / pc.c) * std::cos(p2)};
    return f;
}

struct BeamPotentials {
    Vec3 A1, A2; // vector potentials, V s/m
    Vec3 C1, C2; // dual potentials with B = -dC/dt / c, E = -c curl C
};

// Per-beam potentials in radiation gauge. They satisfy E_i = -dA_i/dt,
// B_i = curl A_i, and the dual relations above; the tests check these by
// finite differences.
inline BeamPotentials beam_potentials(double x, double t, const LaserConfig& cfg,
                                      const PhysicalConstants& pc = constants()) {
    const double p1 = cfg.k() * x - cfg.omega(pc) * t;
    const double p2 = cfg.k() * x + cfg.omega(pc) * t;
    const double a = cfg.E_hat / cfg.omega(pc);
    const double eta = cfg.eta;
    BeamPotentials p;
    p.C1 = {0.0, -a * std::sin(p1 + eta), a * std::sin(p1)};
    p.A1 = {0.0, a * std::sin(p1), a * std::sin(p1 + eta)};
    p.C2 = {0.0, -a * std::sin(p2 - eta), a * std::sin(p2)};
    p.A2 = {0.0, -a * std::sin(p2), -a * std::sin(p2 - eta)};
    return p;
}

// Windowed vector potential of the superposition; this is the A that enters
// the momentum-space couplings.
inline Vec3 combined_potential_A(double x, double t, const LaserConfig& cfg,
                                 const PhysicalConstants& pc = constants()) {
    const double w = window(t, cfg);
    const double wt = cfg.omega(pc) * t;
    const double f = -2.0 * w * (cfg.E_hat / cfg.omega(pc)) * std::cos(cfg.k() * x);
    return {0.0, f * std::sin(wt), f * std::sin(wt - cfg.eta)};
}

// Cycle-averaged photonic spin density of one beam, eps0 <E x A>. Both
// beams carry the same value with the same sign along +x; it peaks at
// circular polarization and vanishes for linear.
inline Vec3 photonic_spin_density_per_beam(const LaserConfig& cfg,
                                           const PhysicalConstants& pc = constants()) {
    const double sx = pc.eps0 * cfg.E_hat * cfg.E_hat * cfg.lambda *
                      std::sin(cfg.eta) / (2.0 * pi * pc.c);
    return {sx, 0.0, 0.0};
}

inline Vec3 photonic_spin_density(const LaserConfig& cfg,
                                  const PhysicalConstants& pc = constants()) {
    Vec3 s = photonic_spin_density_per_beam(cfg, pc);
    s[0] *= 2.0;
    return s;
}

// Single-beam intensity, W/m^2.
inline double intensity(const LaserConfig& cfg,
                        const PhysicalConstants& pc = constants()) {
    return pc.eps0 * pc.c * cfg.E_hat * cfg.E_hat;
}

}
