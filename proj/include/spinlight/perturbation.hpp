#pragma once

// Closed-form layer: precession frequencies, the second- and fourth-order
// secular propagator blocks on the (n = 0, positive energy) spin space, the
// spin-flip law, and the perturbative field window. The enumerators work in
// scaled units (energies in m c^2, one cycle = 2 pi) and convert at the
// interface. Closed-form frequencies assume circular polarization; the
// simulated frequency follows Omega sin(eta) away from it.
//
// Energy denominators are protected by a guard band: a structurally exact
// zero (the ponderomotive self-channel at fourth order) is skipped by rule
// since it carries no secular spin term, while an accidental near-zero
// raises ResonanceError. The genuine poles sit at kappa = 1 for the
// fourth-order sum (lambda equal to the Compton wavelength) and kappa = 2
// for the second-order Pauli block.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "constants.hpp"
#include "errors.hpp"
#include "laser.hpp"
#include "lattice.hpp"

namespace spinlight {

// Precession frequency of the longitudinal spin at circular polarization,
// rad/s. Scaled form: Omega/omega = xi^4 kappa^2.
inline double omega_dirac(const LaserConfig& cfg,
                          const PhysicalConstants& pc = constants()) {
    const double qE = pc.q_e * cfg.E_hat;
    const double twopi5 = std::pow(2.0 * pi, 5);
    return std::pow(qE, 4) * std::pow(cfg.lambda, 5) /
           (twopi5 * pc.hbar * pc.hbar * pc.m_e * pc.m_e * std::pow(pc.c, 5));
}

// Same frequency written through the photonic spin density of the wave,
// rho_sigma I lambda^4 alpha^2 / (2 pi^2 m^2 c^3) evaluated at circular
// polarization; algebraically identical to omega_dirac.
inline double omega_dirac_via_spin_density(const LaserConfig& cfg,
                                           const PhysicalConstants& pc = constants()) {
    LaserConfig circ = cfg;
    circ.eta = 0.5 * pi;
    const double rho_sigma = photonic_spin_density(circ, pc)[0];
    return rho_sigma * intensity(circ, pc) * std::pow(cfg.lambda, 4) *
           pc.alpha_el * pc.alpha_el /
           (2.0 * pi * pi * pc.m_e * pc.m_e * std::pow(pc.c, 3));
}

// Global phase accumulation rate of the fourth-order identity part,
// Omega_phi = Omega / kappa.
inline double omega_phase(const LaserConfig& cfg,
                          const PhysicalConstants& pc = constants()) {
    const double qE = pc.q_e * cfg.E_hat;
    const double twopi6 = std::pow(2.0 * pi, 6);
    return std::pow(qE, 4) * std::pow(cfg.lambda, 6) /
           (twopi6 * std::pow(pc.hbar, 3) * pc.m_e * std::pow(pc.c, 4));
}

// Second-order (one-photon-pair) precession frequency of the Pauli models,
// Omega_P/omega = xi^2 kappa^2.
inline double omega_pauli(const LaserConfig& cfg,
                          const PhysicalConstants& pc = constants()) {
    const double qE = pc.q_e * cfg.E_hat;
    return qE * qE * cfg.lambda /
           (2.0 * pi * pc.m_e * pc.m_e * std::pow(pc.c, 3));
}

// Probability of finding the spin flipped at time t; Omega^2 t^2 / 4 for
// short times.
inline double spin_flip_probability(double t, double Omega) {
    const double s = std::sin(0.5 * Omega * t);
    return s * s;
}

struct HarmonicityRatios {
    double xi = 0.0;        // |q| E_hat / (k^2 hbar c)
    double secondary = 0.0; // |q| E_hat / (2 k m c^2) = xi kappa / 2
};

inline HarmonicityRatios harmonicity_ratio(const LaserConfig& cfg,
                                           const PhysicalConstants& pc = constants()) {
    const ScaledUnits su = ScaledUnits::from_laser(cfg.lambda, cfg.E_hat, pc);
    return {su.xi, 0.5 * su.xi * su.kappa};
}

struct PerturbativeBounds {
    double E_min = 0.0; // weakest field giving a full flip within N cycles, V/m
    double E_max = 0.0; // harmonicity limit xi = 1, V/m
    bool nonempty = false;
};

inline PerturbativeBounds perturbative_bounds(double lambda, double N_cycles,
                                              const PhysicalConstants& pc = constants()) {
    if (!(lambda > 0.0))
        throw ConfigError("lambda must be positive");
    if (!(N_cycles > 0.0))
        throw ConfigError("cycle budget must be positive");
    PerturbativeBounds b;
    b.E_max = std::pow(2.0 * pi, 2) * pc.c * pc.hbar / (pc.q_e * lambda * lambda);
    const double num = std::pow(2.0 * pi, 6) * std::pow(pc.c, 6) * pc.hbar * pc.hbar *
                       pc.m_e * pc.m_e;
    const double den = 2.0 * N_cycles * std::pow(pc.q_e, 4) * std::pow(lambda, 6);
    b.E_min = std::pow(num / den, 0.25);
    b.nonempty = b.E_min <= b.E_max;
    return b;
}

namespace detail {

inline void check_denominator(double D, double guard_band, const char* where) {
    if (std::abs(D) < guard_band)
        throw ResonanceError(std::string(where) +
                             ": energy denominator within the resonance guard band (|D| = " +
                             std::to_string(std::abs(D)) + " m c^2)");
}

} // namespace detail

// Second-order secular block of the Dirac model: the eight-fraction sum
//   M = sum_{m = +-1, zeta, mu} W_{-mu}[0,m] W_mu[m,0] / (E_0 - zeta E_m - mu hbar omega)
// on the (n = 0, +) spin space, in joules. Evaluates to the full
// position-averaged A^2 energy (q E_hat)^2/(k^2 m c^2) times the identity;
// the intermediate negative-energy and photon-sign channels conspire to
// cancel every spin-dependent piece.
inline Eigen::Matrix2cd u2_dirac_sum(const LaserConfig& cfg,
                                     const PhysicalConstants& pc = constants(),
                                     double guard_band = 1e-6) {
    const ScaledUnits su = ScaledUnits::from_laser(cfg.lambda, cfg.E_hat, pc);
    const double kappa = su.kappa, xi = su.xi, eta = cfg.eta;
    const SpinorTable tab = SpinorTable::build(kappa, 1);
    const auto Wblk = [&](int mu, int n_to, int n_from) -> Eigen::Matrix4cd {
        const int i = tab.idx(n_to);
        const Eigen::Matrix4cd& Y = (n_from == n_to + 1) ? tab.Y_up[i] : tab.Y_dn[i];
        const Eigen::Matrix4cd& Z = (n_from == n_to + 1) ? tab.Z_up[i] : tab.Z_dn[i];
        return cd(0.0, -0.5 * mu) * (Y + std::polar(1.0, -mu * eta) * Z);
    };
    Eigen::Matrix2cd M = Eigen::Matrix2cd::Zero();
    for (int m = -1; m <= 1; m += 2) {
        const double eps_m = tab.eps[tab.idx(m)];
        for (int zeta = -1; zeta <= 1; zeta += 2) {
            const int zoff = (zeta > 0) ? 0 : 2;
            for (int mu = -1; mu <= 1; mu += 2) {
                const double D = 1.0 - zeta * eps_m - mu * kappa;
                detail::check_denominator(D, guard_band, "u2_dirac");
                const Eigen::Matrix2cd a = Wblk(-mu, 0, m).block<2, 2>(0, zoff);
                const Eigen::Matrix2cd b = Wblk(mu, m, 0).block<2, 2>(zoff, 0);
                M += (a * b) / D;
            }
        }
    }
    return (xi * kappa) * (xi * kappa) * pc.mc2() * M;
}

// Second-order propagator of the Dirac model at time t,
// U2(t) = -(i/hbar) M t e^{-i E_0 t/hbar} with M from u2_dirac_sum; spin
// diagonal, so the off-diagonal entries vanish identically.
inline Eigen::Matrix2cd u2_dirac(double t, const LaserConfig& cfg,
                                 const PhysicalConstants& pc = constants()) {
    const double pond = std::pow(pc.q_e * cfg.E_hat / cfg.k(), 2) / (pc.m_e * pc.c * pc.c);
    const cd phase = std::polar(1.0, -pc.mc2() * t / pc.hbar);
    return cd(0.0, -1.0) * (pond * t / pc.hbar) * phase * Eigen::Matrix2cd::Identity();
}

// Second-order secular block of the nonrelativistic Pauli model (magnetic
// vertex part; the spatially uniform A^2 shift is a removable global phase),
// in joules, with U2(t) = -(i/hbar) M t. The identity part enters with the
// opposite sign to the spin part:
//   M = -hbar [ (Omega_P/2) sigma_x - (Omega_P kappa/4) 1 ] / (1 - kappa^2/4),
// equivalently -i U2(t)' = (q^2 E^2 hbar /(2 m^2 c^2)) [ -p 1 + hbar omega sigma_x ]
// / (p^2 - (hbar omega)^2) with p = k^2 hbar^2/(2 m). The denominator
// vanishes at kappa = 2, where ResonanceError is raised.
inline Eigen::Matrix2cd u2_pauli_sum(const LaserConfig& cfg,
                                     const PhysicalConstants& pc = constants(),
                                     double guard_band = 1e-6) {
    const ScaledUnits su = ScaledUnits::from_laser(cfg.lambda, cfg.E_hat, pc);
    const double kappa = su.kappa, xi = su.xi, eta = cfg.eta, s_q = -1.0;
    Eigen::Matrix2cd sy, sz;
    sy << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
    sz << cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0);
    const double g = 0.5 * s_q * xi * kappa * kappa;
    // hop structure (c_{n-1} - c_{n+1}): +1 when from = to - 1, else -1
    const auto hop_sign = [](int to, int from) { return (from == to - 1) ? 1.0 : -1.0; };
    const auto W = [&](int mu, int to, int from) -> Eigen::Matrix2cd {
        return (g * 0.5 * mu * hop_sign(to, from)) *
               (sz - std::polar(1.0, -mu * eta) * sy);
    };
    Eigen::Matrix2cd M = Eigen::Matrix2cd::Zero();
    for (int m = -1; m <= 1; m += 2) {
        for (int mu = -1; mu <= 1; mu += 2) {
            const double D = -0.5 * kappa * kappa - mu * kappa;
            detail::check_denominator(D, guard_band, "u2_pauli");
            M += (W(-mu, 0, m) * W(mu, m, 0)) / D;
        }
    }
    return pc.mc2() * M;
}

inline Eigen::Matrix2cd u2_pauli(double t, const LaserConfig& cfg,
                                 const PhysicalConstants& pc = constants()) {
    return cd(0.0, -1.0) * (t / pc.hbar) * u2_pauli_sum(cfg, pc);
}

// Small-kappa limit of u2_pauli.
inline Eigen::Matrix2cd u2_pauli_limit(double t, const LaserConfig& cfg,
                                       const PhysicalConstants& pc = constants()) {
    const ScaledUnits su = ScaledUnits::from_laser(cfg.lambda, cfg.E_hat, pc);
    const double OmP = omega_pauli(cfg, pc);
    Eigen::Matrix2cd sx;
    sx << cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0);
    return cd(0.0, 1.0) * t *
           (0.5 * OmP * sx - 0.25 * OmP * su.kappa * Eigen::Matrix2cd::Identity());
}

struct U4Secular {
    Eigen::Matrix2cd M;            // rad/s; U4(t) ~ i M t e^{-i E_0 t/hbar}
    long terms_kept = 0;
    long terms_skipped = 0;        // structurally degenerate ponderomotive channels
    double min_abs_denominator = 0.0; // scaled, units of m c^2
};

// Fourth-order secular coefficient of the Dirac model on the (n = 0, +)
// spin space. Momentum paths visit |n| <= 2; photon signs are filtered for
// zero net frequency. The sigma_x part reproduces (Omega/2) sin(eta)
// exactly; the identity part of the faithful sum is Omega_phi/4.
inline U4Secular u4_dirac_secular(const LaserConfig& cfg,
                                  const PhysicalConstants& pc = constants(),
                                  double guard_band = 1e-6) {
    const ScaledUnits su = ScaledUnits::from_laser(cfg.lambda, cfg.E_hat, pc);
    const double kappa = su.kappa, xi = su.xi, eta = cfg.eta;
    const SpinorTable tab = SpinorTable::build(kappa, 2);
    const auto Wblk = [&](int mu, int n_to, int n_from) -> Eigen::Matrix4cd {
        const int i = tab.idx(n_to);
        const Eigen::Matrix4cd& Y = (n_from == n_to + 1) ? tab.Y_up[i] : tab.Y_dn[i];
        const Eigen::Matrix4cd& Z = (n_from == n_to + 1) ? tab.Z_up[i] : tab.Z_dn[i];
        return cd(0.0, -0.5 * mu) * (Y + std::polar(1.0, -mu * eta) * Z);
    };
    const auto blk = [](const Eigen::Matrix4cd& M4, int zr, int zc) -> Eigen::Matrix2cd {
        return M4.block<2, 2>(zr > 0 ? 0 : 2, zc > 0 ? 0 : 2);
    };
    static const int paths[6][3] = {{1, 2, 1},   {1, 0, 1},   {1, 0, -1},
                                    {-1, -2, -1}, {-1, 0, -1}, {-1, 0, 1}};
    const double pref = std::pow(xi * kappa, 4);
    const cd i3(0.0, -1.0); // i^3
    U4Secular res;
    res.min_abs_denominator = std::numeric_limits<double>::infinity();
    Eigen::Matrix2cd S = Eigen::Matrix2cd::Zero();
    for (const auto& path : paths) {
        const int n1 = path[0], n2 = path[1], n3 = path[2];
        const double e1n = tab.eps[tab.idx(n1)];
        const double e2n = tab.eps[tab.idx(n2)];
        const double e3n = tab.eps[tab.idx(n3)];
        for (int z1 = -1; z1 <= 1; z1 += 2)
        for (int z2 = -1; z2 <= 1; z2 += 2)
        for (int z3 = -1; z3 <= 1; z3 += 2)
        for (int s1 = -1; s1 <= 1; s1 += 2)
        for (int s2 = -1; s2 <= 1; s2 += 2)
        for (int s3 = -1; s3 <= 1; s3 += 2)
        for (int s4 = -1; s4 <= 1; s4 += 2) {
            if (s1 + s2 + s3 + s4 != 0)
                continue; // keep only the secular (zero net frequency) terms
            // ponderomotive self-channel: returns to (0, +) with the photon
            // pair undone; exactly degenerate, carries no secular spin part
            if (n2 == 0 && z2 == 1 && s1 + s2 == 0) {
                ++res.terms_skipped;
                continue;
            }
            const double D1 = 1.0 - z1 * e1n - s1 * kappa;
            const double D2 = 1.0 - z2 * e2n - (s1 + s2) * kappa;
            const double D3 = 1.0 - z3 * e3n - (s1 + s2 + s3) * kappa;
            for (double D : {D1, D2, D3}) {
                res.min_abs_denominator = std::min(res.min_abs_denominator, std::abs(D));
                detail::check_denominator(D, guard_band, "u4_dirac");
            }
            const Eigen::Matrix2cd P = blk(Wblk(s4, 0, n3), 1, z3) *
                                       blk(Wblk(s3, n3, n2), z3, z2) *
                                       blk(Wblk(s2, n2, n1), z2, z1) *
                                       blk(Wblk(s1, n1, 0), z1, 1);
            S += (pref * i3 / (D1 * D2 * D3)) * P;
            ++res.terms_kept;
        }
    }
    // S is dU4/dtau in scaled time; convert the slope to rad/s
    res.M = cd(0.0, -1.0) * S * (pc.mc2() / pc.hbar);
    return res;
}

struct PerturbativeSummary {
    double Omega = 0.0;     // rad/s
    double Omega_phi = 0.0; // rad/s
    double Omega_P = 0.0;   // rad/s
    double kappa = 0.0, xi = 0.0;
    double secondary_condition = 0.0; // xi kappa / 2
    double E_min = 0.0, E_max = 0.0;  // V/m, for the given cycle budget
    bool nonempty = false;
    bool perturbative = false; // xi <= 1 and secondary condition < 1
};

inline PerturbativeSummary perturbative_summary(const LaserConfig& cfg, double N_cycles,
                                                const PhysicalConstants& pc = constants()) {
    cfg.validate();
    const ScaledUnits su = ScaledUnits::from_laser(cfg.lambda, cfg.E_hat, pc);
    PerturbativeSummary s;
    s.Omega = omega_dirac(cfg, pc);
    s.Omega_phi = omega_phase(cfg, pc);
    s.Omega_P = omega_pauli(cfg, pc);
    s.kappa = su.kappa;
    s.xi = su.xi;
    s.secondary_condition = 0.5 * su.xi * su.kappa;
    const PerturbativeBounds b = perturbative_bounds(cfg.lambda, N_cycles, pc);
    s.E_min = b.E_min;
    s.E_max = b.E_max;
    s.nonempty = b.nonempty;
    s.perturbative = (s.xi <= 1.0) && (s.secondary_condition < 1.0);
    return s;
}

}
