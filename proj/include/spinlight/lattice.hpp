#pragma once

// Momentum lattice and free-spinor data for the plane-wave basis e^{i n k x}.
// Spinor labels gamma: 0 = +up, 1 = +down, 2 = -up, 3 = -down, so
// beta = diag(+1,+1,-1,-1). In the standard representation the bispinors of
// the x-directed modes are real, which makes the alpha_y hop blocks purely
// imaginary and the alpha_z hop blocks purely real.

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <complex>
#include <vector>

#include "constants.hpp"
#include "errors.hpp"

namespace spinlight {

using cd = std::complex<double>;

struct MomentumLattice {
    double k = 0.0; // wave number, 1/m
    int n_max = 0;  // modes n in {-n_max, ..., +n_max}

    int n_modes() const { return 2 * n_max + 1; }

    void validate() const {
        if (!(k > 0.0))
            throw ConfigError("lattice wave number must be positive");
        if (n_max < 4)
            throw ConfigError("n_max must be >= 4");
    }
};

// Free relativistic energy of mode n, in joules.
inline double mode_energy(int n, const MomentumLattice& lat,
                          const PhysicalConstants& pc = constants()) {
    assert(std::abs(n) <= lat.n_max);
    return std::hypot(pc.mc2(), n * pc.c * lat.k * pc.hbar);
}

// alpha_y and alpha_z in the standard representation: off-diagonal
// sigma blocks.
inline Eigen::Matrix4cd alpha_y_matrix() {
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    const cd i(0.0, 1.0);
    a(0, 3) = -i;
    a(1, 2) = i;
    a(2, 1) = -i;
    a(3, 0) = i;
    return a;
}

inline Eigen::Matrix4cd alpha_z_matrix() {
    Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
    a(0, 2) = 1.0;
    a(1, 3) = -1.0;
    a(2, 0) = 1.0;
    a(3, 1) = -1.0;
    return a;
}

struct SpinorTable {
    double kappa = 0.0;
    int n_max = 0;
    std::vector<double> eps;     // E_n/(m c^2), index n + n_max
    std::vector<double> d_plus;  // sqrt((1 + 1/eps)/2)
    std::vector<double> d_minus; // sgn(n) sqrt((1 - 1/eps)/2); zero at n = 0
    // bispinors; row = label gamma, column = spinor component
    std::vector<Eigen::Matrix4d> u;
    // hop blocks Y[g][g'] = u_n^g . alpha_y . u_n'^g' for n' = n +- 1;
    // index i = n + n_max, *_up valid for i < 2 n_max, *_dn for i > 0
    std::vector<Eigen::Matrix4cd> Y_up, Z_up, Y_dn, Z_dn;

    int idx(int n) const { return n + n_max; }

    // overlap of the large and small components of adjacent modes; these
    // control the spin-keeping and spin-flipping parts of the coupling
    double t_coef(int n, int np) const {
        return d_plus[idx(n)] * d_plus[idx(np)] + d_minus[idx(n)] * d_minus[idx(np)];
    }
    double r_coef(int n, int np) const {
        return d_minus[idx(n)] * d_plus[idx(np)] - d_plus[idx(n)] * d_minus[idx(np)];
    }

    static SpinorTable build(double kappa, int n_max) {
        if (!(kappa > 0.0))
            throw ConfigError("kappa must be positive");
        if (n_max < 1)
            throw ConfigError("SpinorTable needs n_max >= 1");
        SpinorTable tab;
        tab.kappa = kappa;
        tab.n_max = n_max;
        const int nm = 2 * n_max + 1;
        tab.eps.resize(nm);
        tab.d_plus.resize(nm);
        tab.d_minus.resize(nm);
        tab.u.resize(nm);
        for (int i = 0; i < nm; ++i) {
            const int n = i - n_max;
            const double e = std::sqrt(1.0 + double(n) * n * kappa * kappa);
            tab.eps[i] = e;
            tab.d_plus[i] = std::sqrt(0.5 * (1.0 + 1.0 / e));
            const double dm = std::sqrt(0.5 * (1.0 - 1.0 / e));
            tab.d_minus[i] = (n > 0) ? dm : (n < 0 ? -dm : 0.0);
            const double dp = tab.d_plus[i];
            const double dmn = tab.d_minus[i];
            Eigen::Matrix4d um = Eigen::Matrix4d::Zero();
            um.row(0) << dp, 0.0, 0.0, dmn;  // +up
            um.row(1) << 0.0, dp, dmn, 0.0;  // +down
            um.row(2) << 0.0, -dmn, dp, 0.0; // -up
            um.row(3) << -dmn, 0.0, 0.0, dp; // -down
            tab.u[i] = um;
        }
        const Eigen::Matrix4cd ay = alpha_y_matrix();
        const Eigen::Matrix4cd az = alpha_z_matrix();
        tab.Y_up.assign(nm, Eigen::Matrix4cd::Zero());
        tab.Z_up.assign(nm, Eigen::Matrix4cd::Zero());
        tab.Y_dn.assign(nm, Eigen::Matrix4cd::Zero());
        tab.Z_dn.assign(nm, Eigen::Matrix4cd::Zero());
        for (int i = 0; i < nm; ++i) {
            const Eigen::Matrix4cd ui = tab.u[i].cast<cd>();
            if (i + 1 < nm) {
                const Eigen::Matrix4cd uj = tab.u[i + 1].cast<cd>();
                tab.Y_up[i] = ui * ay * uj.transpose();
                tab.Z_up[i] = ui * az * uj.transpose();
            }
            if (i - 1 >= 0) {
                const Eigen::Matrix4cd uj = tab.u[i - 1].cast<cd>();
                tab.Y_dn[i] = ui * ay * uj.transpose();
                tab.Z_dn[i] = ui * az * uj.transpose();
            }
        }
        return tab;
    }

    static SpinorTable build(const MomentumLattice& lat,
                             const PhysicalConstants& pc = constants()) {
        lat.validate();
        return build(pc.hbar * lat.k / (pc.m_e * pc.c), lat.n_max);
    }
};

}
