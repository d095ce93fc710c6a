#pragma once

// Momentum-space Dirac dynamics in scaled units. Amplitudes are ordered
// (n + n_max)*4 + gamma with gamma as in lattice.hpp. Per mode,
//
//   dc_n/dtheta = -(i/kappa) [ eps_n beta c_n
//       + s_q xi kappa w(theta) sum_{n' = n+-1}
//         ( Y_{n n'} sin(theta) + Z_{n n'} sin(theta - eta) ) c_{n'} ]
//
// with theta = omega t and s_q = -1 for the electron. The nearest-neighbor
// coupling comes from the p.A term of the standing wave; the A^2 term is
// spatially uniform here only after the gauge split and does not appear.
// Interaction-picture amplitudes a relate to c by c = e^{-i r theta} a with
// the per-amplitude rate r = +-eps_n/kappa.

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "constants.hpp"
#include "errors.hpp"
#include "laser.hpp"
#include "lattice.hpp"

namespace spinlight {

struct DiracParams {
    double kappa = 0.0;
    double xi = 0.0;
    double eta = 0.5 * pi;
    double s_q = -1.0; // sign of the charge
    int n_max = 32;
};

class DiracSystem {
public:
    explicit DiracSystem(const DiracParams& p)
        : p_(p), table_(SpinorTable::build(p.kappa, p.n_max)) {
        const int nm = 2 * p_.n_max + 1;
        rate_.resize(4 * nm);
        free_coef_.resize(4 * nm);
        for (int i = 0; i < nm; ++i) {
            const double r = table_.eps[i] / p_.kappa;
            for (int g = 0; g < 4; ++g) {
                const double sgn = (g < 2) ? 1.0 : -1.0; // beta diagonal
                rate_[4 * i + g] = sgn * r;
                free_coef_[4 * i + g] = cd(0.0, -sgn * r);
            }
        }
    }

    int dim() const { return 4 * (2 * p_.n_max + 1); }
    const DiracParams& params() const { return p_; }
    const SpinorTable& table() const { return table_; }

    // c = e^{-i rate theta} a between the pictures
    const Eigen::VectorXd& phase_rate() const { return rate_; }
    // diagonal of the free part of dc/dtheta
    const Eigen::VectorXcd& free_coef() const { return free_coef_; }

    // out += -(i/kappa) V_scaled(theta) y, the nearest-neighbor coupling only
    void add_interaction(double theta, double w,
                         const Eigen::Ref<const Eigen::MatrixXcd>& y,
                         Eigen::MatrixXcd& out) const {
        const double g = p_.s_q * p_.xi * p_.kappa * w;
        const cd mik(0.0, -1.0 / p_.kappa);
        const cd ca = mik * (g * std::sin(theta));
        const cd cb = mik * (g * std::sin(theta - p_.eta));
        const int nm = 2 * p_.n_max + 1;
        Eigen::Matrix4cd wblk;
        for (int i = 0; i < nm; ++i) {
            if (i + 1 < nm) {
                wblk = ca * table_.Y_up[i] + cb * table_.Z_up[i];
                out.middleRows(4 * i, 4).noalias() += wblk * y.middleRows(4 * (i + 1), 4);
            }
            if (i - 1 >= 0) {
                wblk = ca * table_.Y_dn[i] + cb * table_.Z_dn[i];
                out.middleRows(4 * i, 4).noalias() += wblk * y.middleRows(4 * (i - 1), 4);
            }
        }
    }

    // longitudinal spin in units of hbar; valid in either picture
    double spin_z(const Eigen::Ref<const Eigen::VectorXcd>& y) const {
        const int nm = 2 * p_.n_max + 1;
        double s = 0.0;
        for (int i = 0; i < nm; ++i) {
            s += std::norm(y[4 * i + 0]) + std::norm(y[4 * i + 2]);
            s -= std::norm(y[4 * i + 1]) + std::norm(y[4 * i + 3]);
        }
        return 0.5 * s;
    }

    static constexpr bool has_density = false;
    double density_quarter(const Eigen::Ref<const Eigen::VectorXcd>&) const {
        return 0.0;
    }

    // initial state: mode n = 0, positive energy, given spin projection
    Eigen::VectorXcd initial_state(bool spin_up = true) const {
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim());
        c[4 * p_.n_max + (spin_up ? 0 : 1)] = 1.0;
        return c;
    }

private:
    DiracParams p_;
    SpinorTable table_;
    Eigen::VectorXd rate_;
    Eigen::VectorXcd free_coef_;
};

// Matrix element of the interaction between basis states (n', gamma') and
// (n, gamma) at time t, in joules. Vanishes unless |n - n'| = 1. q = -e.
inline cd interaction_element(int n, int np, int gamma, int gamma_p, double t,
                              const LaserConfig& cfg, const SpinorTable& tab,
                              const PhysicalConstants& pc = constants()) {
    if (std::abs(n - np) != 1)
        return cd(0.0, 0.0);
    assert(std::abs(n) <= tab.n_max && std::abs(np) <= tab.n_max);
    const int i = tab.idx(n);
    const Eigen::Matrix4cd& Y = (np == n + 1) ? tab.Y_up[i] : tab.Y_dn[i];
    const Eigen::Matrix4cd& Z = (np == n + 1) ? tab.Z_up[i] : tab.Z_dn[i];
    const double wt = cfg.omega(pc) * t;
    const double pref = window(t, cfg) * (-pc.q_e) * cfg.E_hat / cfg.k();
    return pref * (Y(gamma, gamma_p) * std::sin(wt) +
                   Z(gamma, gamma_p) * std::sin(wt - cfg.eta));
}

}
