#pragma once

// Momentum-space Pauli dynamics, relativistic and nonrelativistic variants,
// in scaled units. Two amplitudes per mode, ordered (n + n_max)*2 + s with
// s = 0 up, s = 1 down. Per mode,
//
//   dc_n/dtheta = -(i/kappa) [ (n^2 kappa^2/2) c_n
//     + (xi^2 kappa^2/2) w^2 (1 - cos(eta) cos(2 theta - eta)) (c_{n-2} + 2 c_n + c_{n+2})
//     + i s_q (xi kappa^2/2) w ( -sigma_y sin(theta - eta) + sigma_z sin(theta) ) (c_{n-1} - c_{n+1})
//     + rel * (xi^2 kappa^3 sin(eta)/4) w^2 sigma_x (c_{n-2} + 2 c_n + c_{n+2}) ]
//
// The sigma_x term is the leading relativistic correction (induced by the
// crossed A fields of the two beams); rel = 0 gives the nonrelativistic
// model. Interaction-picture rate per mode is n^2 kappa/2.

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "constants.hpp"
#include "errors.hpp"
#include "lattice.hpp"

namespace spinlight {

struct PauliParams {
    double kappa = 0.0;
    double xi = 0.0;
    double eta = 0.5 * pi;
    double s_q = -1.0;
    int n_max = 32;
    bool relativistic = true;
};

class PauliSystem {
public:
    explicit PauliSystem(const PauliParams& p) : p_(p) {
        if (!(p_.kappa > 0.0))
            throw ConfigError("kappa must be positive");
        if (p_.n_max < 4)
            throw ConfigError("n_max must be >= 4");
        const int nm = 2 * p_.n_max + 1;
        rate_.resize(2 * nm);
        free_coef_.resize(2 * nm);
        for (int i = 0; i < nm; ++i) {
            const double n = i - p_.n_max;
            const double r = 0.5 * n * n * p_.kappa;
            rate_[2 * i] = rate_[2 * i + 1] = r;
            free_coef_[2 * i] = free_coef_[2 * i + 1] = cd(0.0, -r);
        }
    }

    int dim() const { return 2 * (2 * p_.n_max + 1); }
    const PauliParams& params() const { return p_; }
    const Eigen::VectorXd& phase_rate() const { return rate_; }
    const Eigen::VectorXcd& free_coef() const { return free_coef_; }

    void add_interaction(double theta, double w,
                         const Eigen::Ref<const Eigen::MatrixXcd>& y,
                         Eigen::MatrixXcd& out) const {
        const cd mik(0.0, -1.0 / p_.kappa);
        const double w2 = w * w;
        const double smear = 1.0 - std::cos(p_.eta) * std::cos(2.0 * theta - p_.eta);
        // coefficient of the two-step comb c_{n-2} + 2 c_n + c_{n+2}
        Eigen::Matrix2cd comb_blk = Eigen::Matrix2cd::Zero();
        const cd cpond = mik * (0.5 * p_.xi * p_.xi * p_.kappa * p_.kappa * w2 * smear);
        comb_blk(0, 0) = cpond;
        comb_blk(1, 1) = cpond;
        if (p_.relativistic) {
            const cd csx = mik * (0.25 * p_.xi * p_.xi * p_.kappa * p_.kappa * p_.kappa *
                                  std::sin(p_.eta) * w2);
            comb_blk(0, 1) += csx;
            comb_blk(1, 0) += csx;
        }
        // magnetic vertex on the one-step difference c_{n-1} - c_{n+1}
        const cd cmag = mik * cd(0.0, 1.0) * (0.5 * p_.s_q * p_.xi * p_.kappa * p_.kappa * w);
        const double sy = -std::sin(theta - p_.eta);
        const double sz = std::sin(theta);
        Eigen::Matrix2cd mag_blk;
        mag_blk(0, 0) = cmag * sz;
        mag_blk(1, 1) = -cmag * sz;
        mag_blk(0, 1) = cmag * cd(0.0, -1.0) * sy;
        mag_blk(1, 0) = cmag * cd(0.0, 1.0) * sy;
        const int nm = 2 * p_.n_max + 1;
        const int cols = int(y.cols());
        comb_.resize(2, cols);
        for (int i = 0; i < nm; ++i) {
            comb_ = 2.0 * y.middleRows(2 * i, 2);
            if (i - 2 >= 0)
                comb_ += y.middleRows(2 * (i - 2), 2);
            if (i + 2 < nm)
                comb_ += y.middleRows(2 * (i + 2), 2);
            out.middleRows(2 * i, 2).noalias() += comb_blk * comb_;
            if (i - 1 >= 0)
                out.middleRows(2 * i, 2).noalias() += mag_blk * y.middleRows(2 * (i - 1), 2);
            if (i + 1 < nm)
                out.middleRows(2 * i, 2).noalias() -= mag_blk * y.middleRows(2 * (i + 1), 2);
        }
    }

    double spin_z(const Eigen::Ref<const Eigen::VectorXcd>& y) const {
        const int nm = 2 * p_.n_max + 1;
        double s = 0.0;
        for (int i = 0; i < nm; ++i)
            s += std::norm(y[2 * i]) - std::norm(y[2 * i + 1]);
        return 0.5 * s;
    }

    static constexpr bool has_density = true;
    // lambda * rho(lambda/4) from Schroedinger-picture amplitudes: the modes
    // pick up phases i^n at the field node x = lambda/4
    double density_quarter(const Eigen::Ref<const Eigen::VectorXcd>& c) const {
        const int nm = 2 * p_.n_max + 1;
        cd up(0.0, 0.0), dn(0.0, 0.0);
        for (int i = 0; i < nm; ++i) {
            const int n = i - p_.n_max;
            const int r = ((n % 4) + 4) % 4;
            static const cd ipow[4] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
            up += ipow[r] * c[2 * i];
            dn += ipow[r] * c[2 * i + 1];
        }
        return std::norm(up) + std::norm(dn);
    }

    Eigen::VectorXcd initial_state(bool spin_up = true) const {
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim());
        c[2 * p_.n_max + (spin_up ? 0 : 1)] = 1.0;
        return c;
    }

private:
    PauliParams p_;
    Eigen::VectorXd rate_;
    Eigen::VectorXcd free_coef_;
    mutable Eigen::MatrixXcd comb_;
};

// Position-space probability density (1/m) from Schroedinger-picture
// amplitudes; integrates to the squared norm over one wavelength.
inline double position_density(const Eigen::Ref<const Eigen::VectorXcd>& c,
                               double x, double k, int n_max) {
    const int nm = 2 * n_max + 1;
    assert(c.size() == 2 * nm);
    cd up(0.0, 0.0), dn(0.0, 0.0);
    for (int i = 0; i < nm; ++i) {
        const double ph = (i - n_max) * k * x;
        const cd e(std::cos(ph), std::sin(ph));
        up += e * c[2 * i];
        dn += e * c[2 * i + 1];
    }
    return (k / (2.0 * pi)) * (std::norm(up) + std::norm(dn));
}

}
