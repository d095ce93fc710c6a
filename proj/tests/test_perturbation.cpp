// Closed-form layer. The secular enumerators are cross-checked against
// independent time-domain Dyson quadratures built from nothing but the
// coupling tables and cumulative trapezoid integrals, and the closed-form
// frequencies against their scaled identities and each other.
#include <catch2/catch_amalgamated.hpp>

#include <spinlight/constants.hpp>
#include <spinlight/laser.hpp>
#include <spinlight/lattice.hpp>
#include <spinlight/perturbation.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>

using namespace spinlight;
using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;

namespace {

void decompose(const Matrix2cd& M, double out[4]) {
    // real coefficients of 1, sigma_x, sigma_y, sigma_z
    out[0] = 0.5 * (M(0, 0) + M(1, 1)).real();
    out[1] = 0.5 * (M(0, 1) + M(1, 0)).real();
    out[2] = 0.5 * (cd(0, 1) * (M(0, 1) - M(1, 0))).real();
    out[3] = 0.5 * (M(0, 0) - M(1, 1)).real();
}

// second-order Dyson coefficient on the (n = 0, +) spin block by cumulative
// trapezoid over the interaction picture, scaled units, rect window; returns
// the slope between the half and full span
Matrix2cd u2_dirac_quadrature(double kappa, double xi, double eta,
                              double th_max, int npts) {
    const SpinorTable tab = SpinorTable::build(kappa, 1);
    const int dim = 12;
    auto Eof = [&](int i) {
        const int n = i / 4 - 1, g = i % 4;
        return (g < 2 ? 1.0 : -1.0) * tab.eps[tab.idx(n)];
    };
    auto V = [&](int i, int j, double th) -> cd {
        const int ni = i / 4 - 1, gi = i % 4;
        const int nj = j / 4 - 1, gj = j % 4;
        if (std::abs(ni - nj) != 1)
            return cd(0, 0);
        const int ii = tab.idx(ni);
        const Matrix4cd& Y = (nj == ni + 1) ? tab.Y_up[ii] : tab.Y_dn[ii];
        const Matrix4cd& Z = (nj == ni + 1) ? tab.Z_up[ii] : tab.Z_dn[ii];
        return -xi * kappa * (std::sin(th) * Y(gi, gj) + std::sin(th - eta) * Z(gi, gj));
    };
    const double h = th_max / (npts - 1);
    const int s0[2] = {4, 5}; // (n = 0, +, up/down)
    MatrixXcd K1 = MatrixXcd::Zero(dim, 2);
    MatrixXcd pF(dim, 2), cF(dim, 2);
    Matrix2cd a2 = Matrix2cd::Zero(), a2h = Matrix2cd::Zero();
    Matrix2cd pG = Matrix2cd::Zero(), cG;
    for (int p = 0; p < npts; ++p) {
        const double th = p * h;
        for (int i = 0; i < dim; ++i)
            for (int s = 0; s < 2; ++s)
                cF(i, s) = V(i, s0[s], th) *
                           std::polar(1.0, (Eof(i) - Eof(s0[s])) * th / kappa);
        if (p > 0)
            K1 += 0.5 * h * (pF + cF);
        for (int sp = 0; sp < 2; ++sp)
            for (int s = 0; s < 2; ++s) {
                cd acc(0, 0);
                for (int j = 0; j < dim; ++j) {
                    const cd v = V(s0[sp], j, th);
                    if (v != cd(0, 0))
                        acc += v * std::polar(1.0, (Eof(s0[sp]) - Eof(j)) * th / kappa) *
                               K1(j, s);
                }
                cG(sp, s) = acc;
            }
        if (p > 0)
            a2 += 0.5 * h * (pG + cG);
        if (p == (npts - 1) / 2)
            a2h = a2;
        pF = cF;
        pG = cG;
    }
    const cd mik = cd(0, -1) / kappa;
    return (a2 - a2h) * mik * mik / (0.5 * th_max);
}

// same exercise for the magnetic vertex of the Pauli model, hand-rolled
// sigma algebra throughout
Matrix2cd u2_pauli_quadrature(double kappa, double xi, double eta,
                              double th_max, int npts) {
    const double s_q = -1.0;
    const int nm = 1, dim = 2 * (2 * nm + 1);
    auto Eof = [&](int i) {
        const int n = i / 2 - nm;
        return 0.5 * n * n * kappa;
    };
    Matrix2cd sy, sz;
    sy << cd(0, 0), cd(0, -1), cd(0, 1), cd(0, 0);
    sz << cd(1, 0), cd(0, 0), cd(0, 0), cd(-1, 0);
    auto Vblk = [&](int n_to, int n_from, double th) -> Matrix2cd {
        if (std::abs(n_to - n_from) != 1)
            return Matrix2cd::Zero();
        const double hop = (n_from == n_to - 1) ? 1.0 : -1.0;
        return cd(0, 1) * s_q * 0.5 * xi * kappa * kappa * hop *
               (-sy * std::sin(th - eta) + sz * std::sin(th));
    };
    const double h = th_max / (npts - 1);
    MatrixXcd K1 = MatrixXcd::Zero(dim, 2);
    MatrixXcd pF(dim, 2), cF(dim, 2);
    Matrix2cd a2 = Matrix2cd::Zero(), a2h = Matrix2cd::Zero();
    Matrix2cd pG = Matrix2cd::Zero(), cG;
    for (int p = 0; p < npts; ++p) {
        const double th = p * h;
        for (int ni = -nm; ni <= nm; ++ni) {
            const Matrix2cd vb = Vblk(ni, 0, th);
            for (int g = 0; g < 2; ++g)
                for (int s = 0; s < 2; ++s)
                    cF(2 * (ni + nm) + g, s) =
                        vb(g, s) *
                        std::polar(1.0, (Eof(2 * (ni + nm)) - Eof(2 * nm)) * th);
        }
        if (p > 0)
            K1 += 0.5 * h * (pF + cF);
        for (int sp = 0; sp < 2; ++sp)
            for (int s = 0; s < 2; ++s) {
                cd acc(0, 0);
                for (int nj = -nm; nj <= nm; ++nj) {
                    const Matrix2cd vb = Vblk(0, nj, th);
                    for (int g = 0; g < 2; ++g)
                        acc += vb(sp, g) *
                               std::polar(1.0, (Eof(2 * nm) - Eof(2 * (nj + nm))) * th) *
                               K1(2 * (nj + nm) + g, s);
                }
                cG(sp, s) = acc;
            }
        if (p > 0)
            a2 += 0.5 * h * (pG + cG);
        if (p == (npts - 1) / 2)
            a2h = a2;
        pF = cF;
        pG = cG;
    }
    const cd mik = cd(0, -1) / kappa;
    return (a2 - a2h) * mik * mik / (0.5 * th_max);
}

struct U4QuadResult {
    Matrix2cd slope; // Im-part linear slope per theta over the flat top
    double t2[2];    // quadratic Re coefficient on the diagonal
};

// fourth-order Dyson coefficient by three nested cumulative trapezoids over
// the |n| <= 2 ladder; sin^2 ramps switch the coupling adiabatically and the
// linear slope is regressed over the flat top
U4QuadResult u4_quadrature(double kappa, double xi, double eta, double cycles,
                           double ramp, int npts) {
    const SpinorTable tab = SpinorTable::build(kappa, 2);
    const int dim = 20;
    auto Eof = [&](int i) {
        const int n = i / 4 - 2, g = i % 4;
        return (g < 2 ? 1.0 : -1.0) * tab.eps[tab.idx(n)];
    };
    const double th_ramp = 2.0 * pi * ramp, th_max = 2.0 * pi * cycles;
    auto wof = [&](double th) {
        if (th < th_ramp) {
            const double s = std::sin(0.5 * pi * th / th_ramp);
            return s * s;
        }
        if (th > th_max - th_ramp) {
            const double s = std::sin(0.5 * pi * (th_max - th) / th_ramp);
            return s * s;
        }
        return 1.0;
    };
    auto V = [&](int i, int j, double th) -> cd {
        const int ni = i / 4 - 2, gi = i % 4;
        const int nj = j / 4 - 2, gj = j % 4;
        if (std::abs(ni - nj) != 1)
            return cd(0, 0);
        const int ii = tab.idx(ni);
        const Matrix4cd& Y = (nj == ni + 1) ? tab.Y_up[ii] : tab.Y_dn[ii];
        const Matrix4cd& Z = (nj == ni + 1) ? tab.Z_up[ii] : tab.Z_dn[ii];
        return -xi * kappa * wof(th) *
               (std::sin(th) * Y(gi, gj) + std::sin(th - eta) * Z(gi, gj));
    };
    const double h = th_max / (npts - 1);
    const int s0[2] = {8, 9};
    MatrixXcd K1 = MatrixXcd::Zero(dim, 2), K2 = K1, K3 = K1;
    MatrixXcd pF1(dim, 2), cF1(dim, 2), pF2(dim, 2), cF2(dim, 2);
    MatrixXcd pF3(dim, 2), cF3(dim, 2);
    Matrix2cd a4 = Matrix2cd::Zero();
    Matrix2cd pG = Matrix2cd::Zero(), cG;
    MatrixXcd Vt(dim, dim);
    double Sn = 0, St = 0, Stt = 0;
    Matrix2cd Sy = Matrix2cd::Zero(), Sty = Matrix2cd::Zero();
    const double pref = 1.0 / (kappa * kappa * kappa * kappa); // (-i/k)^4
    U4QuadResult r;
    for (int p = 0; p < npts; ++p) {
        const double th = p * h;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const cd v = V(i, j, th);
                Vt(i, j) = (v == cd(0, 0))
                               ? cd(0, 0)
                               : v * std::polar(1.0, (Eof(i) - Eof(j)) * th / kappa);
            }
        for (int s = 0; s < 2; ++s)
            cF1.col(s) = Vt.col(s0[s]);
        if (p > 0)
            K1 += 0.5 * h * (pF1 + cF1);
        cF2 = Vt * K1;
        if (p > 0)
            K2 += 0.5 * h * (pF2 + cF2);
        cF3 = Vt * K2;
        if (p > 0)
            K3 += 0.5 * h * (pF3 + cF3);
        for (int sp = 0; sp < 2; ++sp)
            for (int s = 0; s < 2; ++s) {
                cd acc(0, 0);
                for (int j = 0; j < dim; ++j)
                    acc += Vt(s0[sp], j) * K3(j, s);
                cG(sp, s) = acc;
            }
        if (p > 0)
            a4 += 0.5 * h * (pG + cG);
        pF1 = cF1;
        pF2 = cF2;
        pF3 = cF3;
        pG = cG;
        if (th > th_ramp && th < th_max - th_ramp) {
            Sn += 1;
            St += th;
            Stt += th * th;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    const double yim = (a4(a, b) * pref).imag();
                    Sy(a, b) += yim;
                    Sty(a, b) += th * yim;
                }
        }
        if (p == npts - 1) {
            // the Re part is -phi^2/2 with phi the accumulated second-order
            // phase; each sin^2 amplitude ramp integrates sin^4 = 3/8 of its
            // span, so the effective phase time is th_max - (5/4) th_ramp
            const double th_eff = th_max - 1.25 * th_ramp;
            for (int a = 0; a < 2; ++a)
                r.t2[a] = (a4(a, a) * pref).real() * 2.0 / (th_eff * th_eff);
        }
    }
    const double det = Sn * Stt - St * St;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            r.slope(a, b) = (Sn * Sty(a, b).real() - St * Sy(a, b).real()) / det;
    return r;
}

} // namespace

TEST_CASE("closed-form frequencies obey their scaled identities") {
    const auto& pc = constants();
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dk(0.01, 0.5), dx(0.05, 1.2);
    for (int i = 0; i < 25; ++i) {
        const double kappa = dk(rng), xi = dx(rng);
        LaserConfig cfg = LaserConfig::from_scaled(kappa, xi, 0.5 * pi, 0.0, 10.0, pc);
        const double om = cfg.omega(pc);
        const double Om = omega_dirac(cfg, pc);
        const double OmP = omega_pauli(cfg, pc);
        const double Oph = omega_phase(cfg, pc);
        CHECK(Om / om == Catch::Approx(std::pow(xi, 4) * kappa * kappa).epsilon(1e-12));
        CHECK(OmP / om == Catch::Approx(xi * xi * kappa * kappa).epsilon(1e-12));
        CHECK(Oph == Catch::Approx(Om / kappa).epsilon(1e-12));
        CHECK(Om / OmP == Catch::Approx(xi * xi).epsilon(1e-12));
        // the spin-density form is the same number through field quantities;
        // it routes through alpha^2 and eps0 instead of q^4, and the pinned
        // decimal constants are mutually consistent only to ~1e-9
        CHECK(omega_dirac_via_spin_density(cfg, pc) == Catch::Approx(Om).epsilon(1e-8));
    }
}

TEST_CASE("second-order block: spin channels cancel to the position-averaged shift") {
    const auto& pc = constants();
    for (double eta : {0.0, 0.4, 0.5 * pi}) {
        LaserConfig cfg = LaserConfig::from_scaled(0.15, 0.5, eta, 0.0, 10.0, pc);
        const Matrix2cd M = u2_dirac_sum(cfg, pc);
        const double pond =
            std::pow(pc.q_e * cfg.E_hat / cfg.k(), 2) / (pc.m_e * pc.c * pc.c);
        CHECK(M(0, 0).real() == Catch::Approx(pond).epsilon(1e-12));
        CHECK(M(1, 1).real() == Catch::Approx(pond).epsilon(1e-12));
        CHECK(std::abs(M(0, 1)) < 1e-12 * pond);
        CHECK(std::abs(M(1, 0)) < 1e-12 * pond);
        CHECK(std::abs(M(0, 0).imag()) < 1e-12 * pond);
        // the propagator itself is exactly spin diagonal
        const Matrix2cd U = u2_dirac(1e-15, cfg, pc);
        CHECK(U(0, 1) == cd(0.0, 0.0));
        CHECK(U(1, 0) == cd(0.0, 0.0));
        CHECK(U(0, 0) == U(1, 1));
    }
}

TEST_CASE("second-order Dirac block against the Dyson quadrature") {
    const auto& pc = constants();
    const double kappa = 0.15, xi = 0.3, eta = 0.7;
    LaserConfig cfg = LaserConfig::from_scaled(kappa, xi, eta, 0.0, 40.0, pc);
    const Matrix2cd quad = u2_dirac_quadrature(kappa, xi, eta, 2.0 * pi * 40.0, 32001);
    const Matrix2cd want = cd(0, -1.0 / kappa) * u2_dirac_sum(cfg, pc) / pc.mc2();
    const double scale = want.cwiseAbs().maxCoeff();
    CHECK(std::abs(quad(0, 0).imag() - want(0, 0).imag()) < 0.01 * scale);
    CHECK(std::abs(quad(1, 1).imag() - want(1, 1).imag()) < 0.01 * scale);
    // oscillatory leftovers only, no secular spin part
    CHECK(std::abs(quad(0, 1)) < 0.005 * scale);
    CHECK(std::abs(quad(1, 0)) < 0.005 * scale);
    CHECK(std::abs(quad(0, 0).real()) < 0.005 * scale);
}

TEST_CASE("second-order Pauli block: bracket identity, limit, quadrature") {
    const auto& pc = constants();
    const double kappa = 0.15, xi = 0.3, eta = 0.7;
    LaserConfig cfg = LaserConfig::from_scaled(kappa, xi, eta, 0.0, 40.0, pc);

    // bracket identity; the spin channel carries sin(eta), circular = 1
    const Matrix2cd M = u2_pauli_sum(cfg, pc);
    const double OmP = omega_pauli(cfg, pc);
    Matrix2cd sx;
    sx << cd(0, 0), cd(1, 0), cd(1, 0), cd(0, 0);
    const Matrix2cd want = -pc.hbar *
                           (0.5 * OmP * std::sin(eta) * sx -
                            0.25 * OmP * kappa * Matrix2cd::Identity()) /
                           (1.0 - 0.25 * kappa * kappa);
    CHECK((M - want).cwiseAbs().maxCoeff() < 1e-9 * want.cwiseAbs().maxCoeff());

    // circular small-kappa limit deviates by less than kappa^2 relative
    LaserConfig circ = LaserConfig::from_scaled(kappa, xi, 0.5 * pi, 0.0, 40.0, pc);
    const Matrix2cd ex = u2_pauli(1.0, circ, pc);
    const Matrix2cd lim = u2_pauli_limit(1.0, circ, pc);
    CHECK((ex - lim).cwiseAbs().maxCoeff() <
          kappa * kappa * ex.cwiseAbs().maxCoeff());

    // quadrature slope
    const Matrix2cd quad = u2_pauli_quadrature(kappa, xi, eta, 2.0 * pi * 40.0, 32001);
    const Matrix2cd wslope = cd(0, -1.0 / kappa) * M / pc.mc2();
    const double scale = wslope.cwiseAbs().maxCoeff();
    CHECK(std::abs(quad(0, 0).imag() - wslope(0, 0).imag()) < 0.01 * scale);
    CHECK(std::abs(quad(0, 1).imag() - wslope(0, 1).imag()) < 0.01 * scale);
    CHECK(std::abs(quad(1, 0).imag() - wslope(1, 0).imag()) < 0.01 * scale);
}

TEST_CASE("fourth-order enumerator: counts and exact component values") {
    const auto& pc = constants();
    for (double kappa : {0.0152598, 0.15, 0.45}) {
        for (double eta : {0.3, 0.5 * pi}) {
            LaserConfig cfg = LaserConfig::from_scaled(kappa, 0.5, eta, 0.0, 10.0, pc);
            const U4Secular en = u4_dirac_secular(cfg, pc);
            CHECK(en.terms_kept == 224);
            CHECK(en.terms_skipped == 64);
            double d[4];
            Matrix2cd Ms = en.M / cfg.omega(pc);
            decompose(Ms, d);
            const double Om = omega_dirac(cfg, pc) / cfg.omega(pc);
            const double Oph = omega_phase(cfg, pc) / cfg.omega(pc);
            CHECK(d[1] == Catch::Approx(0.5 * Om * std::sin(eta)).epsilon(1e-9));
            CHECK(d[0] == Catch::Approx(0.25 * Oph).epsilon(1e-9));
            CHECK(std::abs(d[2]) < 1e-10 * std::abs(d[1]));
            CHECK(std::abs(d[3]) < 1e-10 * std::abs(d[1]));
        }
    }
}

TEST_CASE("fourth-order block against the Dyson quadrature") {
    const auto& pc = constants();
    const double kappa = 0.15, xi = 0.3, eta = 0.7;
    LaserConfig cfg = LaserConfig::from_scaled(kappa, xi, eta, 20.0, 300.0, pc);
    const U4Secular en = u4_dirac_secular(cfg, pc);
    const U4QuadResult q = u4_quadrature(kappa, xi, eta, 300.0, 20.0, 240001);
    double d[4], dq[4];
    Matrix2cd Ms = en.M / cfg.omega(pc);
    decompose(Ms, d);
    decompose(q.slope, dq);
    // precession channel: 2% agreement
    CHECK(dq[1] == Catch::Approx(d[1]).epsilon(0.02));
    CHECK(std::abs(dq[2]) < 0.02 * std::abs(d[1]));
    CHECK(std::abs(dq[3]) < 0.02 * std::abs(d[1]));
    // the quadratic real part is the squared second-order shift
    const double t2want = -std::pow(xi * xi * kappa, 2);
    CHECK(q.t2[0] == Catch::Approx(t2want).epsilon(0.02));
    CHECK(q.t2[1] == Catch::Approx(t2want).epsilon(0.02));
    // identity channel: the bare finite-time coefficient carries a
    // wavefunction-dressing cross term (constant second-order dressing
    // beating against the linear ponderomotive phase) that scales with
    // xi^4 like the secular term itself, so the match is loose; the window
    // still cleanly separates 0.25 from 1.0 in units of the phase rate
    const double ratio = dq[0] / d[0];
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.35);
}

TEST_CASE("resonance guards") {
    const auto& pc = constants();
    const double lam_c = 2.0 * pi * pc.hbar / (pc.m_e * pc.c); // kappa = 1

    LaserConfig cfg;
    cfg.E_hat = 1e13;
    cfg.delta_T = 0.0;
    cfg.T_total = 10.0 * 1e-15;

    cfg.lambda = lam_c; // two photons bridge the pair gap at fourth order
    CHECK_THROWS_MATCHES(u4_dirac_secular(cfg, pc), ResonanceError,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("resonance guard band")));
    CHECK_NOTHROW(u2_dirac_sum(cfg, pc));  // one photon cannot
    CHECK_NOTHROW(u2_pauli_sum(cfg, pc));

    cfg.lambda = 0.5 * lam_c; // kappa = 2: one-photon kinetic resonance
    CHECK_THROWS_AS(u2_pauli_sum(cfg, pc), ResonanceError);
    CHECK_NOTHROW(u2_dirac_sum(cfg, pc));

    // nearby rational kappa values are not resonant
    for (double kappa : {2.0 / 3.0, 0.75}) {
        LaserConfig c2 = LaserConfig::from_scaled(kappa, 0.5, 0.5 * pi, 0.0, 10.0, pc);
        const U4Secular en = u4_dirac_secular(c2, pc);
        CHECK(en.min_abs_denominator > 0.1);
    }
}

TEST_CASE("flip probability law") {
    const double Om = 5.5e14;
    // periodic, bounded, exact sine form
    CHECK(spin_flip_probability(0.0, Om) == 0.0);
    CHECK(spin_flip_probability(pi / Om, Om) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(spin_flip_probability(2.0 * pi / Om, Om) ==
          Catch::Approx(0.0).margin(1e-12));
    // short-time Taylor remainder: |P - (Om t/2)^2| <= (Om t)^4/48
    for (double x : {1e-3, 1e-2, 0.1, 0.3}) {
        const double t = x / Om;
        const double P = spin_flip_probability(t, Om);
        CHECK(std::abs(P - 0.25 * x * x) <= std::pow(x, 4) / 48.0 + 1e-18);
    }
}

TEST_CASE("perturbative window bounds") {
    const auto& pc = constants();
    const double lambda = 0.159e-9;

    const PerturbativeBounds b = perturbative_bounds(lambda, 5000.0, pc);
    CHECK(b.nonempty);
    CHECK(b.E_min < b.E_max);
    CHECK(b.E_min == Catch::Approx(2.4945e14).epsilon(1e-3));
    CHECK(b.E_max == Catch::Approx(3.0814e14).epsilon(1e-3));

    // E_max is exactly the xi = 1 field
    LaserConfig cfg;
    cfg.lambda = lambda;
    cfg.E_hat = b.E_max;
    cfg.delta_T = 0.0;
    cfg.T_total = 1e-15;
    CHECK(harmonicity_ratio(cfg, pc).xi == Catch::Approx(1.0).epsilon(1e-12));

    // E_min gives exactly a half flip over the cycle budget
    cfg.E_hat = b.E_min;
    const double period = lambda / pc.c;
    CHECK(omega_dirac(cfg, pc) * 5000.0 * period == Catch::Approx(pi).epsilon(1e-10));

    // quarter-power scaling: 16x the budget halves the threshold exactly
    const PerturbativeBounds b16 = perturbative_bounds(lambda, 16.0 * 5000.0, pc);
    CHECK(b.E_min / b16.E_min == Catch::Approx(2.0).epsilon(1e-12));

    // a short budget empties the window
    CHECK_FALSE(perturbative_bounds(lambda, 10.0, pc).nonempty);

    CHECK_THROWS_AS(perturbative_bounds(-1.0, 100.0, pc), ConfigError);
    CHECK_THROWS_AS(perturbative_bounds(lambda, 0.0, pc), ConfigError);
}

TEST_CASE("summary bundles the operating point") {
    const auto& pc = constants();
    LaserConfig cfg;
    cfg.lambda = 0.159e-9;
    cfg.E_hat = 2.057e14;
    cfg.delta_T = 0.0;
    cfg.T_total = 26000.0 * cfg.lambda / pc.c;

    const PerturbativeSummary s = perturbative_summary(cfg, 26000.0, pc);
    CHECK(s.Omega == Catch::Approx(omega_dirac(cfg, pc)).epsilon(1e-15));
    CHECK(s.Omega == Catch::Approx(5.478e14).epsilon(1e-3));
    CHECK(s.Omega_P == Catch::Approx(1.2293e15).epsilon(1e-3));
    CHECK(s.Omega / s.Omega_P == Catch::Approx(s.xi * s.xi).epsilon(1e-12));
    CHECK(s.kappa == Catch::Approx(0.0152598).epsilon(1e-4));
    CHECK(s.xi == Catch::Approx(0.66755).epsilon(1e-4));
    CHECK(s.secondary_condition == Catch::Approx(0.5 * s.xi * s.kappa).epsilon(1e-12));
    CHECK(s.perturbative);
    CHECK(s.nonempty);

    // the harmonicity edge: xi crosses 1 near twice the reference field
    LaserConfig hot = cfg;
    hot.E_hat = 4.11e14;
    CHECK_FALSE(perturbative_summary(hot, 26000.0, pc).perturbative);
    // and the ratio at the printed edge field is 1.00 within a percent
    LaserConfig edge = cfg;
    edge.E_hat = 3.09e14;
    CHECK(harmonicity_ratio(edge, pc).xi == Catch::Approx(1.0).margin(0.01));
}
