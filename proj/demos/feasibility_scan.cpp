// Print the perturbative field window (E_min from a full flip within N
// cycles, E_max from the harmonicity limit) across hard-X-ray wavelengths.

#include <cstdio>

#include "spinlight/spinlight.hpp"

using namespace spinlight;

int main() {
    const double N = 5000.0; // cycle budget
    std::printf("%10s %14s %14s %9s\n", "lambda/nm", "E_min (V/m)", "E_max (V/m)",
                "nonempty");
    for (double lam_nm = 0.05; lam_nm <= 0.40 + 1e-12; lam_nm += 0.05) {
        const PerturbativeBounds b = perturbative_bounds(lam_nm * 1e-9, N);
        std::printf("%10.2f %14.4e %14.4e %9s\n", lam_nm, b.E_min, b.E_max,
                    b.nonempty ? "yes" : "no");
    }

    LaserConfig cfg;
    cfg.lambda = 0.159e-9;
    cfg.E_hat = 2.057e14;
    cfg.T_total = 26000.0 * cfg.period();
    const PerturbativeSummary s = perturbative_summary(cfg, N);
    std::printf("\nreference point lambda = %.3f nm, E_hat = %.4g V/m:\n",
                cfg.lambda * 1e9, cfg.E_hat);
    std::printf("  kappa = %.6g, xi = %.6g\n", s.kappa, s.xi);
    std::printf("  Omega = %.6e rad/s, flip period = %.0f cycles\n", s.Omega,
                pi / (s.Omega * cfg.period()));
    return 0;
}
