#pragma once

// Frequency extraction and waveform diagnostics for sampled spin series.
// The precession fit models s_z(t) as A cos(Omega t) + B sin(Omega t) over
// the flat-top window, solving the linear pair exactly per trial frequency
// and minimizing the residual over Omega by golden-section search seeded
// from the first zero crossing. Series that never cross zero fall back to a
// curvature estimate from the initial quadratic decay and are flagged as
// not usable.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integrator.hpp"

namespace spinlight {

struct FrequencyFit {
    double omega_fit = 0.0;     // rad/s
    double amplitude = 0.0;     // units of hbar
    double residual_rms = 0.0;  // units of hbar
    bool usable = false;
    std::string method = "none"; // "lsq-cosine" or "curvature"
};

namespace detail {

struct FlatWindow {
    std::vector<double> t; // cycles, shifted so the window starts at zero
    std::vector<double> y;
};

inline FlatWindow flat_top_samples(const TimeSeries& s) {
    FlatWindow w;
    const double lo = s.meta.delta_T_cycles - 1e-9;
    const double hi = s.meta.T_cycles - s.meta.delta_T_cycles + 1e-9;
    for (std::size_t i = 0; i < s.t_cycles.size(); ++i) {
        if (s.t_cycles[i] >= lo && s.t_cycles[i] <= hi) {
            w.t.push_back(s.t_cycles[i]);
            w.y.push_back(s.s_z[i]);
        }
    }
    return w;
}

// least-squares residual of y ~ A cos(om t) + B sin(om t) at fixed om
// (rad/cycle); returns the sum of squares and the coefficients
inline double cosine_sse(const std::vector<double>& t, const std::vector<double>& y,
                         double om, double* A = nullptr, double* B = nullptr) {
    double cc = 0, cs = 0, ss = 0, cy = 0, sy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double c = std::cos(om * t[i]);
        const double s = std::sin(om * t[i]);
        cc += c * c;
        cs += c * s;
        ss += s * s;
        cy += c * y[i];
        sy += s * y[i];
    }
    const double det = cc * ss - cs * cs;
    double a = 0, b = 0;
    if (std::abs(det) > 1e-300) {
        a = (ss * cy - cs * sy) / det;
        b = (cc * sy - cs * cy) / det;
    } else if (cc > 0) {
        a = cy / cc;
    }
    if (A) *A = a;
    if (B) *B = b;
    double sse = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double r = y[i] - a * std::cos(om * t[i]) - b * std::sin(om * t[i]);
        sse += r * r;
    }
    return sse;
}

inline double golden_minimize(const std::vector<double>& t, const std::vector<double>& y,
                              double lo, double hi, int iters = 80) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = cosine_sse(t, y, x1), f2 = cosine_sse(t, y, x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = cosine_sse(t, y, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = cosine_sse(t, y, x2);
        }
    }
    return 0.5 * (a + b);
}

// quadratic fit y ~ c0 + c1 t + c2 t^2 by normal equations
inline bool quad_fit(const std::vector<double>& t, const std::vector<double>& y,
                     double coef[3]) {
    double m[3][4] = {};
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double p[3] = {1.0, t[i], t[i] * t[i]};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c)
                m[r][c] += p[r] * p[c];
            m[r][3] += p[r] * y[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col]))
                piv = r;
        if (std::abs(m[piv][col]) < 1e-300)
            return false;
        std::swap(m[col], m[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col)
                continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c)
                m[r][c] -= f * m[col][c];
        }
    }
    for (int r = 0; r < 3; ++r)
        coef[r] = m[r][3] / m[r][r];
    return true;
}

} // namespace detail

inline FrequencyFit extract_precession_frequency(const TimeSeries& s) {
    FrequencyFit fit;
    const detail::FlatWindow w = detail::flat_top_samples(s);
    if (w.t.size() < 8)
        throw ConfigError("too few flat-top samples for a frequency fit");
    const double rad_per_cycle_to_si = s.meta.omega / (2.0 * pi);

    // seed from the first zero crossing: s_z starts at +1/2 and reaches zero
    // at a quarter period
    double t_zero = -1.0;
    for (std::size_t i = 1; i < w.t.size(); ++i) {
        if (w.y[i] <= 0.0) {
            const double f = w.y[i - 1] / (w.y[i - 1] - w.y[i]);
            t_zero = w.t[i - 1] + f * (w.t[i] - w.t[i - 1]) - w.t.front();
            break;
        }
    }
    if (t_zero <= 0.0) {
        // no crossing: curvature estimate from s_z ~ 1/2 - (Omega^2/4) t^2
        double coef[3] = {0, 0, 0};
        fit.method = "curvature";
        fit.usable = false;
        fit.amplitude = w.y.empty() ? 0.0 : w.y.front();
        std::vector<double> ts(w.t);
        for (double& v : ts)
            v -= w.t.front();
        if (detail::quad_fit(ts, w.y, coef) && coef[2] < 0.0) {
            const double om_cyc = 2.0 * std::sqrt(-coef[2]);
            fit.omega_fit = om_cyc * rad_per_cycle_to_si;
            double sse = 0;
            for (std::size_t i = 0; i < ts.size(); ++i) {
                const double r = w.y[i] - (coef[0] + coef[1] * ts[i] + coef[2] * ts[i] * ts[i]);
                sse += r * r;
            }
            fit.residual_rms = std::sqrt(sse / double(ts.size()));
        }
        return fit;
    }

    std::vector<double> ts(w.t);
    for (double& v : ts)
        v -= w.t.front();
    const double om0 = 0.5 * pi / t_zero; // rad/cycle
    const double om = detail::golden_minimize(ts, w.y, 0.5 * om0, 1.5 * om0);
    double A = 0, B = 0;
    const double sse = detail::cosine_sse(ts, w.y, om, &A, &B);
    fit.omega_fit = om * rad_per_cycle_to_si;
    fit.amplitude = std::hypot(A, B);
    fit.residual_rms = std::sqrt(sse / double(ts.size()));
    fit.method = "lsq-cosine";
    // usable once the window covers at least half a precession period
    fit.usable = (om * (ts.back() - ts.front()) >= pi) && fit.omega_fit > 0.0;
    return fit;
}

// Normalized waveform distortion: rms residual of the cosine model over the
// flat top divided by the half-amplitude of a full flip.
inline double anharmonicity_score(const TimeSeries& s) {
    const FrequencyFit fit = extract_precession_frequency(s);
    return fit.residual_rms / 0.5;
}

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0; // in log space
};

// Log-log slope of (E_hat, omega) pairs. Requires at least four points with
// positive coordinates and at least two distinct abscissae.
inline ScalingFit scaling_exponent(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 4)
        throw ConfigError("scaling fit needs at least 4 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [E, om] : pts) {
        if (!(E > 0.0) || !(om > 0.0))
            throw ConfigError("scaling fit needs positive coordinates");
        const double x = std::log(E), y = std::log(om);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = double(pts.size());
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-12 * n * sxx)
        throw ConfigError("scaling fit abscissae are degenerate");
    ScalingFit f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    for (const auto& [E, om] : pts) {
        const double r = std::log(om) - (f.intercept + f.slope * std::log(E));
        f.max_abs_residual = std::max(f.max_abs_residual, std::abs(r));
    }
    return f;
}

struct EllipticityFit {
    double max_rel_deviation = 0.0;
    std::vector<double> ratios; // omega(eta)/omega(pi/2), input order
};

// Deviation of omega(eta)/omega(pi/2) from sin(eta). The point list must
// contain the circular reference eta = pi/2.
inline EllipticityFit ellipticity_law(const std::vector<std::pair<double, double>>& pts) {
    double om_ref = 0.0;
    bool found = false;
    for (const auto& [eta, om] : pts) {
        if (std::abs(eta - 0.5 * pi) < 1e-9) {
            om_ref = om;
            found = true;
        }
    }
    if (!found)
        throw ConfigError("ellipticity law needs the eta = pi/2 reference point");
    if (!(om_ref > 0.0))
        throw ConfigError("ellipticity reference frequency must be positive");
    EllipticityFit f;
    for (const auto& [eta, om] : pts) {
        const double ratio = om / om_ref;
        f.ratios.push_back(ratio);
        const double law = std::sin(eta);
        if (law > 1e-12)
            f.max_rel_deviation =
                std::max(f.max_rel_deviation, std::abs(ratio - law) / law);
    }
    return f;
}

struct DensityStats {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double envelope_period_cycles = 0.0; // 0 when no period is resolved
};

// Flat-top statistics of lambda rho(lambda/4, t). The envelope period is
// estimated from the mean spacing of upward mean-crossings.
inline DensityStats density_statistics(const TimeSeries& s) {
    if (s.lambda_rho_quarter.empty())
        throw ConfigError("series carries no density channel");
    const double lo = s.meta.delta_T_cycles - 1e-9;
    const double hi = s.meta.T_cycles - s.meta.delta_T_cycles + 1e-9;
    std::vector<double> t, v;
    for (std::size_t i = 0; i < s.t_cycles.size(); ++i) {
        if (s.t_cycles[i] >= lo && s.t_cycles[i] <= hi) {
            t.push_back(s.t_cycles[i]);
            v.push_back(s.lambda_rho_quarter[i]);
        }
    }
    if (v.size() < 4)
        throw ConfigError("too few flat-top samples for density statistics");
    DensityStats d;
    d.min = d.max = v.front();
    double sum = 0;
    for (double x : v) {
        sum += x;
        d.min = std::min(d.min, x);
        d.max = std::max(d.max, x);
    }
    d.mean = sum / double(v.size());
    std::vector<double> up;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i - 1] < d.mean && v[i] >= d.mean)
            up.push_back(t[i]);
    if (up.size() >= 2)
        d.envelope_period_cycles = (up.back() - up.front()) / double(up.size() - 1);
    return d;
}

}
