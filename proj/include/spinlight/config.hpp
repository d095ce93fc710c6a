#pragma once

// Flat "key = value" run-configuration format with '#' comments. Exactly
// these keys are understood:
//
//   model               dirac | pauli-rel | pauli-nonrel      (required)
//   lambda_nm           wavelength, nm                        (required)
//   E_hat_Vpm           peak field per beam, V/m              (required)
//   eta_rad             ellipticity phase, (-pi, pi]          (default pi/2)
//   delta_T_cycles      ramp length, cycles                   (default 0)
//   T_cycles            total interaction time, cycles        (required)
//   n_max               momentum cutoff                       (default 32)
//   scheme              direct-rk4 | ip-rk4 | cycle-map       (default ip-rk4)
//   steps_per_cycle     integrator resolution                 (default 256 for
//                       ip-rk4, 4096 for direct-rk4 and cycle-map)
//   sample_every_cycles output stride                         (default 1)
//
// Unknown or duplicate keys and malformed numbers are configuration errors.

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "constants.hpp"
#include "errors.hpp"
#include "integrator.hpp"
#include "laser.hpp"

namespace spinlight {

inline Model parse_model(const std::string& s) {
    if (s == "dirac")
        return Model::dirac;
    if (s == "pauli-rel")
        return Model::pauli_rel;
    if (s == "pauli-nonrel")
        return Model::pauli_nonrel;
    throw ConfigError("model must be dirac, pauli-rel, or pauli-nonrel; got '" + s + "'");
}

inline Scheme parse_scheme(const std::string& s) {
    if (s == "direct-rk4")
        return Scheme::direct_rk4;
    if (s == "ip-rk4")
        return Scheme::ip_rk4;
    if (s == "cycle-map")
        return Scheme::cycle_map;
    throw ConfigError("scheme must be direct-rk4, ip-rk4, or cycle-map; got '" + s + "'");
}

struct RunConfig {
    Model model = Model::dirac;
    double lambda_nm = 0.0;
    double E_hat_Vpm = 0.0;
    double eta_rad = 0.5 * pi;
    double delta_T_cycles = 0.0;
    double T_cycles = 0.0;
    int n_max = 32;
    Scheme scheme = Scheme::ip_rk4;
    int steps_per_cycle = 0; // 0 resolves to the scheme default
    int sample_every_cycles = 1;

    int resolved_steps_per_cycle() const {
        if (steps_per_cycle > 0)
            return steps_per_cycle;
        return (scheme == Scheme::ip_rk4) ? 256 : 4096;
    }

    LaserConfig laser(const PhysicalConstants& pc = constants()) const {
        LaserConfig cfg;
        cfg.lambda = lambda_nm * 1e-9;
        cfg.E_hat = E_hat_Vpm;
        cfg.eta = eta_rad;
        const double period = cfg.lambda / pc.c;
        cfg.delta_T = delta_T_cycles * period;
        cfg.T_total = T_cycles * period;
        return cfg;
    }

    IntegratorSettings settings() const {
        IntegratorSettings st;
        st.scheme = scheme;
        st.steps_per_cycle = resolved_steps_per_cycle();
        st.sample_every = sample_every_cycles;
        return st;
    }

    void validate(const PhysicalConstants& pc = constants()) const {
        if (!(lambda_nm > 0.0))
            throw ConfigError("lambda_nm must be positive");
        if (!(E_hat_Vpm >= 0.0))
            throw ConfigError("E_hat_Vpm must be nonnegative");
        if (!(eta_rad > -pi && eta_rad <= pi))
            throw ConfigError("eta_rad out of range (-pi, pi]");
        if (!(delta_T_cycles >= 0.0))
            throw ConfigError("delta_T_cycles must be nonnegative");
        if (!(T_cycles > 0.0))
            throw ConfigError("T_cycles must be positive");
        if (!(2.0 * delta_T_cycles <= T_cycles))
            throw ConfigError("ramps overlap: need 2*delta_T_cycles <= T_cycles");
        if (n_max < 4)
            throw ConfigError("n_max must be >= 4");
        if (steps_per_cycle != 0 && steps_per_cycle < 8)
            throw ConfigError("steps_per_cycle must be >= 8");
        if (sample_every_cycles < 1)
            throw ConfigError("sample_every_cycles must be >= 1");
        laser(pc).validate();
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + v + "'");
    }
}

inline int parse_int(const std::string& key, const std::string& v) {
    int x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw ConfigError(key + ": not an integer: '" + v + "'");
    return x;
}

} // namespace detail

inline RunConfig parse_run_config(std::istream& in) {
    RunConfig cfg;
    std::map<std::string, bool> seen;
    std::string line;
    int lineno = 0;
    bool have_model = false, have_lambda = false, have_E = false, have_T = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (seen[key])
            throw ConfigError("duplicate key '" + key + "'");
        seen[key] = true;
        if (key == "model") {
            cfg.model = parse_model(val);
            have_model = true;
        } else if (key == "lambda_nm") {
            cfg.lambda_nm = detail::parse_double(key, val);
            have_lambda = true;
        } else if (key == "E_hat_Vpm") {
            cfg.E_hat_Vpm = detail::parse_double(key, val);
            have_E = true;
        } else if (key == "eta_rad") {
            cfg.eta_rad = detail::parse_double(key, val);
        } else if (key == "delta_T_cycles") {
            cfg.delta_T_cycles = detail::parse_double(key, val);
        } else if (key == "T_cycles") {
            cfg.T_cycles = detail::parse_double(key, val);
            have_T = true;
        } else if (key == "n_max") {
            cfg.n_max = detail::parse_int(key, val);
        } else if (key == "scheme") {
            cfg.scheme = parse_scheme(val);
        } else if (key == "steps_per_cycle") {
            cfg.steps_per_cycle = detail::parse_int(key, val);
        } else if (key == "sample_every_cycles") {
            cfg.sample_every_cycles = detail::parse_int(key, val);
        } else {
            throw ConfigError("unknown key '" + key + "'");
        }
    }
    if (!have_model)
        throw ConfigError("missing required key 'model'");
    if (!have_lambda)
        throw ConfigError("missing required key 'lambda_nm'");
    if (!have_E)
        throw ConfigError("missing required key 'E_hat_Vpm'");
    if (!have_T)
        throw ConfigError("missing required key 'T_cycles'");
    cfg.validate();
    return cfg;
}

inline RunConfig parse_run_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    return parse_run_config(in);
}

inline RunConfig parse_run_config_string(const std::string& text) {
    std::istringstream in(text);
    return parse_run_config(in);
}

}
