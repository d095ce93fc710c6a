#pragma once

#include <stdexcept>
#include <string>

namespace spinlight {

// Configuration failed validation; the message names the offending field.
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An integration aborted: norm drift beyond the abort threshold or
// non-finite amplitudes. CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A perturbative enumerator hit an energy denominator inside the
// multiphoton-resonance guard band. CLI exit code 4.
struct ResonanceError : std::runtime_error {
    explicit ResonanceError(const std::string& what) : std::runtime_error(what) {}
};

}
