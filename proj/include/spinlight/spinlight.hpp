#pragma once

// Umbrella header: spin precession of an electron at rest in a standing
// elliptically polarized wave, three quantum models (momentum-space Dirac,
// relativistic and nonrelativistic Pauli) plus the closed-form perturbative
// oracle layer they are validated against.

#include "analysis.hpp"
#include "config.hpp"
#include "constants.hpp"
#include "dirac.hpp"
#include "errors.hpp"
#include "integrator.hpp"
#include "io.hpp"
#include "laser.hpp"
#include "lattice.hpp"
#include "pauli.hpp"
#include "perturbation.hpp"
#include "version.hpp"
