#pragma once

/// Umbrella header for the finite-temperature Casimir engine.

#include "casimir/compare.hpp"
#include "casimir/constants.hpp"
#include "casimir/differentiation.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"
#include "casimir/matsubara.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"
#include "casimir/thermo.hpp"
