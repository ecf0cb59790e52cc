#pragma once

// Umbrella header for the pair-space N-body toolkit.

#include "pairspace/central.hpp"
#include "pairspace/collinear.hpp"
#include "pairspace/conserved.hpp"
#include "pairspace/dynamics.hpp"
#include "pairspace/dziobek.hpp"
#include "pairspace/errors.hpp"
#include "pairspace/integrate.hpp"
#include "pairspace/masses.hpp"
#include "pairspace/pairs.hpp"
#include "pairspace/state.hpp"
#include "pairspace/vec3.hpp"
