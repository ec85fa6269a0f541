#pragma once

// Umbrella header for the whole library.

#include "triprop/ermakov.hpp"
#include "triprop/model.hpp"
#include "triprop/numerics.hpp"
#include "triprop/oracle.hpp"
#include "triprop/propagator.hpp"
#include "triprop/spectrum.hpp"
#include "triprop/timedep.hpp"
#include "triprop/transform.hpp"
#include "triprop/verify.hpp"
