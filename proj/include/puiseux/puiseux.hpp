#pragma once

// Umbrella header.

#include "puiseux/constructions.hpp"
#include "puiseux/engine.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/invariants.hpp"
#include "puiseux/presentation.hpp"
#include "puiseux/primes.hpp"
#include "puiseux/rational.hpp"
#include "puiseux/serialization.hpp"
