#pragma once

// Umbrella header for the graph-union-lab library.

#include "conn.hpp"
#include "gen.hpp"
#include "harness.hpp"
#include "json_io.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "rational.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "theory.hpp"
#include "verify.hpp"
