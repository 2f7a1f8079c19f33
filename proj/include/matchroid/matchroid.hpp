#pragma once

// Umbrella header for the matchroid library.

#include "matchroid/error.hpp"
#include "matchroid/exchange.hpp"
#include "matchroid/field.hpp"
#include "matchroid/io.hpp"
#include "matchroid/matching.hpp"
#include "matchroid/matrix.hpp"
#include "matchroid/matroid.hpp"
#include "matchroid/solver.hpp"
