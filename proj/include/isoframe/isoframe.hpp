#pragma once

// Umbrella header: the whole library.

#include "arith.hpp"
#include "convexity.hpp"
#include "differential.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "integral.hpp"
#include "interval.hpp"
#include "mapping.hpp"
#include "means.hpp"
#include "numerics.hpp"
#include "plot.hpp"
#include "realfn.hpp"
