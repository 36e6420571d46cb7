#pragma once

// Umbrella header for the exponential sampling library.

#include "errors.hpp"
#include "summation.hpp"
#include "special_fn.hpp"
#include "quadrature.hpp"
#include "signal.hpp"
#include "mellin_ops.hpp"
#include "kernels.hpp"
#include "sampling.hpp"
#include "analysis.hpp"
#include "golden.hpp"
#include "report.hpp"
#include "tables.hpp"
