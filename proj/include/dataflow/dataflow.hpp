#pragma once

// Umbrella header: the discrete lattice model, the Hamilton-Jacobi continuum
// solver, the comparison tools, and the scenario/export plumbing.

#include "dataflow/compare.hpp"
#include "dataflow/discrete.hpp"
#include "dataflow/errors.hpp"
#include "dataflow/field.hpp"
#include "dataflow/grid.hpp"
#include "dataflow/hj.hpp"
#include "dataflow/params.hpp"
#include "dataflow/profiles.hpp"
#include "dataflow/quadrature.hpp"
#include "dataflow/refinement.hpp"
#include "dataflow/runner.hpp"
#include "dataflow/scenario.hpp"
#include "dataflow/throttle.hpp"
#include "dataflow/weno.hpp"
