#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <cmath>
#include <vector>

#include "specpart/theory.hpp"

namespace specpart::oracles {

// Brute-force maximization of the constrained alignment program over the
// full-dimensional feasible set (no symmetry assumptions): coarse scan over
// cone directions rescaled to the unit sphere, then a full-stencil pattern
// search. Tractable for n <= 3.
double grid_search_objective(const ChernoffConstants& cc, int k);

// Standard normal quantile by bisection on the erfc-based cdf; accurate to
// ~1e-13, independent of the AS241 rational approximation.
double phi_inv_bisect(double p);

// Dense cos-objective evaluation used to double-check frozen constants.
long double t_star_long(long double pa, long double qa, long double pb,
                        long double qb);

}  // namespace specpart::oracles
