#pragma once

#include <cstdint>
#include <random>

#include "mpg/capacity.hpp"
#include "mpg/game.hpp"
#include "mpg/integral.hpp"
#include "mpg/space.hpp"

// Seeded generators of valid random objects, shared by the selftest command
// and the property suites.
namespace mpg::sample {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits (stdlib-independent).
double unit(Rng& rng);
std::size_t index(Rng& rng, std::size_t n);  // uniform in [0, n)

FiniteSpace space(Rng& rng, std::size_t min_size, std::size_t max_size);

/// Monotone fill in increasing-popcount order; boundaries exact.
Capacity capacity(Rng& rng, const FiniteSpace& s);

/// A capacity below `upper`, subsetwise, with exact inequalities.
Capacity capacity_leq(Rng& rng, const Capacity& upper);

/// A capacity with value exactly 0.0 on every subset of the complement of
/// `support` (so nu(X \ support) = 0 structurally).
Capacity capacity_with_null_complement(Rng& rng, const FiniteSpace& s, SubsetMask support);

Density density(Rng& rng, const FiniteSpace& s);

/// A density below `upper` pointwise, sharing a weight-1 point.
Density density_leq(Rng& rng, const Density& upper);

RealFunction function(Rng& rng, const FiniteSpace& s, double lo, double hi);

Game game(Rng& rng, std::size_t players, std::size_t min_strategies, std::size_t max_strategies,
          double payoff_lo, double payoff_hi);

}  // namespace mpg::sample
