#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately re-derive results from definitions (grid scans, direct cell
// enumeration) instead of calling the code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mpg/capacity.hpp"
#include "mpg/game.hpp"
#include "mpg/integral.hpp"
#include "mpg/random.hpp"
#include "mpg/space.hpp"
#include "mpg/tensor.hpp"

namespace testutil {

using namespace mpg;

inline FiniteSpace space_ab() { return FiniteSpace({"a", "b"}); }

inline Capacity possibility_ab(double wa, double wb) {
  return from_density(Density(space_ab(), {wa, wb}));
}

/// Two-player game on {a,b} x {a,b}: the first player's payoff is 1 on the
/// top row and 0 on the bottom row, the second player's payoff is constant
/// zero. The smallest game separating the two equilibrium concepts.
inline Game dominant_row_game() {
  return Game({"P1", "P2"}, {space_ab(), space_ab()},
              {{1.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0}});
}

/// Dense-grid maximization of ln(nu({f >= t})) + t over [min f, max f].
/// Independent of the candidate-set argument used by the implementation;
/// accurate to the grid spacing, since every grid value is a lower bound
/// and the optimum lies within one step of a grid point.
inline double grid_integral_oracle(const RealFunction& f, const Capacity& nu,
                                   std::size_t grid_points) {
  const double lo = *std::min_element(f.values().begin(), f.values().end());
  const double hi = *std::max_element(f.values().begin(), f.values().end());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid_points; ++k) {
    // pin the endpoints: rounding must not push the last point above hi
    const double t = k == 0 ? lo
                     : k + 1 == grid_points
                         ? hi
                         : lo + (hi - lo) * static_cast<double>(k) / (grid_points - 1);
    SubsetMask mask = 0;
    for (std::size_t x = 0; x < f.point_count(); ++x)
      if (f.value(x) >= t) mask |= point_bit(x);
    const double w = nu[mask];
    if (w == 0.0) continue;
    best = std::max(best, std::log(w) + t);
  }
  return best;
}

/// Expected payoff of a density profile by direct enumeration of every
/// strategy cell: max over cells of ln(min of coordinate weights) + payoff.
inline double density_payoff_oracle(const Game& g, std::size_t player,
                                    const std::vector<Density>& profile) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> coords(g.num_players());
  for (std::size_t cell = 0; cell < g.profile_count(); ++cell) {
    g.full_product().decode(cell, coords);
    double w = 1.0;
    for (std::size_t j = 0; j < g.num_players(); ++j)
      w = std::min(w, profile[j].weight(coords[j]));
    if (w == 0.0) continue;
    best = std::max(best, std::log(w) + g.payoff(player, cell));
  }
  return best;
}

/// Belief payoff of a pure strategy against a crisp support of the opponent
/// product, straight from the definitions (crisp weights are 0/1, so the
/// log term vanishes on the support).
inline double crisp_belief_payoff_oracle(const Game& g, std::size_t player, std::size_t strategy,
                                         const std::vector<bool>& opponent_support) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < opponent_support.size(); ++y) {
    if (!opponent_support[y]) continue;
    best = std::max(best, g.payoff(player, g.compose(player, strategy, y)));
  }
  return best;
}

inline std::vector<Capacity> greatest_profile(const Game& g) {
  std::vector<Capacity> out;
  for (std::size_t j = 0; j < g.num_players(); ++j)
    out.push_back(Capacity::greatest(g.strategy_space(j)));
  return out;
}

}  // namespace testutil
