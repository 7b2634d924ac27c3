#include "mpg/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace mpg::sample {

double unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t index(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

FiniteSpace space(Rng& rng, std::size_t min_size, std::size_t max_size) {
  const std::size_t n = min_size + index(rng, max_size - min_size + 1);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  return FiniteSpace(std::move(labels));
}

Capacity capacity(Rng& rng, const FiniteSpace& s) {
  const std::size_t n = s.size();
  const SubsetMask full = s.full_mask();
  std::vector<double> v(std::size_t{1} << n, 0.0);
  // Fill in increasing popcount order so cover values are already assigned.
  for (int pc = 1; pc <= static_cast<int>(n); ++pc) {
    for (SubsetMask m = 1; m <= full; ++m) {
      if (std::popcount(m) != pc) continue;
      double lo = 0.0;
      for (std::size_t x = 0; x < n; ++x)
        if (m & point_bit(x)) lo = std::max(lo, v[m & ~point_bit(x)]);
      v[m] = std::min(lo + (1.0 - lo) * unit(rng), 1.0);
    }
  }
  v[full] = 1.0;
  return Capacity::unchecked(s, std::move(v));
}

Capacity capacity_leq(Rng& rng, const Capacity& upper) {
  const FiniteSpace& s = upper.space();
  const std::size_t n = s.size();
  const SubsetMask full = s.full_mask();
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (int pc = 1; pc <= static_cast<int>(n); ++pc) {
    for (SubsetMask m = 1; m <= full; ++m) {
      if (std::popcount(m) != pc) continue;
      double lo = 0.0;
      for (std::size_t x = 0; x < n; ++x)
        if (m & point_bit(x)) lo = std::max(lo, v[m & ~point_bit(x)]);
      const double hi = upper[m];
      v[m] = std::clamp(lo + (hi - lo) * unit(rng), lo, hi);
    }
  }
  v[full] = 1.0;
  return Capacity::unchecked(s, std::move(v));
}

Capacity capacity_with_null_complement(Rng& rng, const FiniteSpace& s, SubsetMask support) {
  if (support == 0) throw invalid_argument("support must be nonempty");
  const std::size_t n = s.size();
  const SubsetMask full = s.full_mask();
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (int pc = 1; pc <= static_cast<int>(n); ++pc) {
    for (SubsetMask m = 1; m <= full; ++m) {
      if (std::popcount(m) != pc) continue;
      if ((m & support) == 0) continue;  // subset of the complement: exactly 0
      double lo = 0.0;
      for (std::size_t x = 0; x < n; ++x)
        if (m & point_bit(x)) lo = std::max(lo, v[m & ~point_bit(x)]);
      v[m] = std::min(lo + (1.0 - lo) * unit(rng), 1.0);
    }
  }
  v[full] = 1.0;
  return Capacity::unchecked(s, std::move(v));
}

Density density(Rng& rng, const FiniteSpace& s) {
  std::vector<double> w(s.size());
  for (auto& x : w) x = unit(rng);
  w[index(rng, w.size())] = 1.0;
  return Density::unchecked(s, std::move(w));
}

Density density_leq(Rng& rng, const Density& upper) {
  std::vector<double> w(upper.point_count());
  std::size_t top = 0;
  for (std::size_t x = 1; x < w.size(); ++x)
    if (upper.weight(x) > upper.weight(top)) top = x;
  for (std::size_t x = 0; x < w.size(); ++x) w[x] = upper.weight(x) * unit(rng);
  w[top] = upper.weight(top);  // keep the shared maximum so both are normalized
  return Density::unchecked(upper.space(), std::move(w));
}

RealFunction function(Rng& rng, const FiniteSpace& s, double lo, double hi) {
  std::vector<double> v(s.size());
  for (auto& x : v) x = lo + (hi - lo) * unit(rng);
  return RealFunction(s, std::move(v));
}

Game game(Rng& rng, std::size_t players, std::size_t min_strategies, std::size_t max_strategies,
          double payoff_lo, double payoff_hi) {
  std::vector<std::string> names;
  std::vector<FiniteSpace> spaces;
  std::size_t cells = 1;
  for (std::size_t i = 0; i < players; ++i) {
    names.push_back("P" + std::to_string(i + 1));
    spaces.push_back(space(rng, min_strategies, max_strategies));
    cells *= spaces.back().size();
  }
  std::vector<std::vector<double>> payoffs(players, std::vector<double>(cells));
  for (auto& tensor : payoffs)
    for (auto& v : tensor) v = payoff_lo + (payoff_hi - payoff_lo) * unit(rng);
  return Game(std::move(names), std::move(spaces), std::move(payoffs));
}

}  // namespace mpg::sample
