#include "mpg/tensor.hpp"

#include <algorithm>
#include <vector>

namespace mpg {

SubsetMask section_mask(SubsetMask product_subset, std::size_t x, std::size_t n2) {
  SubsetMask out = 0;
  for (std::size_t y = 0; y < n2; ++y)
    if (product_subset & point_bit(x * n2 + y)) out |= point_bit(y);
  return out;
}

Capacity tensor2(const Capacity& m1, const Capacity& m2) {
  const std::size_t n1 = m1.point_count();
  const std::size_t n2 = m2.point_count();
  if (n1 * n2 > kMaxLatticePoints)
    throw guard_exceeded("tensor product lattice would have " + std::to_string(n1 * n2) +
                         " points; general capacities are limited to " +
                         std::to_string(kMaxLatticePoints) +
                         " (use the density route for possibility capacities)");
  ProductSpace prod = ProductSpace::of({m1.space(), m2.space()});
  const std::size_t subsets = std::size_t{1} << (n1 * n2);
  std::vector<double> out(subsets);

  std::vector<double> sec(n1);
  std::vector<double> cands;
  for (SubsetMask b = 0; b < subsets; ++b) {
    for (std::size_t x = 0; x < n1; ++x) sec[x] = m2[section_mask(b, x, n2)];

    cands.clear();
    cands.push_back(0.0);
    cands.push_back(1.0);
    cands.insert(cands.end(), sec.begin(), sec.end());
    cands.insert(cands.end(), m1.values().begin(), m1.values().end());
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    double best = 0.0;
    for (double t : cands) {
      SubsetMask s = 0;
      for (std::size_t x = 0; x < n1; ++x)
        if (sec[x] >= t) s |= point_bit(x);
      best = std::max(best, std::min(m1[s], t));
    }
    out[b] = best;
  }
  return Capacity::unchecked(prod.flat(), std::move(out));
}

Capacity tensor_n(std::span<const Capacity> factors) {
  if (factors.empty()) throw invalid_argument("tensor_n needs at least one factor");
  Capacity acc = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) acc = tensor2(acc, factors[k]);
  return acc;
}

Density tensor_density(std::span<const Density> factors) {
  if (factors.empty()) throw invalid_argument("tensor_density needs at least one factor");
  if (factors.size() == 1) return factors[0];
  std::vector<FiniteSpace> spaces;
  spaces.reserve(factors.size());
  for (const auto& d : factors) spaces.push_back(d.space());
  ProductSpace prod = ProductSpace::of(std::move(spaces));

  std::vector<double> w(prod.size());
  std::vector<std::size_t> coords(factors.size());
  for (std::size_t p = 0; p < w.size(); ++p) {
    prod.decode(p, coords);
    double m = factors[0].weight(coords[0]);
    for (std::size_t j = 1; j < factors.size(); ++j)
      m = std::min(m, factors[j].weight(coords[j]));
    w[p] = m;
  }
  return Density::unchecked(prod.flat(), std::move(w));
}

}  // namespace mpg
