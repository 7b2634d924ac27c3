#include "mpg/integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mpg {

RealFunction::RealFunction(FiniteSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size())
    throw invalid_argument("function needs one value per point");
  for (double v : values_)
    if (!std::isfinite(v)) throw invalid_argument("function values must be finite");
}

SubsetMask threshold_set(const RealFunction& f, double t) {
  if (f.point_count() > kMaxMaskPoints)
    throw guard_exceeded("threshold sets need a mask-sized space");
  SubsetMask mask = 0;
  for (std::size_t x = 0; x < f.point_count(); ++x)
    if (f.value(x) >= t) mask |= point_bit(x);
  return mask;
}

ExtendedReal maxplus_integral(const RealFunction& f, const Capacity& nu) {
  if (f.space() != nu.space())
    throw space_mismatch("integral requires the function and capacity to share a space");
  std::vector<double> thresholds(f.values().begin(), f.values().end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  double best = -std::numeric_limits<double>::infinity();
  for (double t : thresholds) {
    const double w = nu[threshold_set(f, t)];
    if (w == 0.0) continue;  // structural null set
    best = std::max(best, std::log(w) + t);
  }
  return std::isfinite(best) ? ExtendedReal::finite(best) : ExtendedReal::neg_infinity();
}

ExtendedReal maxplus_integral(const RealFunction& f, const Density& d) {
  if (f.space() != d.space())
    throw space_mismatch("integral requires the function and density to share a space");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < d.point_count(); ++x) {
    const double w = d.weight(x);
    if (w == 0.0) continue;
    best = std::max(best, std::log(w) + f.value(x));
  }
  return std::isfinite(best) ? ExtendedReal::finite(best) : ExtendedReal::neg_infinity();
}

}  // namespace mpg
