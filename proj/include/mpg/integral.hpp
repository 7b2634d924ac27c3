#pragma once

#include <span>
#include <vector>

#include "mpg/capacity.hpp"
#include "mpg/extended_real.hpp"
#include "mpg/space.hpp"

namespace mpg {

/// A real-valued function on a finite space; all values finite.
class RealFunction {
 public:
  RealFunction(FiniteSpace space, std::vector<double> values);

  const FiniteSpace& space() const { return space_; }
  std::size_t point_count() const { return space_.size(); }
  double value(std::size_t point) const { return values_[point]; }
  std::span<const double> values() const { return values_; }

 private:
  FiniteSpace space_;
  std::vector<double> values_;
};

/// The upper level set { x : f(x) >= t } as a subset mask.
SubsetMask threshold_set(const RealFunction& f, double t);

/// Max-plus integral of f with respect to nu:
///   max over t of ( ln nu({f >= t}) + t ).
/// The maximum over real t is attained on the finite candidate set of
/// distinct values of f: the level set is constant between consecutive
/// values and the affine +t term makes each interval's right endpoint
/// optimal. The result is finite for every valid capacity (nu(X) = 1);
/// -inf can only arise from sub-normalized inputs.
ExtendedReal maxplus_integral(const RealFunction& f, const Capacity& nu);

/// Possibility fast path, closed form max over x of ( ln d(x) + f(x) ).
/// Agrees exactly with the general path on from_density(d) and scales to
/// spaces far beyond the subset-lattice cap.
ExtendedReal maxplus_integral(const RealFunction& f, const Density& d);

}  // namespace mpg
