#pragma once

#include <span>

#include "mpg/capacity.hpp"
#include "mpg/space.hpp"

namespace mpg {

/// Section of a product subset at first-factor point x:
/// { y : (x, y) in B }, with B a mask over an n1 x n2 row-major product.
SubsetMask section_mask(SubsetMask product_subset, std::size_t x, std::size_t n2);

/// Tensor product of two capacities on the row-major product space:
///   (m1 (x) m2)(B) = max { t in [0,1] : m1({x : m2(section(B,x)) >= t}) >= t }
///                  = max over t of m1({x : m2(section(B,x)) >= t}) ^ t.
/// Evaluated exactly over the candidate set {0,1} + section values + m1's
/// value range: the inner step function changes only at section values and
/// the min-with-t envelope is maximized at one of these points.
Capacity tensor2(const Capacity& m1, const Capacity& m2);

/// Left-associated fold ((m1 (x) m2) (x) m3) ...; a single factor is
/// returned as is. Intermediate products are flattened row-major, so the
/// fold lands on the same point order as the n-ary product space.
/// Associativity for general capacities is not asserted anywhere; the fold
/// order is part of this function's contract.
Capacity tensor_n(std::span<const Capacity> factors);

/// Density of the tensor product of possibility capacities: the pointwise
/// minimum of coordinate weights. Equals to_density(tensor_n(...)) exactly.
Density tensor_density(std::span<const Density> factors);

}  // namespace mpg
