#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mpg/errors.hpp"

namespace mpg {

/// Subsets of a finite space are bitmasks over point indices.
using SubsetMask = std::uint32_t;

/// Largest space whose full subset lattice we store as a dense 2^n array.
inline constexpr std::size_t kMaxLatticePoints = 16;

/// Largest space representable by a SubsetMask at all.
inline constexpr std::size_t kMaxMaskPoints = 31;

/// Hard ceiling on product-space sizes, to keep accidental blowups out.
/// Densities support large spaces; this only bounds single allocations.
inline constexpr std::size_t kMaxSpacePoints = std::size_t{1} << 24;

inline SubsetMask point_bit(std::size_t i) { return SubsetMask{1} << i; }

/// An ordered finite set of named points. Labels are pairwise distinct,
/// nonempty and must not contain '|' (reserved for subset names).
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Mask of the whole space; requires size() <= kMaxMaskPoints.
  SubsetMask full_mask() const;

  /// Canonical subset name: member labels sorted lexicographically and
  /// joined with '|'; the empty set is "".
  std::string subset_name(SubsetMask m) const;

  /// Inverse of subset_name; rejects non-canonical or unknown names.
  SubsetMask parse_subset_name(std::string_view name) const;

  bool operator==(const FiniteSpace& o) const { return labels_ == o.labels_; }
  bool operator!=(const FiniteSpace& o) const { return !(*this == o); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// An ordered product of finite spaces. Points are tuples enumerated
/// row-major (first factor outermost), flattened into a FiniteSpace whose
/// labels are the coordinate labels joined with ','. Factor order is part
/// of the identity. A single-factor product flattens to the factor itself,
/// so folds over pairwise products agree with the n-ary construction.
class ProductSpace {
 public:
  static ProductSpace of(std::vector<FiniteSpace> factors);

  const std::vector<FiniteSpace>& factors() const { return factors_; }
  const FiniteSpace& flat() const { return flat_; }
  std::size_t size() const { return flat_.size(); }
  std::size_t factor_count() const { return factors_.size(); }
  std::size_t stride(std::size_t factor) const { return strides_[factor]; }

  std::size_t encode(std::span<const std::size_t> coords) const;
  void decode(std::size_t flat_index, std::span<std::size_t> coords_out) const;

 private:
  ProductSpace(std::vector<FiniteSpace> factors, std::vector<std::size_t> strides,
               FiniteSpace flat)
      : factors_(std::move(factors)), strides_(std::move(strides)), flat_(std::move(flat)) {}

  std::vector<FiniteSpace> factors_;
  std::vector<std::size_t> strides_;
  FiniteSpace flat_;
};

}  // namespace mpg
