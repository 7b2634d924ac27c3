#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpg/extended_real.hpp"
#include "mpg/space.hpp"

namespace mpg {

/// A normalized monotone set function on the full subset lattice of a
/// finite space: nu(empty) = 0, nu(X) = 1, and A <= B implies
/// nu(A) <= nu(B). Values are stored densely, indexed by subset mask,
/// which caps the space at kMaxLatticePoints points. Immutable.
class Capacity {
 public:
  const FiniteSpace& space() const { return space_; }
  std::size_t point_count() const { return space_.size(); }
  double value(SubsetMask subset) const { return values_[subset]; }
  double operator[](SubsetMask subset) const { return values_[subset]; }
  std::span<const double> values() const { return values_; }
  SubsetMask full_mask() const { return space_.full_mask(); }

  /// Trusted constructor for values already known to satisfy the
  /// invariants (library internals, generators). Checks only the shape.
  static Capacity unchecked(FiniteSpace space, std::vector<double> values);

  /// The top of the capacity order: 1 on every nonempty subset.
  static Capacity greatest(FiniteSpace space);
  /// The bottom: 0 on every proper subset.
  static Capacity smallest(FiniteSpace space);
  /// Certainty of a single point: 1 exactly on subsets containing it.
  static Capacity dirac(FiniteSpace space, std::size_t point);

  bool operator==(const Capacity& o) const {
    return space_ == o.space_ && values_ == o.values_;
  }

 private:
  Capacity(FiniteSpace space, std::vector<double> values)
      : space_(std::move(space)), values_(std::move(values)) {}

  FiniteSpace space_;
  std::vector<double> values_;
};

/// The singleton trace of a possibility capacity: weights in [0,1] with
/// maximum exactly 1 (within tolerance on validation). Densities scale to
/// large spaces; the induced capacity is nu(F) = max of weights over F.
class Density {
 public:
  Density(FiniteSpace space, std::vector<double> weights);

  static Density unchecked(FiniteSpace space, std::vector<double> weights);
  static Density all_ones(FiniteSpace space);
  static Density dirac(FiniteSpace space, std::size_t point);
  /// 1 on the support mask, 0 off it. Support must be nonempty.
  static Density crisp(FiniteSpace space, SubsetMask support);

  const FiniteSpace& space() const { return space_; }
  std::size_t point_count() const { return space_.size(); }
  double weight(std::size_t point) const { return weights_[point]; }
  std::span<const double> weights() const { return weights_; }

  bool operator==(const Density& o) const {
    return space_ == o.space_ && weights_ == o.weights_;
  }

 private:
  struct Unchecked {};
  Density(Unchecked, FiniteSpace space, std::vector<double> weights)
      : space_(std::move(space)), weights_(std::move(weights)) {}

  FiniteSpace space_;
  std::vector<double> weights_;
};

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { Boundary, Range, Monotonicity };

struct Violation {
  ViolationKind kind{};
  SubsetMask subset{};         // offending subset; smaller set of a witness pair
  SubsetMask superset{};       // Monotonicity: the covering set subset + {x}
  double value{};              // stored value at `subset`
  double superset_value{};     // Monotonicity: stored value at `superset`
  double expected{};           // Boundary: required value (0 or 1)

  std::string message(const FiniteSpace& space) const;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string describe(const FiniteSpace& space) const;
};

struct ValidationResult {
  std::optional<Capacity> capacity;  // set iff report.ok()
  ValidationReport report;
};

/// Checks every invariant and reports all violations, not just the first:
/// boundary values, out-of-range entries, and every monotonicity-violating
/// cover pair (A, A + {x}). Comparisons use kTolerance.
ValidationResult validate(const FiniteSpace& space, std::vector<double> values);

/// Density counterpart used by file loading: range and max-weight checks.
ValidationReport validate_density(const FiniteSpace& space, std::span<const double> weights);

// ---------------------------------------------------------------------------
// Classification and order

struct CapacityClass {
  bool possibility = false;  // nu(A u B) = max(nu(A), nu(B))
  bool necessity = false;    // nu(A n B) = min(nu(A), nu(B))

  enum class Tag { General, Possibility, Necessity };

  /// A capacity can satisfy both laws (e.g. Dirac); possibility is the
  /// primary tag because downstream code branches on it.
  Tag primary() const {
    if (possibility) return Tag::Possibility;
    if (necessity) return Tag::Necessity;
    return Tag::General;
  }
};

const char* to_string(CapacityClass::Tag tag);

CapacityClass classify(const Capacity& nu);

/// Dual capacity: dual(nu)(F) = 1 - nu(X \ F). An involution exchanging
/// possibility and necessity.
Capacity dual(const Capacity& nu);

/// Possibility capacity induced by a density: nu(F) = max of weights on F.
Capacity from_density(const Density& d);

/// Restriction to singletons; requires classify(nu).possibility.
Density to_density(const Capacity& nu);

/// Idempotent convex combination (s * nu v mu)(A) = s * nu(A) v mu(A) for
/// s in [0,1]. Preserves possibility.
Capacity bconvex_combine(double s, const Capacity& nu, const Capacity& mu);

/// Subsetwise order: nu(A) <= mu(A) for every A, within kTolerance.
bool leq(const Capacity& nu, const Capacity& mu);

}  // namespace mpg
