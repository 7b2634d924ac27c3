#include "mpg/capacity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace mpg {

namespace {

void check_lattice_shape(const FiniteSpace& space, const std::vector<double>& values) {
  if (space.size() > kMaxLatticePoints)
    throw guard_exceeded("general capacities are limited to " +
                         std::to_string(kMaxLatticePoints) + " points; got " +
                         std::to_string(space.size()));
  const std::size_t expected = std::size_t{1} << space.size();
  if (values.size() != expected)
    throw invalid_argument("capacity needs " + std::to_string(expected) + " subset values, got " +
                           std::to_string(values.size()));
  for (double v : values)
    if (!std::isfinite(v)) throw invalid_argument("capacity values must be finite");
}

}  // namespace

Capacity Capacity::unchecked(FiniteSpace space, std::vector<double> values) {
  check_lattice_shape(space, values);
  return Capacity(std::move(space), std::move(values));
}

Capacity Capacity::greatest(FiniteSpace space) {
  std::vector<double> v(std::size_t{1} << space.size(), 1.0);
  v[0] = 0.0;
  return unchecked(std::move(space), std::move(v));
}

Capacity Capacity::smallest(FiniteSpace space) {
  std::vector<double> v(std::size_t{1} << space.size(), 0.0);
  v.back() = 1.0;
  return unchecked(std::move(space), std::move(v));
}

Capacity Capacity::dirac(FiniteSpace space, std::size_t point) {
  if (point >= space.size()) throw invalid_argument("dirac point out of range");
  const std::size_t n = space.size();
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (SubsetMask m = 0; m < v.size(); ++m)
    if (m & point_bit(point)) v[m] = 1.0;
  return unchecked(std::move(space), std::move(v));
}

Density::Density(FiniteSpace space, std::vector<double> weights)
    : Density(Unchecked{}, std::move(space), std::move(weights)) {
  if (weights_.size() != space_.size())
    throw invalid_argument("density needs one weight per point");
  ValidationReport report = validate_density(space_, weights_);
  if (!report.ok())
    throw Error("InvalidDensity", report.describe(space_));
}

Density Density::unchecked(FiniteSpace space, std::vector<double> weights) {
  if (weights.size() != space.size())
    throw invalid_argument("density needs one weight per point");
  return Density(Unchecked{}, std::move(space), std::move(weights));
}

Density Density::all_ones(FiniteSpace space) {
  std::vector<double> w(space.size(), 1.0);
  return Density(Unchecked{}, std::move(space), std::move(w));
}

Density Density::dirac(FiniteSpace space, std::size_t point) {
  if (point >= space.size()) throw invalid_argument("dirac point out of range");
  std::vector<double> w(space.size(), 0.0);
  w[point] = 1.0;
  return Density(Unchecked{}, std::move(space), std::move(w));
}

Density Density::crisp(FiniteSpace space, SubsetMask support) {
  if (support == 0) throw invalid_argument("crisp density needs a nonempty support");
  if (space.size() > kMaxMaskPoints || support > space.full_mask())
    throw invalid_argument("crisp support mask out of range");
  std::vector<double> w(space.size(), 0.0);
  for (std::size_t i = 0; i < space.size(); ++i)
    if (support & point_bit(i)) w[i] = 1.0;
  return Density(Unchecked{}, std::move(space), std::move(w));
}

// ---------------------------------------------------------------------------

std::string Violation::message(const FiniteSpace& space) const {
  std::ostringstream os;
  switch (kind) {
    case ViolationKind::Boundary:
      os << "boundary: value at {" << space.subset_name(subset) << "} is " << value
         << ", expected " << expected;
      break;
    case ViolationKind::Range:
      os << "range: value at {" << space.subset_name(subset) << "} is " << value
         << ", outside [0,1]";
      break;
    case ViolationKind::Monotonicity:
      os << "monotonicity: value at {" << space.subset_name(subset) << "} is " << value
         << " but value at {" << space.subset_name(superset) << "} is " << superset_value;
      break;
  }
  return os.str();
}

std::string ValidationReport::describe(const FiniteSpace& space) const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.message(space);
  }
  return out.empty() ? "ok" : out;
}

ValidationResult validate(const FiniteSpace& space, std::vector<double> values) {
  check_lattice_shape(space, values);
  ValidationReport report;
  const SubsetMask full = space.full_mask();

  if (std::abs(values[0]) > kTolerance)
    report.violations.push_back({ViolationKind::Boundary, 0, 0, values[0], 0.0, 0.0});
  if (std::abs(values[full] - 1.0) > kTolerance)
    report.violations.push_back({ViolationKind::Boundary, full, 0, values[full], 0.0, 1.0});

  for (SubsetMask m = 0; m <= full; ++m)
    if (values[m] < -kTolerance || values[m] > 1.0 + kTolerance)
      report.violations.push_back({ViolationKind::Range, m, 0, values[m], 0.0, 0.0});

  // Cover pairs (A, A + {x}) suffice: any inclusion violation implies one.
  for (SubsetMask a = 0; a < full; ++a) {
    for (std::size_t x = 0; x < space.size(); ++x) {
      if (a & point_bit(x)) continue;
      const SubsetMask b = a | point_bit(x);
      if (values[a] > values[b] + kTolerance)
        report.violations.push_back(
            {ViolationKind::Monotonicity, a, b, values[a], values[b], 0.0});
    }
  }

  ValidationResult result{std::nullopt, std::move(report)};
  if (result.report.ok())
    result.capacity = Capacity::unchecked(space, std::move(values));
  return result;
}

ValidationReport validate_density(const FiniteSpace& space, std::span<const double> weights) {
  if (weights.size() != space.size())
    throw invalid_argument("density needs one weight per point");
  ValidationReport report;
  double best = 0.0;
  std::size_t best_at = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < -kTolerance || weights[i] > 1.0 + kTolerance)
      report.violations.push_back(
          {ViolationKind::Range, point_bit(i), 0, weights[i], 0.0, 0.0});
    if (weights[i] > best) {
      best = weights[i];
      best_at = i;
    }
  }
  if (std::abs(best - 1.0) > kTolerance)
    report.violations.push_back(
        {ViolationKind::Boundary, point_bit(best_at), 0, best, 0.0, 1.0});
  return report;
}

// ---------------------------------------------------------------------------

const char* to_string(CapacityClass::Tag tag) {
  switch (tag) {
    case CapacityClass::Tag::Possibility: return "possibility";
    case CapacityClass::Tag::Necessity: return "necessity";
    default: return "general";
  }
}

namespace {

bool is_maxitive(const Capacity& nu) {
  const SubsetMask full = nu.full_mask();
  for (SubsetMask m = 1; m <= full; ++m) {
    double singles = 0.0;
    for (std::size_t x = 0; x < nu.point_count(); ++x)
      if (m & point_bit(x)) singles = std::max(singles, nu[point_bit(x)]);
    if (std::abs(nu[m] - singles) > kTolerance) return false;
  }
  return true;
}

}  // namespace

CapacityClass classify(const Capacity& nu) {
  CapacityClass c;
  c.possibility = is_maxitive(nu);
  c.necessity = is_maxitive(dual(nu));
  return c;
}

Capacity dual(const Capacity& nu) {
  const SubsetMask full = nu.full_mask();
  std::vector<double> out(nu.values().size());
  for (SubsetMask m = 0; m <= full; ++m) out[m] = 1.0 - nu[full & ~m];
  return Capacity::unchecked(nu.space(), std::move(out));
}

Capacity from_density(const Density& d) {
  if (d.point_count() > kMaxLatticePoints)
    throw guard_exceeded("cannot materialize the subset lattice of a " +
                         std::to_string(d.point_count()) + "-point density");
  const std::size_t n = d.point_count();
  std::vector<double> out(std::size_t{1} << n, 0.0);
  for (SubsetMask m = 1; m < out.size(); ++m) {
    const SubsetMask low = m & (m - 1);  // m without its lowest bit
    const std::size_t x = std::countr_zero(m);
    out[m] = std::max(out[low], d.weight(x));
  }
  return Capacity::unchecked(d.space(), std::move(out));
}

Density to_density(const Capacity& nu) {
  if (!classify(nu).possibility)
    throw not_possibility("to_density requires a possibility capacity");
  std::vector<double> w(nu.point_count());
  for (std::size_t x = 0; x < w.size(); ++x) w[x] = nu[point_bit(x)];
  // The source already passed capacity validation; near-1 maxima within the
  // classification tolerance are accepted as-is.
  return Density::unchecked(nu.space(), std::move(w));
}

Capacity bconvex_combine(double s, const Capacity& nu, const Capacity& mu) {
  if (nu.space() != mu.space())
    throw space_mismatch("bconvex_combine requires capacities on the same space");
  if (!(s >= 0.0 && s <= 1.0))
    throw invalid_argument("bconvex_combine scalar must lie in [0,1]");
  std::vector<double> out(nu.values().size());
  for (SubsetMask m = 0; m < out.size(); ++m)
    out[m] = std::max(s * nu[m], mu[m]);
  return Capacity::unchecked(nu.space(), std::move(out));
}

bool leq(const Capacity& nu, const Capacity& mu) {
  if (nu.space() != mu.space())
    throw space_mismatch("leq requires capacities on the same space");
  for (SubsetMask m = 0; m < nu.values().size(); ++m)
    if (nu[m] > mu[m] + kTolerance) return false;
  return true;
}

}  // namespace mpg
