#include "mpg/space.hpp"

#include <algorithm>
#include <bit>

namespace mpg {

FiniteSpace::FiniteSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw invalid_argument("a finite space needs at least one point");
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const std::string& l = labels_[i];
    if (l.empty()) throw invalid_argument("point labels must be nonempty");
    if (l.find('|') != std::string::npos)
      throw invalid_argument("point label '" + l + "' contains reserved character '|'");
    if (!index_.emplace(l, i).second)
      throw invalid_argument("duplicate point label '" + l + "'");
  }
}

std::optional<std::size_t> FiniteSpace::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SubsetMask FiniteSpace::full_mask() const {
  if (size() > kMaxMaskPoints)
    throw guard_exceeded("space of " + std::to_string(size()) +
                         " points exceeds the subset-mask limit of " +
                         std::to_string(kMaxMaskPoints));
  return (SubsetMask{1} << size()) - 1;
}

std::string FiniteSpace::subset_name(SubsetMask m) const {
  std::vector<std::string> members;
  for (std::size_t i = 0; i < size(); ++i)
    if (m & point_bit(i)) members.push_back(labels_[i]);
  std::sort(members.begin(), members.end());
  std::string out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += '|';
    out += members[i];
  }
  return out;
}

SubsetMask FiniteSpace::parse_subset_name(std::string_view name) const {
  SubsetMask mask = 0;
  if (!name.empty()) {
    std::size_t start = 0;
    while (true) {
      std::size_t sep = name.find('|', start);
      std::string_view token = name.substr(start, sep == std::string_view::npos ? sep : sep - start);
      auto idx = index_of(token);
      if (!idx) throw parse_error("unknown point '" + std::string(token) + "' in subset name");
      mask |= point_bit(*idx);
      if (sep == std::string_view::npos) break;
      start = sep + 1;
    }
  }
  if (subset_name(mask) != name)
    throw parse_error("subset name '" + std::string(name) +
                      "' is not canonical (labels sorted, '|'-joined)");
  return mask;
}

ProductSpace ProductSpace::of(std::vector<FiniteSpace> factors) {
  if (factors.empty()) throw invalid_argument("a product space needs at least one factor");
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.size() > kMaxSpacePoints / total)
      throw guard_exceeded("product space exceeds " + std::to_string(kMaxSpacePoints) + " points");
    total *= f.size();
  }
  std::vector<std::size_t> strides(factors.size());
  std::size_t s = 1;
  for (std::size_t j = factors.size(); j-- > 0;) {
    strides[j] = s;
    s *= factors[j].size();
  }
  if (factors.size() == 1) {
    FiniteSpace flat = factors.front();
    return ProductSpace(std::move(factors), std::move(strides), std::move(flat));
  }
  std::vector<std::string> labels;
  labels.reserve(total);
  std::vector<std::size_t> coords(factors.size(), 0);
  for (std::size_t p = 0; p < total; ++p) {
    std::size_t rest = p;
    std::string name;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      std::size_t c = rest / strides[j];
      rest %= strides[j];
      if (j) name += ',';
      name += factors[j].label(c);
    }
    labels.push_back(std::move(name));
  }
  return ProductSpace(std::move(factors), std::move(strides), FiniteSpace(std::move(labels)));
}

std::size_t ProductSpace::encode(std::span<const std::size_t> coords) const {
  if (coords.size() != factors_.size())
    throw invalid_argument("coordinate count does not match factor count");
  std::size_t p = 0;
  for (std::size_t j = 0; j < coords.size(); ++j) p += coords[j] * strides_[j];
  return p;
}

void ProductSpace::decode(std::size_t flat_index, std::span<std::size_t> coords_out) const {
  std::size_t rest = flat_index;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    coords_out[j] = rest / strides_[j];
    rest %= strides_[j];
  }
}

}  // namespace mpg
