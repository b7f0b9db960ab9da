#include "gsco/support_set.hpp"

#include <algorithm>
#include <sstream>

#include "gsco/error.hpp"

namespace gsco {

SupportSet::SupportSet(std::vector<NodeId> indices) : indices_(std::move(indices)) {
  if (std::adjacent_find(indices_.begin(), indices_.end(), std::greater_equal<>()) !=
      indices_.end()) {
    throw ConfigError("support indices must be strictly increasing");
  }
}

SupportSet::SupportSet(std::initializer_list<NodeId> indices)
    : SupportSet(std::vector<NodeId>(indices)) {}

SupportSet SupportSet::from_unsorted(std::vector<NodeId> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return SupportSet(std::move(indices));
}

bool SupportSet::contains(NodeId v) const {
  return std::binary_search(indices_.begin(), indices_.end(), v);
}

void SupportSet::check_range(std::size_t dimension) const {
  if (!indices_.empty() && indices_.back() >= dimension) {
    throw RangeError("support index " + std::to_string(indices_.back()) +
                     " out of range for dimension " + std::to_string(dimension));
  }
}

std::string SupportSet::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    out << (i ? "," : "") << indices_[i];
  }
  out << '}';
  return out.str();
}

bool support_order_less(const SupportSet& a, const SupportSet& b) {
  if (a.size() != b.size()) {
    return a.size() < b.size();
  }
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace gsco
