#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "gsco/graph.hpp"

namespace gsco {

// Strictly increasing list of node ids.
class SupportSet {
public:
  SupportSet() = default;
  /// Throws ConfigError unless `indices` is strictly increasing.
  explicit SupportSet(std::vector<NodeId> indices);
  SupportSet(std::initializer_list<NodeId> indices);

  /// Sorts and removes duplicates.
  static SupportSet from_unsorted(std::vector<NodeId> indices);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::span<const NodeId> indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  NodeId operator[](std::size_t i) const { return indices_[i]; }
  bool contains(NodeId v) const;

  /// Throws RangeError if any index is >= dimension.
  void check_range(std::size_t dimension) const;

  std::string to_string() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

private:
  std::vector<NodeId> indices_;
};

/// Graded lexicographic order: smaller sets first, equal sizes compared
/// element-wise. Enumeration and every tie-break in the library use it.
bool support_order_less(const SupportSet& a, const SupportSet& b);

}  // namespace gsco
