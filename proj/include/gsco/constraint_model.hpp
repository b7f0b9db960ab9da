#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "gsco/graph.hpp"
#include "gsco/support_set.hpp"

namespace gsco {

inline constexpr std::size_t kDefaultEnumerationCap = 20;

// Supports of at most `sparsity` nodes spanning at most `components`
// connected components of `graph`.
struct GSubgraphModel {
  std::shared_ptr<const Graph> graph;
  std::size_t sparsity;
  std::size_t components;
};

// Any support of at most `sparsity` indices out of `dimension`.
struct CardinalityModel {
  std::size_t dimension;
  std::size_t sparsity;
};

// Feasible region: the convex hull of radius-`radius` vectors whose support
// belongs to the structured family.
class ConstraintModel {
public:
  using Family = std::variant<GSubgraphModel, CardinalityModel>;

  /// Throws ConfigError unless 1 <= g <= s <= d and radius > 0.
  ConstraintModel(Family family, double radius);

  static ConstraintModel g_subgraph(std::shared_ptr<const Graph> graph, std::size_t s,
                                    std::size_t g, double radius);
  static ConstraintModel cardinality(std::size_t d, std::size_t s, double radius);

  const Family& family() const { return family_; }
  double radius() const { return radius_; }
  std::size_t dimension() const;
  std::size_t sparsity() const;
  bool is_g_subgraph() const { return std::holds_alternative<GSubgraphModel>(family_); }
  /// The underlying graph, or nullptr for the cardinality model.
  const std::shared_ptr<const Graph>& graph() const;

private:
  Family family_;
  double radius_;
};

/// True iff |S| <= s and, for the g-subgraph family, S spans <= g components.
bool is_member(const ConstraintModel& model, const SupportSet& support);

/// Visits every nonempty feasible support once, in graded lexicographic
/// order. Refuses with SizeError when d exceeds `cap`.
void for_each_support(const ConstraintModel& model,
                      const std::function<void(const SupportSet&)>& visit,
                      std::size_t cap = kDefaultEnumerationCap);

std::vector<SupportSet> enumerate_supports(const ConstraintModel& model,
                                           std::size_t cap = kDefaultEnumerationCap);

/// Euclidean projection of x onto {z : supp(z) ⊆ S, ‖z‖₂ <= radius}.
Eigen::VectorXd project_to_support_ball(const Eigen::VectorXd& x, const SupportSet& support,
                                        double radius);

/// ‖x_S‖₂, accumulated in increasing index order.
double restricted_norm(const Eigen::VectorXd& x, const SupportSet& support);

/// Support of x (indices of nonzero entries).
SupportSet support_of(const Eigen::VectorXd& x);

}  // namespace gsco
