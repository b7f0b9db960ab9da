#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "gsco/constraint_model.hpp"
#include "gsco/graph.hpp"
#include "gsco/rng.hpp"
#include "gsco/support_set.hpp"

namespace gsco {

inline constexpr std::size_t kDefaultTheta = 5;

struct DmoParams {
  std::size_t g = 1;  // component budget
  std::size_t s = 1;  // sparsity budget
  std::size_t theta = kDefaultTheta;  // candidates expected by optimal visiting
  std::uint64_t seed = 0;  // optimal visiting only
};

struct DmoResult {
  SupportSet support;
  double captured_norm = 0.0;  // ‖z_S‖₂
  std::size_t candidates_examined = 1;
};

/// Exact maximiser of ‖z_S‖₂ over the model's supports; ties go to the first
/// support in graded lexicographic order. Cardinality models are solved by
/// selection at any scale, g-subgraph models by enumeration (SizeError above
/// `cap`).
SupportSet exact_lmo_support(const ConstraintModel& model, const Eigen::VectorXd& z,
                             std::size_t cap = kDefaultEnumerationCap);

/// Indices of the k largest |z_i|, ties by ascending index, in rank order.
std::vector<NodeId> top_magnitude_indices(const Eigen::VectorXd& z, std::size_t k);

/// Top-g+ visiting: seed the g largest-magnitude entries, each as its own
/// component, then scan the edge list once and attach any node adjacent to a
/// labelled one until s nodes are held. Returns the partial support when the
/// scan ends first.
DmoResult top_g_plus_visit(const Graph& graph, const DmoParams& params, const Eigen::VectorXd& z);

/// Top-g+ optimal visiting: same seeding, then (s−g)·θ uniform edge draws
/// with replacement. Each time the support fills up it is recorded and the
/// state goes back to the seeds. Returns the recorded support with the
/// largest ‖z_S‖₂ (first on ties), or the top_g_plus_visit result if nothing
/// completed.
DmoResult top_g_plus_optimal_visit(const Graph& graph, const DmoParams& params,
                                   const Eigen::VectorXd& z, Rng& rng);
DmoResult top_g_plus_optimal_visit(const Graph& graph, const DmoParams& params,
                                   const Eigen::VectorXd& z);

/// Every candidate recorded by one optimal-visiting call, for auditing.
struct OptimalVisitAudit {
  DmoResult result;
  std::vector<DmoResult> candidates;
  bool fell_back = false;
};
OptimalVisitAudit top_g_plus_optimal_visit_audited(const Graph& graph, const DmoParams& params,
                                                   const Eigen::VectorXd& z, Rng& rng);

/// C · z_S / ‖z_S‖₂ embedded in R^d. Throws DegenerateDirectionError when
/// ‖z_S‖₂ = 0.
Eigen::VectorXd support_to_direction(const Eigen::VectorXd& z, const SupportSet& support,
                                     double radius);

enum class DmoVariant { TopG, TopGOptimal, Exact };

std::string_view to_string(DmoVariant variant);
DmoVariant parse_dmo_variant(std::string_view name);

/// ‖z_{S_alg}‖ / ‖z_{S*}‖ for a heuristic oracle against the exact maximiser
/// over `model`; 1 when the exact norm is zero.
double dmo_ratio(const Graph& graph, const DmoParams& params, const Eigen::VectorXd& z,
                 const ConstraintModel& model, DmoVariant variant = DmoVariant::TopG);

// A configured oracle, as used by the solver. The topg variants run on
// `graph` (the model's graph unless overridden); the exact variant uses the
// model. Holds its own RNG stream for optimal visiting.
class DualMaximizationOracle {
public:
  DualMaximizationOracle(DmoVariant variant, DmoParams params, const ConstraintModel& model,
                         std::shared_ptr<const Graph> graph = nullptr,
                         std::size_t enumeration_cap = kDefaultEnumerationCap);

  DmoResult operator()(const Eigen::VectorXd& z);

  DmoVariant variant() const { return variant_; }
  const DmoParams& params() const { return params_; }

private:
  DmoVariant variant_;
  DmoParams params_;
  ConstraintModel model_;
  std::shared_ptr<const Graph> graph_;
  std::size_t cap_;
  Rng rng_;
};

}  // namespace gsco
