#include "gsco/dmo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gsco/error.hpp"

namespace gsco {

namespace {

void check_vector(const Eigen::VectorXd& z, std::size_t d) {
  if (static_cast<std::size_t>(z.size()) != d) {
    throw ConfigError("vector has dimension " + std::to_string(z.size()) + ", expected " +
                      std::to_string(d));
  }
}

void check_params(const Graph& graph, const DmoParams& params, const Eigen::VectorXd& z) {
  check_vector(z, graph.node_count());
  if (params.g < 1 || params.g > graph.node_count()) {
    throw ConfigError("component budget g=" + std::to_string(params.g) + " must be in [1, d=" +
                      std::to_string(graph.node_count()) + "]");
  }
  if (params.s < params.g || params.s > graph.node_count()) {
    throw ConfigError("sparsity s=" + std::to_string(params.s) + " must be in [g, d]");
  }
  if (params.theta < 1) {
    throw ConfigError("theta must be at least 1");
  }
}

// Working state shared by both visiting oracles: labels[v] is the component
// id of v (0 = not in the support).
struct VisitState {
  std::vector<NodeId> seeds;
  std::vector<NodeId> members;
  std::vector<std::uint32_t> labels;

  VisitState(const Graph& graph, std::size_t g, const Eigen::VectorXd& z)
      : seeds(top_magnitude_indices(z, g)), members(seeds), labels(graph.node_count(), 0) {
    std::uint32_t id = 1;
    for (NodeId v : seeds) labels[v] = id++;
  }

  // The two one-endpoint-labelled growth rules, each followed by a size
  // check. `on_full` runs whenever the support reaches s; returning true
  // stops the caller.
  template <typename OnFull>
  bool grow(NodeId u, NodeId v, std::size_t s, OnFull&& on_full) {
    if (labels[u] == 0 && labels[v] != 0) {
      members.push_back(u);
      labels[u] = labels[v];
    }
    if (members.size() == s && on_full()) return true;
    if (labels[u] != 0 && labels[v] == 0) {
      members.push_back(v);
      labels[v] = labels[u];
    }
    if (members.size() == s && on_full()) return true;
    return false;
  }

  void reset() {
    for (std::size_t i = seeds.size(); i < members.size(); ++i) labels[members[i]] = 0;
    members.resize(seeds.size());
  }

  DmoResult result(const Eigen::VectorXd& z) const {
    SupportSet support = SupportSet::from_unsorted(members);
    const double norm = restricted_norm(z, support);
    return DmoResult{std::move(support), norm, 1};
  }
};

}  // namespace

std::vector<NodeId> top_magnitude_indices(const Eigen::VectorXd& z, std::size_t k) {
  const auto d = static_cast<std::size_t>(z.size());
  k = std::min(k, d);
  std::vector<NodeId> idx(d);
  std::iota(idx.begin(), idx.end(), NodeId{0});
  auto by_magnitude = [&z](NodeId a, NodeId b) {
    const double ma = std::abs(z[a]);
    const double mb = std::abs(z[b]);
    return ma > mb || (ma == mb && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    by_magnitude);
  idx.resize(k);
  return idx;
}

SupportSet exact_lmo_support(const ConstraintModel& model, const Eigen::VectorXd& z,
                             std::size_t cap) {
  check_vector(z, model.dimension());
  if (!model.is_g_subgraph()) {
    std::vector<NodeId> ranked = top_magnitude_indices(z, model.sparsity());
    // Dropping zero entries keeps the norm and gives the smaller support.
    while (!ranked.empty() && z[ranked.back()] == 0.0) ranked.pop_back();
    if (ranked.empty()) return SupportSet{0};
    return SupportSet::from_unsorted(std::move(ranked));
  }

  std::optional<SupportSet> best;
  double best_sq = -1.0;
  for_each_support(
      model,
      [&](const SupportSet& candidate) {
        double sq = 0.0;
        for (NodeId i : candidate) sq += z[i] * z[i];
        if (sq > best_sq) {
          best_sq = sq;
          best = candidate;
        }
      },
      cap);
  return *best;
}

DmoResult top_g_plus_visit(const Graph& graph, const DmoParams& params,
                           const Eigen::VectorXd& z) {
  check_params(graph, params, z);
  VisitState state(graph, params.g, z);
  if (state.members.size() == params.s) {
    return state.result(z);
  }
  for (const auto& [u, v] : graph.edges()) {
    if (state.grow(u, v, params.s, [] { return true; })) break;
  }
  return state.result(z);
}

OptimalVisitAudit top_g_plus_optimal_visit_audited(const Graph& graph, const DmoParams& params,
                                                   const Eigen::VectorXd& z, Rng& rng) {
  check_params(graph, params, z);
  OptimalVisitAudit audit;
  VisitState state(graph, params.g, z);
  if (state.members.size() == params.s) {
    audit.result = state.result(z);
    return audit;
  }

  const auto edges = graph.edges();
  const std::size_t draws = edges.empty() ? 0 : (params.s - params.g) * params.theta;
  auto record = [&] {
    audit.candidates.push_back(state.result(z));
    state.reset();
    return false;
  };
  for (std::size_t t = 0; t < draws; ++t) {
    const auto& [u, v] = edges[rng.uniform_index(edges.size())];
    state.grow(u, v, params.s, record);
  }

  if (audit.candidates.empty()) {
    audit.result = top_g_plus_visit(graph, params, z);
    audit.fell_back = true;
    return audit;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < audit.candidates.size(); ++i) {
    if (audit.candidates[i].captured_norm > audit.candidates[best].captured_norm) best = i;
  }
  audit.result = audit.candidates[best];
  audit.result.candidates_examined = audit.candidates.size();
  return audit;
}

DmoResult top_g_plus_optimal_visit(const Graph& graph, const DmoParams& params,
                                   const Eigen::VectorXd& z, Rng& rng) {
  return top_g_plus_optimal_visit_audited(graph, params, z, rng).result;
}

DmoResult top_g_plus_optimal_visit(const Graph& graph, const DmoParams& params,
                                   const Eigen::VectorXd& z) {
  Rng rng(params.seed, streams::kDmo);
  return top_g_plus_optimal_visit(graph, params, z, rng);
}

Eigen::VectorXd support_to_direction(const Eigen::VectorXd& z, const SupportSet& support,
                                     double radius) {
  const double norm = restricted_norm(z, support);
  if (norm == 0.0) {
    throw DegenerateDirectionError("vector vanishes on support " + support.to_string());
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(z.size());
  for (NodeId i : support) out[i] = radius * z[i] / norm;
  return out;
}

std::string_view to_string(DmoVariant variant) {
  switch (variant) {
    case DmoVariant::TopG:
      return "topg";
    case DmoVariant::TopGOptimal:
      return "topg_optimal";
    case DmoVariant::Exact:
      return "exact";
  }
  return "unknown";
}

DmoVariant parse_dmo_variant(std::string_view name) {
  if (name == "topg") return DmoVariant::TopG;
  if (name == "topg_optimal") return DmoVariant::TopGOptimal;
  if (name == "exact") return DmoVariant::Exact;
  throw ConfigError("unknown dmo variant '" + std::string(name) +
                    "' (expected topg, topg_optimal or exact)");
}

double dmo_ratio(const Graph& graph, const DmoParams& params, const Eigen::VectorXd& z,
                 const ConstraintModel& model, DmoVariant variant) {
  SupportSet heuristic;
  switch (variant) {
    case DmoVariant::TopG:
      heuristic = top_g_plus_visit(graph, params, z).support;
      break;
    case DmoVariant::TopGOptimal:
      heuristic = top_g_plus_optimal_visit(graph, params, z).support;
      break;
    case DmoVariant::Exact:
      heuristic = exact_lmo_support(model, z);
      break;
  }
  const double exact = restricted_norm(z, exact_lmo_support(model, z));
  if (exact == 0.0) return 1.0;
  return restricted_norm(z, heuristic) / exact;
}

DualMaximizationOracle::DualMaximizationOracle(DmoVariant variant, DmoParams params,
                                               const ConstraintModel& model,
                                               std::shared_ptr<const Graph> graph,
                                               std::size_t enumeration_cap)
    : variant_(variant),
      params_(params),
      model_(model),
      graph_(graph ? std::move(graph) : model.graph()),
      cap_(enumeration_cap),
      rng_(params.seed, streams::kDmo) {
  if (variant_ == DmoVariant::Exact) {
    if (model_.is_g_subgraph() && model_.dimension() > cap_) {
      throw SizeError("exact oracle refused: dimension " + std::to_string(model_.dimension()) +
                      " exceeds enumeration cap " + std::to_string(cap_));
    }
    return;
  }
  if (!graph_) {
    throw ConfigError("the " + std::string(to_string(variant_)) + " oracle needs a graph");
  }
  if (graph_->node_count() != model_.dimension()) {
    throw ConfigError("oracle graph has " + std::to_string(graph_->node_count()) +
                      " nodes, model dimension is " + std::to_string(model_.dimension()));
  }
  if (params_.s > model_.sparsity()) {
    throw ConfigError("oracle sparsity exceeds the model's");
  }
  if (const auto* m = std::get_if<GSubgraphModel>(&model_.family());
      m && params_.g > m->components) {
    throw ConfigError("oracle component budget exceeds the model's");
  }
  if (params_.g < 1 || params_.g > params_.s || params_.theta < 1) {
    throw ConfigError("oracle requires 1 <= g <= s and theta >= 1");
  }
}

DmoResult DualMaximizationOracle::operator()(const Eigen::VectorXd& z) {
  switch (variant_) {
    case DmoVariant::TopG:
      return top_g_plus_visit(*graph_, params_, z);
    case DmoVariant::TopGOptimal:
      return top_g_plus_optimal_visit(*graph_, params_, z, rng_);
    case DmoVariant::Exact: {
      SupportSet support = exact_lmo_support(model_, z, cap_);
      const double norm = restricted_norm(z, support);
      return DmoResult{std::move(support), norm, 1};
    }
  }
  throw ConfigError("unknown oracle variant");
}

}  // namespace gsco
