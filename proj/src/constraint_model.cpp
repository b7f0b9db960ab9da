#include "gsco/constraint_model.hpp"

#include <cmath>

#include "gsco/error.hpp"

namespace gsco {

ConstraintModel::ConstraintModel(Family family, double radius)
    : family_(std::move(family)), radius_(radius) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
    throw ConfigError("ball radius C must be positive and finite");
  }
  if (auto* m = std::get_if<GSubgraphModel>(&family_)) {
    if (!m->graph) {
      throw ConfigError("g-subgraph model needs a graph");
    }
    const std::size_t d = m->graph->node_count();
    if (m->components < 1 || m->components > m->sparsity || m->sparsity > d) {
      throw ConfigError("g-subgraph model requires 1 <= g <= s <= d (g=" +
                        std::to_string(m->components) + ", s=" + std::to_string(m->sparsity) +
                        ", d=" + std::to_string(d) + ")");
    }
  } else {
    const auto& c = std::get<CardinalityModel>(family_);
    if (c.dimension < 1 || c.sparsity < 1 || c.sparsity > c.dimension) {
      throw ConfigError("cardinality model requires 1 <= s <= d (s=" +
                        std::to_string(c.sparsity) + ", d=" + std::to_string(c.dimension) + ")");
    }
  }
}

ConstraintModel ConstraintModel::g_subgraph(std::shared_ptr<const Graph> graph, std::size_t s,
                                            std::size_t g, double radius) {
  return ConstraintModel(GSubgraphModel{std::move(graph), s, g}, radius);
}

ConstraintModel ConstraintModel::cardinality(std::size_t d, std::size_t s, double radius) {
  return ConstraintModel(CardinalityModel{d, s}, radius);
}

std::size_t ConstraintModel::dimension() const {
  if (auto* m = std::get_if<GSubgraphModel>(&family_)) return m->graph->node_count();
  return std::get<CardinalityModel>(family_).dimension;
}

std::size_t ConstraintModel::sparsity() const {
  if (auto* m = std::get_if<GSubgraphModel>(&family_)) return m->sparsity;
  return std::get<CardinalityModel>(family_).sparsity;
}

const std::shared_ptr<const Graph>& ConstraintModel::graph() const {
  static const std::shared_ptr<const Graph> none;
  if (auto* m = std::get_if<GSubgraphModel>(&family_)) return m->graph;
  return none;
}

bool is_member(const ConstraintModel& model, const SupportSet& support) {
  support.check_range(model.dimension());
  if (support.size() > model.sparsity()) {
    return false;
  }
  if (auto* m = std::get_if<GSubgraphModel>(&model.family())) {
    return connected_component_count(*m->graph, support) <= m->components;
  }
  return true;
}

void for_each_support(const ConstraintModel& model,
                      const std::function<void(const SupportSet&)>& visit, std::size_t cap) {
  const std::size_t d = model.dimension();
  if (d > cap) {
    throw SizeError("support enumeration refused: dimension " + std::to_string(d) +
                    " exceeds cap " + std::to_string(cap));
  }
  const std::size_t s = model.sparsity();
  std::vector<NodeId> combo;
  for (std::size_t k = 1; k <= s; ++k) {
    combo.resize(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = static_cast<NodeId>(i);
    for (;;) {
      SupportSet candidate(combo);
      if (is_member(model, candidate)) {
        visit(candidate);
      }
      // Advance to the next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == d - k + (i - 1)) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
}

std::vector<SupportSet> enumerate_supports(const ConstraintModel& model, std::size_t cap) {
  std::vector<SupportSet> out;
  for_each_support(model, [&](const SupportSet& s) { out.push_back(s); }, cap);
  return out;
}

double restricted_norm(const Eigen::VectorXd& x, const SupportSet& support) {
  support.check_range(static_cast<std::size_t>(x.size()));
  double sum = 0.0;
  for (NodeId i : support) sum += x[i] * x[i];
  return std::sqrt(sum);
}

Eigen::VectorXd project_to_support_ball(const Eigen::VectorXd& x, const SupportSet& support,
                                        double radius) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  const double norm = restricted_norm(x, support);
  if (norm == 0.0) {
    return out;
  }
  const double scale = norm > radius ? radius / norm : 1.0;
  for (NodeId i : support) out[i] = x[i] * scale;
  return out;
}

SupportSet support_of(const Eigen::VectorXd& x) {
  std::vector<NodeId> idx;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) idx.push_back(static_cast<NodeId>(i));
  }
  return SupportSet(std::move(idx));
}

}  // namespace gsco
