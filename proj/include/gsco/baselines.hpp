#pragma once

#include <cstdint>
#include <variant>

#include <Eigen/Core>

#include "gsco/constraint_model.hpp"
#include "gsco/objective.hpp"
#include "gsco/solver.hpp"

namespace gsco {

struct FixedStep {
  double alpha = 0.0;
};
struct InverseLipschitzStep {
  double lipschitz = 0.0;
};

struct PgdConfig {
  std::variant<FixedStep, InverseLipschitzStep> step = InverseLipschitzStep{};
  std::size_t max_iters = 1000;
  double rel_tol = kDefaultRelTol;
  std::uint64_t seed = 0;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  bool record_iterates = false;
  bool record_wall_clock = false;
};

void validate(const PgdConfig& config);

/// Gradient step followed by projection onto a random feasible support.
SolveResult random_pgd(const LeastSquaresObjective& objective, const ConstraintModel& model,
                       const PgdConfig& config, const Eigen::VectorXd& x0 = {});

/// Gradient step followed by the best projection over every feasible support.
SolveResult best_pgd(const LeastSquaresObjective& objective, const ConstraintModel& model,
                     const PgdConfig& config, const Eigen::VectorXd& x0 = {});

struct BestProjection {
  Eigen::VectorXd point;
  SupportSet support;
  double objective = 0.0;
};

/// Over all feasible supports, the ball projection of `x` with the lowest
/// objective; ties go to the earlier support in enumeration order.
BestProjection best_support_projection(const LeastSquaresObjective& objective,
                                       const ConstraintModel& model, const Eigen::VectorXd& x,
                                       std::size_t cap = kDefaultEnumerationCap);

}  // namespace gsco
