#include "gsco/baselines.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>

#include "gsco/error.hpp"

namespace gsco {

void validate(const PgdConfig& config) {
  if (const auto* fixed = std::get_if<FixedStep>(&config.step)) {
    if (!(fixed->alpha > 0.0) || !std::isfinite(fixed->alpha)) {
      throw ConfigError("PGD step size must be positive");
    }
  } else if (!(std::get<InverseLipschitzStep>(config.step).lipschitz > 0.0)) {
    throw ConfigError("PGD 1/L step needs a positive Lipschitz constant");
  }
  if (config.max_iters < 1) {
    throw ConfigError("max_iters must be at least 1");
  }
  if (!(config.rel_tol >= 0.0)) {
    throw ConfigError("rel_tol must be non-negative");
  }
}

namespace {

struct Projected {
  Eigen::VectorXd point;
  SupportSet support;
};

using Projector = std::function<Projected(const Eigen::VectorXd&)>;

// Shared PGD loop: x_{t+1} = project(x_t − α∇f(x_t)); rows and stopping as in solve().
SolveResult run_pgd(const LeastSquaresObjective& objective, const ConstraintModel& model,
                    const PgdConfig& config, const Eigen::VectorXd& x0,
                    const Projector& project) {
  validate(config);
  if (model.dimension() != objective.dimension()) {
    throw ConfigError("model dimension does not match the objective");
  }
  const auto d = static_cast<Eigen::Index>(objective.dimension());
  Eigen::VectorXd x = x0.size() == 0 ? Eigen::VectorXd::Zero(d) : x0;
  if (x.size() != d) {
    throw ConfigError("x0 has the wrong dimension");
  }
  const double alpha = std::holds_alternative<FixedStep>(config.step)
                           ? std::get<FixedStep>(config.step).alpha
                           : 1.0 / std::get<InverseLipschitzStep>(config.step).lipschitz;

  SolveResult out;
  IterationTrace& trace = out.trace;
  double f = objective.evaluate(x);
  if (!std::isfinite(f)) {
    throw NumericError("non-finite objective at the starting point");
  }
  auto push_row = [&](const IterationRecord& rec) {
    if (trace.records.empty() || rec.objective < out.f_best) {
      out.f_best = rec.objective;
      out.x_best = x;
      trace.best_t = rec.t;
    }
    trace.records.push_back(rec);
  };
  std::optional<Termination> stop;

  for (std::size_t t = 0;; ++t) {
    const auto started = std::chrono::steady_clock::now();
    IterationRecord rec;
    rec.t = t;
    rec.objective = f;
    rec.iterate_norm = x.norm();
    if (config.record_iterates) trace.iterates.push_back(x);

    if (!stop && t == config.max_iters) stop = Termination::MaxIterations;
    if (!stop && f == 0.0) stop = Termination::Converged;
    if (stop) {
      push_row(rec);
      break;
    }

    const Eigen::VectorXd stepped = x - alpha * objective.gradient(x);
    Projected next = project(stepped);
    const double f_next = objective.evaluate(next.point);
    if (!std::isfinite(f_next)) {
      throw NumericError("non-finite objective at iteration " + std::to_string(t + 1));
    }
    rec.eta = alpha;
    rec.captured_norm = restricted_norm(stepped, next.support);
    rec.support_size = next.support.size();
    if (config.record_wall_clock) {
      rec.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - started)
                        .count();
    }
    push_row(rec);
    if (config.record_iterates) {
      trace.targets.push_back(next.point);
      trace.supports.emplace_back(next.support.begin(), next.support.end());
    }

    if (relative_change_converged(f, f_next, config.rel_tol)) stop = Termination::Converged;
    x = std::move(next.point);
    f = f_next;
  }
  trace.termination = *stop;
  trace.best_objective = out.f_best;
  return out;
}

}  // namespace

SolveResult random_pgd(const LeastSquaresObjective& objective, const ConstraintModel& model,
                       const PgdConfig& config, const Eigen::VectorXd& x0) {
  Rng rng(config.seed, streams::kBaseline);
  const double radius = model.radius();
  return run_pgd(objective, model, config, x0, [&](const Eigen::VectorXd& stepped) {
    SupportSet support = random_feasible_support(model, rng);
    Eigen::VectorXd point = project_to_support_ball(stepped, support, radius);
    return Projected{std::move(point), std::move(support)};
  });
}

BestProjection best_support_projection(const LeastSquaresObjective& objective,
                                       const ConstraintModel& model, const Eigen::VectorXd& x,
                                       std::size_t cap) {
  std::optional<BestProjection> best;
  for_each_support(
      model,
      [&](const SupportSet& support) {
        Eigen::VectorXd point = project_to_support_ball(x, support, model.radius());
        const double value = objective.evaluate(point);
        if (!best || value < best->objective) {
          best = BestProjection{std::move(point), support, value};
        }
      },
      cap);
  return std::move(*best);
}

SolveResult best_pgd(const LeastSquaresObjective& objective, const ConstraintModel& model,
                     const PgdConfig& config, const Eigen::VectorXd& x0) {
  if (model.dimension() > config.enumeration_cap) {
    throw SizeError("best PGD refused: dimension " + std::to_string(model.dimension()) +
                    " exceeds enumeration cap " + std::to_string(config.enumeration_cap));
  }
  return run_pgd(objective, model, config, x0, [&](const Eigen::VectorXd& stepped) {
    BestProjection best = best_support_projection(objective, model, stepped,
                                                  config.enumeration_cap);
    return Projected{std::move(best.point), std::move(best.support)};
  });
}

}  // namespace gsco
