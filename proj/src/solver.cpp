#include "gsco/solver.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <optional>

#include "gsco/error.hpp"

namespace gsco {

std::string_view to_string(FwVariant variant) {
  return variant == FwVariant::FW ? "fw" : "accfw";
}

std::string_view to_string(UpdateOption option) { return option == UpdateOption::I ? "I" : "II"; }

void validate(const SolverConfig& config) {
  if (!(config.delta > 0.0 && config.delta <= 1.0)) {
    throw ConfigError("delta must be in (0, 1]");
  }
  if (config.max_iters < 1) {
    throw ConfigError("max_iters must be at least 1");
  }
  if (!(config.rel_tol >= 0.0)) {
    throw ConfigError("rel_tol must be non-negative");
  }
  if (const auto* bt = std::get_if<BacktrackingStep>(&config.step_rule)) {
    if (!(bt->beta > 0.0 && bt->beta < 1.0)) {
      throw ConfigError("backtracking beta must be in (0, 1)");
    }
    if (!(bt->eta_init > 0.0 && bt->eta_init <= 1.0)) {
      throw ConfigError("backtracking eta_init must be in (0, 1]");
    }
  }
  if (const auto* dr = std::get_if<DemyanovRubinovStep>(&config.step_rule)) {
    if (!(dr->lipschitz > 0.0) || !std::isfinite(dr->lipschitz)) {
      throw ConfigError("Demyanov-Rubinov step needs a positive Lipschitz constant");
    }
  }
  if (config.variant == FwVariant::AccFW) {
    if (!(config.lipschitz > 0.0) || !std::isfinite(config.lipschitz)) {
      throw ConfigError("AccFW needs a positive Lipschitz constant");
    }
    if (!std::holds_alternative<OpenLoopStep>(config.step_rule)) {
      throw ConfigError(
          "AccFW computes z_t from eta_t; only the open-loop schedule defines eta_t before z_t");
    }
  }
}

Eigen::VectorXd compute_z(FwVariant variant, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& grad, double lipschitz, double eta) {
  if (variant == FwVariant::FW) {
    return -grad;
  }
  if (!(lipschitz > 0.0) || !(eta > 0.0)) {
    throw ConfigError("AccFW z-rule needs L > 0 and eta > 0");
  }
  return -(x - grad / (lipschitz * eta));
}

Eigen::VectorXd step_target(const Eigen::VectorXd& v_tilde, UpdateOption option, double delta) {
  if (option == UpdateOption::I) return v_tilde;
  return v_tilde / delta;
}

Eigen::VectorXd fw_step(const Eigen::VectorXd& x, const Eigen::VectorXd& v_tilde, double eta,
                        UpdateOption option, double delta) {
  const Eigen::VectorXd target = step_target(v_tilde, option, delta);
  return x + eta * (target - x);
}

bool backtracking_accepts(const ObjectiveFn& objective, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& v, double eta) {
  const Eigen::VectorXd d = x - v;
  const double probe = objective(x - eta * d);
  return !(probe > objective(x) - 0.5 * eta * d.squaredNorm());
}

bool backtracking_accepts(const LeastSquaresObjective& objective, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& v, double eta) {
  return backtracking_accepts(
      [&objective](const Eigen::VectorXd& p) { return objective.evaluate(p); }, x, v, eta);
}

BacktrackingResult backtracking_eta(const LeastSquaresObjective& objective,
                                    const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                    double eta_prev, double beta) {
  return backtracking_eta(
      [&objective](const Eigen::VectorXd& p) { return objective.evaluate(p); }, x, v, eta_prev,
      beta);
}

BacktrackingResult backtracking_eta(const ObjectiveFn& objective, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& v, double eta_prev, double beta) {
  if (!(eta_prev > 0.0 && eta_prev <= 1.0)) {
    throw ConfigError("backtracking needs a previous step in (0, 1]");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("backtracking beta must be in (0, 1)");
  }
  const Eigen::VectorXd d = x - v;
  const double f0 = objective(x);
  const double dd = d.squaredNorm();
  BacktrackingResult result{eta_prev, 0, false};
  for (;;) {
    const double probe = objective(x - result.eta * d);
    if (!std::isfinite(probe) || !std::isfinite(f0)) {
      throw NumericError("non-finite objective during backtracking");
    }
    if (!(probe > f0 - 0.5 * result.eta * dd)) {
      return result;
    }
    if (result.eta * beta < kEtaFloor) {
      result.eta = kEtaFloor;
      result.floored = true;
      return result;
    }
    result.eta *= beta;
    ++result.shrinks;
  }
}

double demyanov_rubinov_eta(const Eigen::VectorXd& grad, const Eigen::VectorXd& v_tilde,
                            const Eigen::VectorXd& x, double lipschitz) {
  if (!(lipschitz > 0.0)) {
    throw ConfigError("Demyanov-Rubinov step needs L > 0");
  }
  const Eigen::VectorXd d = v_tilde - x;
  const double dd = d.squaredNorm();
  if (dd == 0.0) return 0.0;
  const double eta = (-grad).dot(d) / (lipschitz * dd);
  return std::clamp(eta, 0.0, 1.0);
}

bool relative_change_converged(double f_prev, double f_next, double rel_tol) {
  if (f_prev == 0.0) return true;
  return std::abs(f_next - f_prev) / std::abs(f_prev) <= rel_tol;
}

SolveResult solve(const SolverConfig& config, const LeastSquaresObjective& objective,
                  const ConstraintModel& model, const Eigen::VectorXd& x0) {
  validate(config);
  const auto d = static_cast<Eigen::Index>(objective.dimension());
  if (model.dimension() != objective.dimension()) {
    throw ConfigError("model dimension does not match the objective");
  }
  Eigen::VectorXd x = x0.size() == 0 ? Eigen::VectorXd::Zero(d) : x0;
  if (x.size() != d) {
    throw ConfigError("x0 has the wrong dimension");
  }

  DualMaximizationOracle oracle(config.dmo.variant, config.dmo.params, model, config.dmo.graph,
                                config.dmo.enumeration_cap);
  const double radius = model.radius();
  double eta_prev = 1.0;
  if (const auto* bt = std::get_if<BacktrackingStep>(&config.step_rule)) {
    eta_prev = bt->eta_init;
  }

  SolveResult out;
  IterationTrace& trace = out.trace;
  double f = objective.evaluate(x);
  if (!std::isfinite(f)) {
    throw NumericError("non-finite objective at the starting point");
  }
  // Rows are pushed while x is still the iterate they describe.
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

    const Eigen::VectorXd grad = objective.gradient(x);
    const double scheduled = open_loop_eta(t);
    const Eigen::VectorXd z = compute_z(config.variant, x, grad, config.lipschitz, scheduled);
    const DmoResult picked = oracle(z);
    if (picked.captured_norm == 0.0) {
      stop = Termination::Stationary;
      push_row(rec);
      break;
    }
    const Eigen::VectorXd v_tilde = support_to_direction(z, picked.support, radius);
    const Eigen::VectorXd target = step_target(v_tilde, config.option, config.delta);

    double eta = scheduled;
    if (const auto* bt = std::get_if<BacktrackingStep>(&config.step_rule)) {
      const BacktrackingResult r = backtracking_eta(objective, x, target, eta_prev, bt->beta);
      eta = r.eta;
      eta_prev = r.eta;
      rec.shrinks = r.shrinks;
      rec.eta_floored = r.floored;
    } else if (const auto* dr = std::get_if<DemyanovRubinovStep>(&config.step_rule)) {
      eta = demyanov_rubinov_eta(grad, target, x, dr->lipschitz);
    }

    Eigen::VectorXd x_next = fw_step(x, v_tilde, eta, config.option, config.delta);
    const double f_next = objective.evaluate(x_next);
    if (!std::isfinite(f_next)) {
      throw NumericError("non-finite objective at iteration " + std::to_string(t + 1));
    }

    rec.eta = eta;
    rec.captured_norm = picked.captured_norm;
    rec.support_size = picked.support.size();
    if (config.record_wall_clock) {
      rec.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                        std::chrono::steady_clock::now() - started)
                        .count();
    }
    push_row(rec);
    if (config.record_iterates) {
      trace.targets.push_back(target);
      trace.supports.emplace_back(picked.support.begin(), picked.support.end());
    }

    if (relative_change_converged(f, f_next, config.rel_tol)) stop = Termination::Converged;
    x = std::move(x_next);
    f = f_next;
  }
  trace.termination = *stop;
  trace.best_objective = out.f_best;
  return out;
}

}  // namespace gsco
