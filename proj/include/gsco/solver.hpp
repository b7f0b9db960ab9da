#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>

#include <Eigen/Core>

#include "gsco/constraint_model.hpp"
#include "gsco/dmo.hpp"
#include "gsco/objective.hpp"
#include "gsco/trace.hpp"

namespace gsco {

enum class FwVariant { FW, AccFW };
enum class UpdateOption { I, II };

struct OpenLoopStep {};
struct BacktrackingStep {
  double beta = 0.5;
  double eta_init = 1.0;
};
struct DemyanovRubinovStep {
  double lipschitz = 0.0;
};
using StepRule = std::variant<OpenLoopStep, BacktrackingStep, DemyanovRubinovStep>;

inline constexpr double kDefaultRelTol = 1e-6;
inline constexpr double kEtaFloor = 1e-12;

struct DmoSelection {
  DmoVariant variant = DmoVariant::TopG;
  DmoParams params;
  // Graph for the topg oracles when the model carries none (cardinality model).
  std::shared_ptr<const Graph> graph;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

struct SolverConfig {
  FwVariant variant = FwVariant::FW;
  UpdateOption option = UpdateOption::I;
  StepRule step_rule = OpenLoopStep{};
  double delta = 1.0;
  double lipschitz = 0.0;  // AccFW only
  std::size_t max_iters = 1000;
  double rel_tol = kDefaultRelTol;
  DmoSelection dmo;
  bool record_iterates = false;
  bool record_wall_clock = false;
};

/// Throws ConfigError on out-of-range knobs and on AccFW combined with a
/// step rule whose η depends on z_t (backtracking, Demyanov-Rubinov).
void validate(const SolverConfig& config);

/// FW: −∇f. AccFW: −(x − ∇f/(L·η)).
Eigen::VectorXd compute_z(FwVariant variant, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& grad, double lipschitz, double eta);

/// Option I: x + η(ṽ − x). Option II: x + η(ṽ/δ − x).
Eigen::VectorXd fw_step(const Eigen::VectorXd& x, const Eigen::VectorXd& v_tilde, double eta,
                        UpdateOption option, double delta);

/// Point the update moves toward: ṽ, or ṽ/δ under option II.
Eigen::VectorXd step_target(const Eigen::VectorXd& v_tilde, UpdateOption option, double delta);

struct BacktrackingResult {
  double eta = 0.0;
  std::size_t shrinks = 0;
  bool floored = false;
};

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

/// Sufficient-decrease test f(x − η(x − v)) <= f(x) − ½η‖x − v‖².
bool backtracking_accepts(const ObjectiveFn& objective, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& v, double eta);
bool backtracking_accepts(const LeastSquaresObjective& objective, const Eigen::VectorXd& x,
                          const Eigen::VectorXd& v, double eta);

/// Shrinks η by β from `eta_prev` until backtracking_accepts holds; stops at
/// kEtaFloor (flagged) if it never does.
BacktrackingResult backtracking_eta(const ObjectiveFn& objective, const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& v, double eta_prev, double beta);
BacktrackingResult backtracking_eta(const LeastSquaresObjective& objective,
                                    const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                    double eta_prev, double beta);

/// min{⟨−∇f, ṽ − x⟩ / (L‖ṽ − x‖²), 1}, clamped at 0; 0 when ṽ = x.
double demyanov_rubinov_eta(const Eigen::VectorXd& grad, const Eigen::VectorXd& v_tilde,
                            const Eigen::VectorXd& x, double lipschitz);

/// Open-loop schedule 2/(t+2).
inline double open_loop_eta(std::size_t t) { return 2.0 / (static_cast<double>(t) + 2.0); }

/// |f_next − f_prev| / |f_prev| <= rel_tol, or f_prev == 0.
bool relative_change_converged(double f_prev, double f_next, double rel_tol);

struct SolveResult {
  Eigen::VectorXd x_best;
  double f_best = 0.0;
  IterationTrace trace;
};

/// Frank-Wolfe over the model's hull driven by the configured oracle. Starts
/// from x0 (zero when empty) and returns the iterate with the lowest
/// objective.
SolveResult solve(const SolverConfig& config, const LeastSquaresObjective& objective,
                  const ConstraintModel& model, const Eigen::VectorXd& x0 = {});

std::string_view to_string(FwVariant variant);
std::string_view to_string(UpdateOption option);

}  // namespace gsco
