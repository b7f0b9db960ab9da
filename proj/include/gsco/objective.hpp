#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "gsco/constraint_model.hpp"
#include "gsco/rng.hpp"

namespace gsco {

// f(x) = ½‖Ax − y‖₂² with a dense n×d sensing matrix.
class LeastSquaresObjective {
public:
  /// Throws ConfigError on empty or mismatched shapes and non-finite entries.
  LeastSquaresObjective(Eigen::MatrixXd A, Eigen::VectorXd y);

  std::size_t rows() const { return static_cast<std::size_t>(A_.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(A_.cols()); }
  const Eigen::MatrixXd& matrix() const { return A_; }
  const Eigen::VectorXd& observations() const { return y_; }

  double evaluate(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::VectorXd residual(const Eigen::VectorXd& x) const;

  /// Largest eigenvalue of AᵀA by power iteration from the all-ones vector.
  /// Stops once ‖AᵀAv − λv‖ <= tol·λ; throws NumericError after
  /// `max_iterations` without convergence.
  double lipschitz_constant(double tol = 1e-6, std::size_t max_iterations = 100000) const;

private:
  Eigen::MatrixXd A_;
  Eigen::VectorXd y_;
};

inline constexpr double kDefaultNoiseSigma = 0.01;

struct InstanceSpec {
  std::size_t dimension = 0;
  std::size_t rows = 0;
  double sigma = kDefaultNoiseSigma;
  ConstraintModel model;
  std::uint64_t seed = 0;
};

struct Instance {
  LeastSquaresObjective objective;
  Eigen::VectorXd x_star;
};

/// Draws A with N(0, 1/n) entries, a unit-norm signal on a feasible support,
/// and y = A x* + e with e ~ N(0, σ²). Each component uses its own RNG
/// stream so the draws of one do not shift the others.
Instance generate_instance(const InstanceSpec& spec);

/// Random feasible support: the g-subgraph family grows g BFS trees from
/// distinct uniform seeds round-robin; the cardinality family draws s
/// distinct uniform indices. May return fewer than s nodes when the seeds'
/// components are too small.
SupportSet random_feasible_support(const ConstraintModel& model, Rng& rng);

// Instance files: A.csv (row-major, one matrix row per line), y.csv, x_star.csv
// (one value per line), all printed with 17 significant digits.
std::string matrix_csv(const Eigen::MatrixXd& A);
std::string vector_csv(const Eigen::VectorXd& v);
void write_instance_csv(const std::filesystem::path& dir, const Instance& instance);
Instance read_instance_csv(const std::filesystem::path& dir);

}  // namespace gsco
