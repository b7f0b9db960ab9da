#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace gsco {

enum class Termination { Converged, MaxIterations, Stationary };

std::string_view to_string(Termination reason);

// One row per iterate x_t. The step fields describe the move from x_t to
// x_{t+1}; on the final row, where no step was taken, they are zero.
struct IterationRecord {
  std::size_t t = 0;
  double eta = 0.0;
  double objective = 0.0;  // f(x_t)
  double captured_norm = 0.0;
  std::size_t support_size = 0;
  std::size_t shrinks = 0;
  std::int64_t wall_ns = 0;
  double iterate_norm = 0.0;  // ‖x_t‖₂
  bool eta_floored = false;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  std::size_t best_t = 0;
  double best_objective = 0.0;
  Termination termination = Termination::MaxIterations;

  // Filled only when iterate recording is enabled: x_t for every row and the
  // step target (ṽ_t, or ṽ_t/δ under option II, or the projected point for
  // PGD) for every row that took a step.
  std::vector<Eigen::VectorXd> iterates;
  std::vector<Eigen::VectorXd> targets;
  std::vector<std::vector<std::uint32_t>> supports;

  /// Number of steps taken (rows minus one).
  std::size_t steps() const { return records.empty() ? 0 : records.size() - 1; }
};

inline constexpr std::string_view kTraceCsvHeader =
    "t,eta,objective,captured_norm,support_size,shrinks,wall_ns";

void write_trace_csv(std::ostream& out, const IterationTrace& trace);
/// Reads the rows written by write_trace_csv (summary fields are not set).
IterationTrace read_trace_csv(std::istream& in);

}  // namespace gsco
