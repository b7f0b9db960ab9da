#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsco/baselines.hpp"
#include "gsco/constraint_model.hpp"
#include "gsco/objective.hpp"
#include "gsco/solver.hpp"

namespace gsco::harness {

// Flat key=value run configuration. Lines are "key = value"; '#' starts a
// comment line. Only documented keys are accepted.
class RunConfig {
public:
  RunConfig() = default;

  static RunConfig parse(std::istream& in);
  static RunConfig load(const std::filesystem::path& path);

  /// Applies "key=value"; throws ConfigError on malformed text or unknown keys.
  void apply(const std::string& assignment);
  void set(const std::string& key, std::string value);
  bool has(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Keys in sorted order, one "key=value" per line.
  void write(std::ostream& out) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

private:
  std::map<std::string, std::string> entries_;
};

bool is_known_key(const std::string& key);

// A problem instance together with the model it was generated for.
struct LoadedInstance {
  std::shared_ptr<const Instance> instance;
  std::shared_ptr<const ConstraintModel> model;
  std::shared_ptr<const Graph> graph;  // may be null for cardinality models
  std::size_t dimension = 0;
  std::size_t rows = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string fingerprint;  // hex FNV-1a over the canonical CSV/edge-list text
};

/// Generates from instance.* / model.* / graph.* keys, or reads the directory
/// named by instance.path.
LoadedInstance build_instance(const RunConfig& config);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

struct GenerateOutput {
  std::string fingerprint;
  double objective_at_truth = 0.0;
};

/// Writes instance.json, A.csv, y.csv, x_star.csv (and graph.txt when the
/// instance has a graph) into `out`.
GenerateOutput cmd_generate(const RunConfig& config, const std::filesystem::path& out);

struct RunOutput {
  std::string method;
  std::string label;
  SolveResult result;
  std::string instance_fingerprint;
};

/// Runs the configured method on an already built instance.
RunOutput run_method(const RunConfig& config, const LoadedInstance& instance);

/// Runs one method and writes config.txt, trace.csv and summary.json to `out`.
RunOutput cmd_solve(const RunConfig& config, const std::filesystem::path& out);

struct CompareOutput {
  std::vector<RunOutput> runs;
  std::vector<std::size_t> ranking;  // indices into runs, best final objective first
};

/// Runs each config into out/<label>/, checks they share one instance, and
/// writes out/comparison.csv with columns method,t,objective.
CompareOutput cmd_compare(const std::vector<RunConfig>& configs,
                          const std::filesystem::path& out);

void write_summary_json(std::ostream& out, const RunOutput& run, const RunConfig& config);

}  // namespace gsco::harness
