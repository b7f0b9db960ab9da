#include "gsco/objective.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gsco/error.hpp"

namespace gsco {

LeastSquaresObjective::LeastSquaresObjective(Eigen::MatrixXd A, Eigen::VectorXd y)
    : A_(std::move(A)), y_(std::move(y)) {
  if (A_.rows() < 1 || A_.cols() < 1) {
    throw ConfigError("sensing matrix must be at least 1x1");
  }
  if (y_.size() != A_.rows()) {
    throw ConfigError("observation length " + std::to_string(y_.size()) +
                      " does not match matrix rows " + std::to_string(A_.rows()));
  }
  if (!A_.allFinite() || !y_.allFinite()) {
    throw ConfigError("sensing matrix and observations must be finite");
  }
}

Eigen::VectorXd LeastSquaresObjective::residual(const Eigen::VectorXd& x) const {
  if (x.size() != A_.cols()) {
    throw ConfigError("point has dimension " + std::to_string(x.size()) + ", expected " +
                      std::to_string(A_.cols()));
  }
  return A_ * x - y_;
}

double LeastSquaresObjective::evaluate(const Eigen::VectorXd& x) const {
  return 0.5 * residual(x).squaredNorm();
}

Eigen::VectorXd LeastSquaresObjective::gradient(const Eigen::VectorXd& x) const {
  return A_.transpose() * residual(x);
}

double LeastSquaresObjective::lipschitz_constant(double tol, std::size_t max_iterations) const {
  if (!(tol > 0.0)) {
    throw ConfigError("power iteration tolerance must be positive");
  }
  Eigen::VectorXd v = Eigen::VectorXd::Ones(A_.cols());
  v /= v.norm();
  for (std::size_t it = 0; it < max_iterations; ++it) {
    Eigen::VectorXd w = A_.transpose() * (A_ * v);
    const double lambda = v.dot(w);
    const double residual_norm = (w - lambda * v).norm();
    if (residual_norm <= tol * std::abs(lambda)) {
      return lambda;
    }
    const double w_norm = w.norm();
    if (w_norm == 0.0) {
      return 0.0;  // start vector in the null space
    }
    v = w / w_norm;
  }
  throw NumericError("power iteration did not converge in " + std::to_string(max_iterations) +
                     " iterations");
}

SupportSet random_feasible_support(const ConstraintModel& model, Rng& rng) {
  const std::size_t d = model.dimension();
  const std::size_t s = model.sparsity();
  if (auto* m = std::get_if<GSubgraphModel>(&model.family())) {
    const Graph& graph = *m->graph;
    std::vector<bool> taken(d, false);
    std::vector<NodeId> chosen;
    std::vector<std::deque<NodeId>> frontiers;
    while (chosen.size() < m->components) {
      auto v = static_cast<NodeId>(rng.uniform_index(d));
      if (taken[v]) continue;
      taken[v] = true;
      chosen.push_back(v);
      auto nbrs = graph.neighbors(v);
      frontiers.emplace_back(nbrs.begin(), nbrs.end());
    }
    bool grew = true;
    while (chosen.size() < s && grew) {
      grew = false;
      for (auto& frontier : frontiers) {
        if (chosen.size() == s) break;
        while (!frontier.empty() && taken[frontier.front()]) frontier.pop_front();
        if (frontier.empty()) continue;
        NodeId v = frontier.front();
        frontier.pop_front();
        taken[v] = true;
        chosen.push_back(v);
        for (NodeId w : graph.neighbors(v)) {
          if (!taken[w]) frontier.push_back(w);
        }
        grew = true;
      }
    }
    return SupportSet::from_unsorted(std::move(chosen));
  }

  std::vector<NodeId> pool(d);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  for (std::size_t i = 0; i < s; ++i) {
    std::swap(pool[i], pool[i + rng.uniform_index(d - i)]);
  }
  pool.resize(s);
  return SupportSet::from_unsorted(std::move(pool));
}

Instance generate_instance(const InstanceSpec& spec) {
  if (spec.model.dimension() != spec.dimension) {
    throw ConfigError("model dimension " + std::to_string(spec.model.dimension()) +
                      " does not match instance dimension " + std::to_string(spec.dimension));
  }
  if (spec.rows < 1) {
    throw ConfigError("instance needs at least one observation");
  }
  if (!(spec.sigma >= 0.0) || !std::isfinite(spec.sigma)) {
    throw ConfigError("noise sigma must be finite and non-negative");
  }
  const auto n = static_cast<Eigen::Index>(spec.rows);
  const auto d = static_cast<Eigen::Index>(spec.dimension);

  Rng matrix_rng(spec.seed, streams::kSensingMatrix);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.rows));
  Eigen::MatrixXd A(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      A(i, j) = matrix_rng.normal() * scale;
    }
  }

  Rng support_rng(spec.seed, streams::kSupport);
  SupportSet support = random_feasible_support(spec.model, support_rng);
  if (support.size() < spec.model.sparsity()) {
    throw GenerationError("could only grow " + std::to_string(support.size()) + " of " +
                          std::to_string(spec.model.sparsity()) +
                          " support nodes; graph components too small");
  }

  Rng signal_rng(spec.seed, streams::kSignal);
  Eigen::VectorXd x_star = Eigen::VectorXd::Zero(d);
  for (NodeId i : support) x_star[i] = signal_rng.normal();
  const double norm = restricted_norm(x_star, support);
  if (norm == 0.0) {
    throw GenerationError("drew an all-zero signal");
  }
  for (NodeId i : support) x_star[i] /= norm;

  Rng noise_rng(spec.seed, streams::kNoise);
  Eigen::VectorXd noise(n);
  for (Eigen::Index i = 0; i < n; ++i) noise[i] = spec.sigma * noise_rng.normal();

  Eigen::VectorXd y = A * x_star + noise;
  return Instance{LeastSquaresObjective(std::move(A), std::move(y)), std::move(x_star)};
}

namespace {

void append_number(std::string& out, double value) {
  char buf[32];
  int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  out.append(buf, static_cast<std::size_t>(len));
}

std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(p, comma, value);
      if (ec != std::errc() || ptr != comma) {
        throw ParseError("bad number in " + path.filename().string(), line_no);
      }
      row.push_back(value);
      p = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
    throw IoError("cannot write " + path.string());
  }
}

Eigen::VectorXd column_vector(const std::vector<std::vector<double>>& rows,
                              const std::string& name) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 1) {
      throw ParseError(name + ": expected one value per line", i + 1);
    }
    v[static_cast<Eigen::Index>(i)] = rows[i][0];
  }
  return v;
}

}  // namespace

std::string matrix_csv(const Eigen::MatrixXd& A) {
  std::string out;
  out.reserve(static_cast<std::size_t>(A.size()) * 24);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) out.push_back(',');
      append_number(out, A(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

std::string vector_csv(const Eigen::VectorXd& v) {
  std::string out;
  out.reserve(static_cast<std::size_t>(v.size()) * 24);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    append_number(out, v[i]);
    out.push_back('\n');
  }
  return out;
}

void write_instance_csv(const std::filesystem::path& dir, const Instance& instance) {
  std::filesystem::create_directories(dir);
  write_text(dir / "A.csv", matrix_csv(instance.objective.matrix()));
  write_text(dir / "y.csv", vector_csv(instance.objective.observations()));
  write_text(dir / "x_star.csv", vector_csv(instance.x_star));
}

Instance read_instance_csv(const std::filesystem::path& dir) {
  auto a_rows = read_csv_rows(dir / "A.csv");
  if (a_rows.empty()) {
    throw ParseError("A.csv is empty", 0);
  }
  const std::size_t d = a_rows.front().size();
  Eigen::MatrixXd A(static_cast<Eigen::Index>(a_rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < a_rows.size(); ++i) {
    if (a_rows[i].size() != d) {
      throw ParseError("A.csv: ragged row", i + 1);
    }
    for (std::size_t j = 0; j < d; ++j) {
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a_rows[i][j];
    }
  }
  Eigen::VectorXd y = column_vector(read_csv_rows(dir / "y.csv"), "y.csv");
  Eigen::VectorXd x_star = column_vector(read_csv_rows(dir / "x_star.csv"), "x_star.csv");
  if (static_cast<std::size_t>(x_star.size()) != d) {
    throw ConfigError("x_star.csv length does not match A.csv columns");
  }
  return Instance{LeastSquaresObjective(std::move(A), std::move(y)), std::move(x_star)};
}

}  // namespace gsco
