#include <filesystem>
#include <fstream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "gsco/error.hpp"
#include "gsco/graph_gen.hpp"
#include "gsco/objective.hpp"
#include "test_support.hpp"

using namespace gsco;

namespace {

LeastSquaresObjective random_objective(Rng& rng, std::size_t n, std::size_t d) {
  return LeastSquaresObjective(testing::random_matrix(rng, n, d), testing::random_vector(rng, n));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("evaluate examples") {
  LeastSquaresObjective identity(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  CHECK(identity.evaluate(Eigen::Vector2d(3, 4)) == 12.5);

  Eigen::MatrixXd row(1, 2);
  row << 1, 1;
  LeastSquaresObjective single(row, Eigen::VectorXd::Ones(1));
  CHECK(single.evaluate(Eigen::Vector2d(2, 0)) == 0.5);
  CHECK(single.evaluate(Eigen::Vector2d(0.25, 0.75)) == 0.0);
  CHECK_THROWS_AS(single.evaluate(Eigen::VectorXd::Zero(3)), ConfigError);
}

TEST_CASE("gradient examples") {
  LeastSquaresObjective identity(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  CHECK(identity.gradient(Eigen::Vector2d(3, 4)) == Eigen::Vector2d(3, 4));

  Rng rng(1);
  Eigen::MatrixXd A = testing::random_matrix(rng, 4, 6);
  Eigen::VectorXd x = testing::random_vector(rng, 6);
  LeastSquaresObjective fit(A, A * x);
  CHECK(fit.gradient(x).norm() <= 1e-12);
  CHECK_THROWS_AS(fit.gradient(Eigen::VectorXd::Zero(5)), ConfigError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(LeastSquaresObjective(Eigen::MatrixXd(0, 3), Eigen::VectorXd(0)), ConfigError);
  CHECK_THROWS_AS(LeastSquaresObjective(Eigen::MatrixXd::Ones(2, 3), Eigen::VectorXd::Ones(3)),
                  ConfigError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Ones(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(LeastSquaresObjective(bad, Eigen::VectorXd::Ones(2)), ConfigError);
}

TEST_CASE("gradient matches central finite differences") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(16);
    const std::size_t d = 1 + rng.uniform_index(32);
    LeastSquaresObjective f = random_objective(rng, n, d);
    Eigen::VectorXd x = testing::random_vector(rng, d);
    Eigen::VectorXd analytic = f.gradient(x);
    Eigen::VectorXd numeric(x.size());
    const double h = 1e-6;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      Eigen::VectorXd plus = x, minus = x;
      plus[i] += h;
      minus[i] -= h;
      numeric[i] = (f.evaluate(plus) - f.evaluate(minus)) / (2 * h);
    }
    CHECK((analytic - numeric).norm() <= 1e-5 * std::max(1.0, analytic.norm()));
  }
}

TEST_CASE("objective is midpoint convex") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    LeastSquaresObjective f = random_objective(rng, 5, 7);
    Eigen::VectorXd a = testing::random_vector(rng, 7);
    Eigen::VectorXd b = testing::random_vector(rng, 7);
    CHECK(f.evaluate(0.5 * (a + b)) <= 0.5 * f.evaluate(a) + 0.5 * f.evaluate(b) + 1e-12);
  }
}

TEST_CASE("lipschitz_constant examples") {
  Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
  diag(0, 0) = 2;
  diag(1, 1) = 1;
  LeastSquaresObjective f(diag, Eigen::VectorXd::Zero(2));
  CHECK(f.lipschitz_constant(1e-10) == doctest::Approx(4.0).epsilon(1e-9));

  LeastSquaresObjective identity(Eigen::MatrixXd::Identity(6, 6), Eigen::VectorXd::Zero(6));
  CHECK(identity.lipschitz_constant(1e-10) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(identity.lipschitz_constant(0.0), ConfigError);
}

TEST_CASE("lipschitz_constant matches a dense eigensolver") {
  Rng rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    LeastSquaresObjective f = random_objective(rng, 20, 30);
    Eigen::MatrixXd gram = f.matrix().transpose() * f.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double expected = eig.eigenvalues().maxCoeff();
    const double estimate = f.lipschitz_constant(1e-6);
    CHECK(std::abs(estimate - expected) / expected <= 1e-6);

    // Rayleigh quotients of probes never exceed it (up to the tolerance).
    for (int probe = 0; probe < 10; ++probe) {
      Eigen::VectorXd v = testing::random_vector(rng, 30);
      const double rayleigh = (f.matrix() * v).squaredNorm() / v.squaredNorm();
      CHECK(rayleigh <= estimate * (1 + 1e-6));
    }
  }
}

TEST_CASE("lipschitz_constant reports non-convergence") {
  Rng rng(7);
  LeastSquaresObjective f = random_objective(rng, 20, 30);
  CHECK_THROWS_AS(f.lipschitz_constant(1e-14, 3), NumericError);
}

TEST_CASE("generate_instance construction contract") {
  Rng graph_rng(5);
  auto graph = std::make_shared<const Graph>(random_connected_graph(40, 30, graph_rng));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (bool structured : {true, false}) {
      ConstraintModel model = structured ? ConstraintModel::g_subgraph(graph, 8, 3, 1.0)
                                         : ConstraintModel::cardinality(40, 8, 1.0);
      Instance inst = generate_instance({40, 12, 0.0, model, seed});
      CHECK(std::abs(inst.x_star.norm() - 1.0) <= 1e-12);
      SupportSet support = support_of(inst.x_star);
      CHECK(support.size() == 8);
      CHECK(is_member(model, support));
      CHECK(inst.objective.evaluate(inst.x_star) <= 1e-20 * 12);
    }
  }
}

TEST_CASE("generate_instance noise and scaling") {
  ConstraintModel model = ConstraintModel::cardinality(400, 10, 1.0);
  Instance inst = generate_instance({400, 50, 0.5, model, 3});
  const Eigen::MatrixXd& A = inst.objective.matrix();
  // Columns have unit expected squared norm; 400 columns average tightly.
  CHECK(A.colwise().squaredNorm().mean() == doctest::Approx(1.0).epsilon(0.05));
  Eigen::VectorXd noise = inst.objective.observations() - A * inst.x_star;
  CHECK(noise.norm() / std::sqrt(50.0) == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("generate_instance errors") {
  auto isolated = std::make_shared<const Graph>(Graph(5, {}));
  ConstraintModel model = ConstraintModel::g_subgraph(isolated, 3, 1, 1.0);
  CHECK_THROWS_AS(generate_instance({5, 4, 0.0, model, 1}), GenerationError);
  CHECK_THROWS_AS(generate_instance({6, 4, 0.0, model, 1}), ConfigError);
  ConstraintModel card = ConstraintModel::cardinality(5, 2, 1.0);
  CHECK_THROWS_AS(generate_instance({5, 0, 0.0, card, 1}), ConfigError);
  CHECK_THROWS_AS(generate_instance({5, 3, -1.0, card, 1}), ConfigError);
}

TEST_CASE("instance CSV is deterministic and round-trips exactly") {
  Rng graph_rng(1);
  auto graph = std::make_shared<const Graph>(random_connected_graph(16, 10, graph_rng));
  ConstraintModel model = ConstraintModel::g_subgraph(graph, 4, 2, 1.0);
  const auto base = std::filesystem::temp_directory_path() / "gsco_test_objective";
  std::filesystem::remove_all(base);
  write_instance_csv(base / "a", generate_instance({16, 8, 0.01, model, 42}));
  write_instance_csv(base / "b", generate_instance({16, 8, 0.01, model, 42}));
  for (const char* name : {"A.csv", "y.csv", "x_star.csv"}) {
    CHECK(slurp(base / "a" / name) == slurp(base / "b" / name));
  }
  Instance original = generate_instance({16, 8, 0.01, model, 42});
  Instance loaded = read_instance_csv(base / "a");
  CHECK(loaded.objective.matrix() == original.objective.matrix());
  CHECK(loaded.objective.observations() == original.objective.observations());
  CHECK(loaded.x_star == original.x_star);
  std::filesystem::remove_all(base);
}

TEST_CASE("Rng streams are reproducible and distinct") {
  Rng a(42, 1), b(42, 1), c(42, 2);
  bool differs = false;
  for (int i = 0; i < 10; ++i) {
    const auto va = a();
    CHECK(va == b());
    differs |= va != c();
  }
  CHECK(differs);
  Rng u(9);
  for (int i = 0; i < 1000; ++i) {
    CHECK(u.uniform_index(7) < 7);
    const double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
  }
}
