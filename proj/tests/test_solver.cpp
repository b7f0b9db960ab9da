#include <cmath>

#include "doctest.h"
#include "gsco/error.hpp"
#include "gsco/graph_gen.hpp"
#include "gsco/solver.hpp"
#include "test_support.hpp"

using namespace gsco;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

LeastSquaresObjective scalar_square() {
  return LeastSquaresObjective(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1));
}

struct Fixture {
  std::shared_ptr<const Graph> graph;
  ConstraintModel model;
  Instance instance;
};

Fixture g_subgraph_fixture(std::uint64_t seed, std::size_t d = 24, std::size_t n = 12,
                           std::size_t s = 6, std::size_t g = 2) {
  Rng rng(seed, streams::kGraph);
  auto graph = std::make_shared<const Graph>(random_connected_graph(d, d, rng));
  auto model = ConstraintModel::g_subgraph(graph, s, g, 1.0);
  Instance inst = generate_instance({d, n, 0.01, model, seed});
  return {graph, model, std::move(inst)};
}

SolverConfig topg_config(const ConstraintModel& model, std::size_t g) {
  SolverConfig c;
  c.dmo.variant = DmoVariant::TopG;
  c.dmo.params = {g, model.sparsity()};
  c.max_iters = 200;
  c.record_iterates = true;
  return c;
}

}  // namespace

TEST_CASE("compute_z examples") {
  CHECK(compute_z(FwVariant::FW, vec({5, 5}), vec({1, -2}), 0.0, 0.0) == vec({-1, 2}));
  CHECK(compute_z(FwVariant::AccFW, vec({0, 0}), vec({1, -2}), 1.0, 1.0) == vec({1, -2}));
  CHECK(compute_z(FwVariant::AccFW, vec({3, -1}), vec({0, 0}), 2.0, 0.5) == vec({-3, 1}));
  CHECK_THROWS_AS(compute_z(FwVariant::AccFW, vec({0}), vec({1}), 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(compute_z(FwVariant::AccFW, vec({0}), vec({1}), 0.0, 1.0), ConfigError);
}

TEST_CASE("fw_step examples") {
  const Eigen::VectorXd x = vec({1, 2, 3});
  const Eigen::VectorXd v = vec({0, -1, 0.5});
  CHECK(fw_step(x, v, 1.0, UpdateOption::I, 1.0) == v);
  CHECK(fw_step(x, v, 0.0, UpdateOption::I, 1.0) == x);
  CHECK(fw_step(x, v, 0.0, UpdateOption::II, 0.3) == x);
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd a = testing::random_vector(rng, 5), b = testing::random_vector(rng, 5);
    const double eta = rng.uniform();
    CHECK(fw_step(a, b, eta, UpdateOption::II, 1.0) == fw_step(a, b, eta, UpdateOption::I, 1.0));
  }
  CHECK(fw_step(vec({0}), vec({1}), 1.0, UpdateOption::II, 0.5) == vec({2}));
}

TEST_CASE("backtracking_eta examples") {
  LeastSquaresObjective half_square = scalar_square();
  // v = x: both sides equal f(x), so the first step is accepted.
  auto same = backtracking_eta(half_square, vec({0.7}), vec({0.7}), 0.4, 0.5);
  CHECK(same.eta == 0.4);
  CHECK(same.shrinks == 0);

  // f = ½x², x = 1, v = 0, η = 1: lhs f(0) = 0, rhs ½ − ½ = 0, accepted.
  auto one_d = backtracking_eta(half_square, vec({1}), vec({0}), 1.0, 0.5);
  CHECK(one_d.eta == 1.0);
  CHECK_FALSE(one_d.floored);

  // f = x⁴, x = 1, v = −1.5 (x − v = 2.5): η = 1 gives 5.0625 > −2.125 and
  // η = 0.5 gives 0.0039 > −0.5625, both rejected; η = 0.25 gives
  // 0.0198 <= 0.21875.
  ObjectiveFn quartic = [](const Eigen::VectorXd& p) { return std::pow(p[0], 4); };
  auto q = backtracking_eta(quartic, vec({1}), vec({-1.5}), 1.0, 0.5);
  CHECK(q.eta == 0.25);
  CHECK(q.shrinks == 2);
  CHECK(backtracking_accepts(quartic, vec({1}), vec({-1.5}), 0.25));
  CHECK_FALSE(backtracking_accepts(quartic, vec({1}), vec({-1.5}), 0.5));

  CHECK_THROWS_AS(backtracking_eta(half_square, vec({1}), vec({0}), 0.0, 0.5), ConfigError);
  CHECK_THROWS_AS(backtracking_eta(half_square, vec({1}), vec({0}), 1.0, 1.0), ConfigError);
}

TEST_CASE("backtracking floors and flags when no step is accepted") {
  // Moving away from the minimiser never decreases f.
  auto r = backtracking_eta(scalar_square(), vec({1}), vec({3}), 1.0, 0.5);
  CHECK(r.floored);
  CHECK(r.eta == kEtaFloor);
  ObjectiveFn nan_fn = [](const Eigen::VectorXd&) { return std::nan(""); };
  CHECK_THROWS_AS(backtracking_eta(nan_fn, vec({1}), vec({0}), 1.0, 0.5), NumericError);
}

TEST_CASE("demyanov_rubinov_eta examples") {
  CHECK(demyanov_rubinov_eta(vec({1, 2}), vec({3, 4}), vec({3, 4}), 1.0) == 0.0);
  // ⟨−grad, ṽ − x⟩ = L‖ṽ − x‖² → 1.
  CHECK(demyanov_rubinov_eta(vec({-2, 0}), vec({1, 0}), vec({0, 0}), 2.0) == 1.0);
  // f = ½x², x = 1, ṽ = −1, L = 1: ⟨−1, −2⟩ / (1·4) = 0.5.
  CHECK(demyanov_rubinov_eta(vec({1}), vec({-1}), vec({1}), 1.0) == 0.5);
  // Ascent directions clamp to zero, long steps clamp to one.
  CHECK(demyanov_rubinov_eta(vec({1}), vec({2}), vec({1}), 1.0) == 0.0);
  CHECK(demyanov_rubinov_eta(vec({-100}), vec({2}), vec({1}), 1.0) == 1.0);
  CHECK_THROWS_AS(demyanov_rubinov_eta(vec({1}), vec({2}), vec({1}), 0.0), ConfigError);
}

TEST_CASE("relative_change_converged") {
  CHECK(relative_change_converged(0.0, 5.0, 1e-6));
  CHECK(relative_change_converged(1.0, 1.0 + 1e-7, 1e-6));
  CHECK_FALSE(relative_change_converged(1.0, 1.1, 1e-6));
  CHECK(relative_change_converged(-2.0, -2.0, 0.0));
}

TEST_CASE("config validation") {
  SolverConfig c;
  c.delta = 0.0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.max_iters = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.step_rule = BacktrackingStep{1.0, 1.0};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.step_rule = DemyanovRubinovStep{0.0};
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.variant = FwVariant::AccFW;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.lipschitz = 2.0;
  CHECK_NOTHROW(validate(c));
  c.step_rule = BacktrackingStep{};
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("solve with the exact oracle never ends above the start") {
  auto model = ConstraintModel::cardinality(8, 8, 1.0);
  Instance inst = generate_instance({8, 6, 0.0, model, 5});
  SolverConfig c;
  c.dmo.variant = DmoVariant::Exact;
  c.dmo.params = {1, 8};
  c.max_iters = 300;
  SolveResult r = solve(c, inst.objective, model);
  const double f0 = inst.objective.evaluate(Eigen::VectorXd::Zero(8));
  CHECK(r.f_best <= f0);
  double best_so_far = r.trace.records.front().objective;
  for (const auto& rec : r.trace.records) best_so_far = std::min(best_so_far, rec.objective);
  CHECK(r.f_best == best_so_far);
  CHECK(r.trace.records[r.trace.best_t].objective == r.f_best);
  CHECK(inst.objective.evaluate(r.x_best) == r.f_best);
}

TEST_CASE("open-loop schedule and iterate invariants") {
  Fixture fx = g_subgraph_fixture(1);
  SolveResult r = solve(topg_config(fx.model, 2), fx.instance.objective, fx.model);
  const auto& rows = r.trace.records;
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0].eta == 1.0);
  for (std::size_t t = 0; t + 1 < rows.size(); ++t) {
    CHECK(rows[t].eta == 2.0 / (static_cast<double>(t) + 2.0));
    if (t > 0) CHECK(rows[t].eta < rows[t - 1].eta);
    CHECK(is_member(fx.model, SupportSet(r.trace.supports[t])));
  }
  for (const auto& x : r.trace.iterates) CHECK(x.norm() <= 1.0 + 1e-12);
}

TEST_CASE("backtracking steps satisfy the sufficient-decrease test") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Fixture fx = g_subgraph_fixture(seed);
    SolverConfig c = topg_config(fx.model, 2);
    c.step_rule = BacktrackingStep{0.5, 1.0};
    SolveResult r = solve(c, fx.instance.objective, fx.model);
    const auto& rows = r.trace.records;
    for (std::size_t t = 0; t + 1 < rows.size(); ++t) {
      if (!rows[t].eta_floored) {
        CHECK(backtracking_accepts(fx.instance.objective, r.trace.iterates[t], r.trace.targets[t],
                                   rows[t].eta));
      }
      if (t > 0) CHECK(rows[t].eta <= rows[t - 1].eta);
      // Never better than the exact line minimum along the same segment.
      const Eigen::VectorXd dir = r.trace.targets[t] - r.trace.iterates[t];
      const double exact_eta =
          testing::exact_line_search_eta(fx.instance.objective, r.trace.iterates[t], dir);
      CHECK(fx.instance.objective.evaluate(r.trace.iterates[t] + exact_eta * dir) <=
            rows[t + 1].objective + 1e-12);
    }
  }
}

TEST_CASE("rel_tol stop reports convergence") {
  Fixture fx = g_subgraph_fixture(3);
  SolverConfig c = topg_config(fx.model, 2);
  c.step_rule = DemyanovRubinovStep{fx.instance.objective.lipschitz_constant()};
  c.max_iters = 5000;
  SolveResult r = solve(c, fx.instance.objective, fx.model);
  CHECK(r.trace.termination == Termination::Converged);
  const auto& rows = r.trace.records;
  const double f_prev = rows[rows.size() - 2].objective;
  CHECK(std::abs(rows.back().objective - f_prev) / std::abs(f_prev) <= 1e-6);
}

TEST_CASE("solve is deterministic") {
  Fixture fx = g_subgraph_fixture(9);
  SolverConfig c = topg_config(fx.model, 2);
  c.dmo.variant = DmoVariant::TopGOptimal;
  c.dmo.params.seed = 17;
  SolveResult a = solve(c, fx.instance.objective, fx.model);
  SolveResult b = solve(c, fx.instance.objective, fx.model);
  REQUIRE(a.trace.records.size() == b.trace.records.size());
  for (std::size_t t = 0; t < a.trace.records.size(); ++t) {
    CHECK(a.trace.records[t].objective == b.trace.records[t].objective);
    CHECK(a.trace.records[t].captured_norm == b.trace.records[t].captured_norm);
    CHECK(a.trace.iterates[t] == b.trace.iterates[t]);
  }
  CHECK(a.x_best == b.x_best);
}

TEST_CASE("exact oracle on the cardinality model is plain Frank-Wolfe") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const std::size_t d = 6 + seed;
    auto model = ConstraintModel::cardinality(d, 3, 1.0);
    Instance inst = generate_instance({d, 5, 0.01, model, seed});
    SolverConfig c;
    c.dmo.variant = DmoVariant::Exact;
    c.dmo.params = {1, 3};
    c.max_iters = 50;
    c.rel_tol = 0.0;
    c.record_iterates = true;
    SolveResult r = solve(c, inst.objective, model);
    auto reference = testing::plain_top_s_frank_wolfe(inst.objective, 3, 1.0, 50);
    REQUIRE(r.trace.iterates.size() == reference.size());
    for (std::size_t t = 0; t < reference.size(); ++t) {
      CHECK(r.trace.iterates[t] == reference[t]);
    }
  }
}

TEST_CASE("option II may leave the ball and is recorded") {
  Fixture fx = g_subgraph_fixture(4);
  SolverConfig c = topg_config(fx.model, 2);
  c.option = UpdateOption::II;
  c.delta = 0.5;
  c.max_iters = 5;
  SolveResult r = solve(c, fx.instance.objective, fx.model);
  // x_1 = ṽ_0 / δ has norm C/δ.
  CHECK(r.trace.records[1].iterate_norm == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("AccFW runs with a power-iteration Lipschitz constant") {
  Fixture fx = g_subgraph_fixture(6);
  SolverConfig c = topg_config(fx.model, 2);
  c.variant = FwVariant::AccFW;
  c.lipschitz = fx.instance.objective.lipschitz_constant();
  SolveResult r = solve(c, fx.instance.objective, fx.model);
  CHECK(r.f_best <= r.trace.records.front().objective);
  for (const auto& x : r.trace.iterates) CHECK(x.norm() <= 1.0 + 1e-12);
}

TEST_CASE("vanishing gradient stops as stationary") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2, 2);
  A(0, 0) = 1.0;
  LeastSquaresObjective f(A, vec({0, 1}));
  auto model = ConstraintModel::cardinality(2, 1, 1.0);
  SolverConfig c;
  c.dmo.variant = DmoVariant::Exact;
  c.dmo.params = {1, 1};
  SolveResult r = solve(c, f, model);
  CHECK(r.trace.termination == Termination::Stationary);
  CHECK(r.trace.records.size() == 1);
  CHECK(r.f_best == 0.5);
}

TEST_CASE("zero objective stops immediately") {
  auto model = ConstraintModel::cardinality(3, 1, 1.0);
  LeastSquaresObjective f(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3));
  SolverConfig c;
  c.dmo.variant = DmoVariant::Exact;
  c.dmo.params = {1, 1};
  SolveResult r = solve(c, f, model);
  CHECK(r.trace.termination == Termination::Converged);
  CHECK(r.trace.steps() == 0);
}

TEST_CASE("trace CSV round trip") {
  Fixture fx = g_subgraph_fixture(2);
  SolveResult r = solve(topg_config(fx.model, 2), fx.instance.objective, fx.model);
  std::stringstream buf;
  write_trace_csv(buf, r.trace);
  IterationTrace back = read_trace_csv(buf);
  REQUIRE(back.records.size() == r.trace.records.size());
  for (std::size_t i = 0; i < back.records.size(); ++i) {
    CHECK(back.records[i].objective == r.trace.records[i].objective);
    CHECK(back.records[i].eta == r.trace.records[i].eta);
    CHECK(back.records[i].support_size == r.trace.records[i].support_size);
  }
}
