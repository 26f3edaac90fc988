#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qce/expansion.hpp"
#include "qce/verifier.hpp"

namespace qce {
namespace {

TEST(Verifier, CentralDifferencesOnPolynomial) {
  // f = x0^2 x1 + 3 x1
  const ScalarFunction f = [](const Eigen::VectorXd& x) { return x[0] * x[0] * x[1] + 3 * x[1]; };
  Eigen::VectorXd x(2);
  x << 1.5, -2.0;
  const auto g = central_gradient(f, x, 1e-4);
  EXPECT_NEAR(g[0], 2 * 1.5 * -2.0, 1e-8);
  EXPECT_NEAR(g[1], 1.5 * 1.5 + 3, 1e-8);
  const auto h = central_hessian(f, x, 1e-3, 2);
  EXPECT_NEAR(h(0, 0), 2 * -2.0, 1e-6);
  EXPECT_NEAR(h(0, 1), 2 * 1.5, 1e-6);
  EXPECT_EQ(h(0, 1), h(1, 0));
  EXPECT_NEAR(h(1, 1), 0.0, 1e-6);
}

TEST(Verifier, FiniteDifferenceDerivativesMatchExpansion) {
  std::mt19937_64 rng(101);
  const auto a = generate_hwe_ansatz(3, 1, 9, AnsatzVariant::Complex);
  const auto obs = oracle::random_observable(3, 10, rng);
  const auto ref = ReferenceState::parse("100");
  const auto r = expand(a, obs, ref, {.dropout_threshold = 0.0});
  const auto g = finite_diff_gradient(a, obs, ref);
  const auto h = finite_diff_hessian(a, obs, ref, {.jobs = 2});
  for (Eigen::Index k = 0; k < g.size(); ++k) EXPECT_NEAR(g[k], r.gradient[k], 1e-6 * (1 + std::abs(g[k])));
  EXPECT_LT((h - r.hessian).cwiseAbs().maxCoeff(), 1e-4);
}

TEST(Verifier, ExactGroundEnergies) {
  EXPECT_NEAR(exact_ground_energy(parse_observable("qubits 1\n1 Z0\n")), -1.0, 1e-12);
  EXPECT_NEAR(exact_ground_energy(parse_observable("qubits 1\n1 X0\n")), -1.0, 1e-12);
  // Two-site Heisenberg: singlet at -3.
  const auto heis = parse_observable("qubits 2\n1 X0 X1\n1 Y0 Y1\n1 Z0 Z1\n");
  EXPECT_NEAR(exact_ground_energy(heis), -3.0, 1e-12);
}

TEST(Verifier, LanczosAgreesWithDenseSolver) {
  std::mt19937_64 rng(103);
  const auto obs = oracle::random_observable(6, 25, rng);
  const double dense = exact_ground_energy(obs);
  const double oracle_min = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(oracle::observable_matrix(obs))
                                .eigenvalues()
                                .minCoeff();
  EXPECT_NEAR(dense, oracle_min, 1e-10);
  EXPECT_NEAR(lanczos_ground_energy(obs), oracle_min, 1e-9);
}

TEST(Verifier, GroundEnergyCap) {
  EXPECT_THROW(exact_ground_energy(Observable(15)), ResourceError);
}

TEST(Verifier, WarmStartNames) {
  for (auto w : {WarmStart::Zero, WarmStart::ThetaStar, WarmStart::ThetaStarWithHessian}) {
    EXPECT_EQ(parse_warm_start(warm_start_name(w)), w);
  }
  EXPECT_EQ(warm_start_name(WarmStart::ThetaStarWithHessian), "pert-hessian");
  EXPECT_THROW(parse_warm_start("random"), ParseError);
}

TEST(Verifier, BfgsOnQuadratic) {
  // f = 1/2 x^T Q x - b^T x, minimum at Q^-1 b.
  Eigen::Matrix3d q;
  q << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 2;
  const Eigen::Vector3d b(1, -2, 0.5);
  const ScalarFunction f = [&](const Eigen::VectorXd& x) { return 0.5 * x.dot(q * x) - b.dot(x); };
  const GradientFunction g = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd { return q * x - b; };
  const auto trace = minimize_bfgs(f, g, Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3));
  EXPECT_TRUE(trace.converged);
  EXPECT_LT((trace.theta - q.ldlt().solve(b)).norm(), 1e-6);
  EXPECT_EQ(trace.records.front().iteration, 0u);
  EXPECT_EQ(trace.records.size(), trace.iterations + 1);
  // The exact inverse Hessian converges in one step.
  const auto exact = minimize_bfgs(f, g, Eigen::VectorXd::Zero(3), q.inverse());
  EXPECT_TRUE(exact.converged);
  EXPECT_EQ(exact.iterations, 1u);
}

TEST(Verifier, BfgsOnRosenbrock) {
  const ScalarFunction f = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  const GradientFunction g = [](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    Eigen::VectorXd out(2);
    out[0] = -400 * x[0] * (x[1] - x[0] * x[0]) - 2 * (1 - x[0]);
    out[1] = 200 * (x[1] - x[0] * x[0]);
    return out;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  const auto trace = minimize_bfgs(f, g, x0, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_TRUE(trace.converged);
  EXPECT_NEAR(trace.theta[0], 1.0, 1e-5);
  EXPECT_NEAR(trace.theta[1], 1.0, 1e-5);
}

TEST(Verifier, BfgsStopsAtMaxIterations) {
  const ScalarFunction f = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  const GradientFunction g = [&](const Eigen::VectorXd& x) { return central_gradient(f, x, 1e-6); };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  const auto trace = minimize_bfgs(f, g, x0, Eigen::MatrixXd::Identity(2, 2), {.max_iterations = 3});
  EXPECT_FALSE(trace.converged);
  EXPECT_TRUE(trace.max_iterations_reached);
  EXPECT_EQ(trace.iterations, 3u);
}

TEST(Verifier, InitialInverseHessian) {
  ExpansionResult r;
  r.gradient = Eigen::VectorXd::Ones(3);
  r.kept_indices = {0, 2};
  r.hessian.resize(2, 2);
  r.hessian << 4.0, 0.0, 0.0, -1.0;
  const auto h = initial_inverse_hessian(r);
  EXPECT_DOUBLE_EQ(h(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(h(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(h(2, 2), 1.0);
  EXPECT_DOUBLE_EQ(h(0, 2), 0.0);
}

TEST(Verifier, OptimizeToyFromEveryStart) {
  AnsatzCircuit a;
  a.n_qubits = 1;
  a.n_params = 1;
  a.elements.emplace_back(RotationGate{RotationAxis::Y, 0, 0});
  const auto obs = parse_observable("qubits 1\n1 X0\n2 Z0\n");
  const auto ref = ReferenceState::zeros(1);
  const auto r = expand(a, obs, ref);
  for (auto w : {WarmStart::Zero, WarmStart::ThetaStar, WarmStart::ThetaStarWithHessian}) {
    const auto trace = optimize_bfgs(a, obs, ref, w, &r);
    EXPECT_TRUE(trace.converged) << warm_start_name(w);
    EXPECT_NEAR(trace.final_cost, -std::sqrt(5.0), 1e-9) << warm_start_name(w);
  }
  EXPECT_THROW(optimize_bfgs(a, obs, ref, WarmStart::ThetaStar, nullptr), std::invalid_argument);
}

}  // namespace
}  // namespace qce
