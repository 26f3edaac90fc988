#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "qce/circuit.hpp"
#include "qce/dense.hpp"
#include "qce/expansion.hpp"
#include "qce/observable.hpp"

namespace qce {

// --- Finite-difference oracles ---------------------------------------------------

using ScalarFunction = std::function<double(const Eigen::VectorXd&)>;

/// Central differences (f(x+h e_k) - f(x-h e_k)) / 2h.
Eigen::VectorXd central_gradient(const ScalarFunction& f, const Eigen::VectorXd& x, double h, std::size_t jobs = 1);

/// Second-order central differences; diagonal uses (f+ - 2f + f-)/h^2 and
/// off-diagonal the four-point stencil / 4h^2. Result is symmetrized by construction.
Eigen::MatrixXd central_hessian(const ScalarFunction& f, const Eigen::VectorXd& x, double h, std::size_t jobs = 1);

struct FiniteDifferenceOptions {
  double gradient_step = 1e-4;
  double hessian_step = 1e-3;
  std::size_t jobs = 1;
  DenseLimits limits;
};

/// Derivatives of E(theta) at theta = 0 (or `at`, when non-empty) on the dense simulator.
Eigen::VectorXd finite_diff_gradient(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                                     const FiniteDifferenceOptions& options = {}, const Eigen::VectorXd& at = {});
Eigen::MatrixXd finite_diff_hessian(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                                    const FiniteDifferenceOptions& options = {}, const Eigen::VectorXd& at = {});

// --- Exact diagonalization ----------------------------------------------------------

struct GroundStateOptions {
  std::size_t max_qubits = 14;
  /// Widths up to this use a dense Hermitian eigensolver; larger use Lanczos.
  std::size_t dense_max_qubits = 10;
  std::size_t lanczos_max_iterations = 400;
  double lanczos_tolerance = 1e-12;
};

/// Lowest eigenvalue of the observable.
double exact_ground_energy(const Observable& obs, const GroundStateOptions& options = {});

/// Dense Hermitian matrix of the observable (test and small-n use).
Eigen::MatrixXcd observable_matrix(const Observable& obs, const DenseLimits& limits = {});

/// Lanczos with full reorthogonalization on the matrix-free observable.
double lanczos_ground_energy(const Observable& obs, const GroundStateOptions& options = {});

// --- Quasi-Newton optimization -------------------------------------------------------

enum class WarmStart { Zero, ThetaStar, ThetaStarWithHessian };

std::string_view warm_start_name(WarmStart w);
WarmStart parse_warm_start(std::string_view name);

struct TraceRecord {
  std::size_t iteration = 0;
  double cost = 0.0;
  double gradient_norm = 0.0;
};

struct OptimizationTrace {
  WarmStart init = WarmStart::Zero;
  std::vector<TraceRecord> records;  // records[0] is the starting point
  Eigen::VectorXd theta;
  double final_cost = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool max_iterations_reached = false;
  bool line_search_failed = false;
  std::size_t function_evaluations = 0;
  std::size_t gradient_evaluations = 0;
};

struct BfgsOptions {
  double gtol = 1e-6;
  std::size_t max_iterations = 500;
  double armijo = 1e-4;
  double curvature = 0.9;
  std::size_t max_line_search_steps = 40;
};

using GradientFunction = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// BFGS on the inverse Hessian with a strong-Wolfe line search. Stops when the
/// gradient infinity norm drops to gtol or after max_iterations steps.
OptimizationTrace minimize_bfgs(const ScalarFunction& f, const GradientFunction& grad, Eigen::VectorXd x0,
                                Eigen::MatrixXd inverse_hessian0, const BfgsOptions& options = {});

/// Initial inverse Hessian built from the expansion's Hessian: on the kept block,
/// eigenvalues <= eps are replaced by 1 before inversion; dropped parameters get 1.
Eigen::MatrixXd initial_inverse_hessian(const ExpansionResult& expansion, double eps = 1e-8);

struct VqeOptimizeOptions {
  BfgsOptions bfgs;
  /// Central-difference step for the optimizer's gradient.
  double gradient_step = 1e-6;
  DenseLimits limits;
};

/// Minimizes E(theta) from the chosen initialization. The expansion result is
/// required for ThetaStar and ThetaStarWithHessian.
OptimizationTrace optimize_bfgs(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                                WarmStart init, const ExpansionResult* expansion,
                                const VqeOptimizeOptions& options = {});

}  // namespace qce
