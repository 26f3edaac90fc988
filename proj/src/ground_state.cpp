#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "qce/verifier.hpp"

namespace qce {

namespace {

void apply_observable(const Observable& obs, const Eigen::VectorXcd& in, Eigen::VectorXcd& out,
                      Eigen::VectorXcd& scratch) {
  out.setZero(in.size());
  for (const auto& t : obs.terms()) {
    apply_pauli(t.pauli, in, scratch);
    out += t.coefficient * scratch;
  }
}

}  // namespace

Eigen::MatrixXcd observable_matrix(const Observable& obs, const DenseLimits& limits) {
  check_dense_limits(2 * obs.n_qubits(), limits);
  const Eigen::Index dim = Eigen::Index{1} << obs.n_qubits();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd e(dim);
  Eigen::VectorXcd col(dim);
  for (const auto& t : obs.terms()) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      e.setZero();
      e[b] = 1.0;
      apply_pauli(t.pauli, e, col);
      h.col(b) += t.coefficient * col;
    }
  }
  return h;
}

double lanczos_ground_energy(const Observable& obs, const GroundStateOptions& options) {
  const std::size_t n = obs.n_qubits();
  if (n > options.max_qubits) {
    throw ResourceError("exact diagonalization of " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(options.max_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  const auto max_steps = static_cast<Eigen::Index>(std::min<std::size_t>(options.lanczos_max_iterations,
                                                                         static_cast<std::size_t>(dim)));

  // Fixed-seed random start so symmetry sectors are not excluded.
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = {normal(rng), normal(rng)};
  v.normalize();

  std::vector<Eigen::VectorXcd> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXcd w(dim);
  Eigen::VectorXcd scratch(dim);
  double previous = std::numeric_limits<double>::infinity();
  double current = previous;

  for (Eigen::Index step = 0; step < max_steps; ++step) {
    basis.push_back(v);
    apply_observable(obs, v, w, scratch);
    const double a = v.dot(w).real();
    alpha.push_back(a);
    for (const auto& b : basis) w -= b * b.dot(w);
    for (const auto& b : basis) w -= b * b.dot(w);

    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1))
                                : Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    current = tri.eigenvalues()[0];

    const double b = w.norm();
    if (b < 1e-13 || std::abs(current - previous) < options.lanczos_tolerance * std::max(1.0, std::abs(current))) {
      break;
    }
    previous = current;
    beta.push_back(b);
    v = w / b;
  }
  return current;
}

double exact_ground_energy(const Observable& obs, const GroundStateOptions& options) {
  const std::size_t n = obs.n_qubits();
  if (n > options.max_qubits) {
    throw ResourceError("exact diagonalization of " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(options.max_qubits));
  }
  if (n <= options.dense_max_qubits) {
    const Eigen::MatrixXcd h = observable_matrix(obs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw std::runtime_error("dense Hermitian eigensolver did not converge");
    return eig.eigenvalues()[0];
  }
  return lanczos_ground_energy(obs, options);
}

}  // namespace qce
