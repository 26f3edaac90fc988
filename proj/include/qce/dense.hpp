#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

#include "qce/circuit.hpp"
#include "qce/observable.hpp"
#include "qce/pauli.hpp"

namespace qce {

/// Raised when a dense computation would exceed the configured qubit cap or memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DenseLimits {
  std::size_t max_qubits = 20;
  std::size_t max_bytes = std::size_t{1} << 32;
};

/// Throws ResourceError if a 2^n complex vector is over the limits.
void check_dense_limits(std::size_t n_qubits, const DenseLimits& limits);

/// Statevector over n qubits; basis index bit j holds qubit j.
class DenseState {
 public:
  DenseState() = default;
  DenseState(std::size_t n_qubits, const DenseLimits& limits = {});

  static DenseState basis_state(const ReferenceState& reference, const DenseLimits& limits = {});

  std::size_t n_qubits() const { return n_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  void apply(const CliffordGate& gate);
  /// exp(i theta P) = cos(theta) I + i sin(theta) P for the rotation's axis.
  void apply_rotation(const RotationGate& gate, double theta);
  void apply_single(std::size_t wire, const Eigen::Matrix2cd& u);

  /// <psi|P|psi>.
  std::complex<double> expectation(const PauliString& p) const;
  double expectation(const Observable& obs) const;

 private:
  std::size_t n_ = 0;
  Eigen::VectorXcd amps_;
};

/// out = P |in>.
void apply_pauli(const PauliString& p, const Eigen::VectorXcd& in, Eigen::VectorXcd& out);

/// U(theta)|reference>.
DenseState simulate(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, const ReferenceState& reference,
                    const DenseLimits& limits = {});

/// <psi(theta)|O|psi(theta)>.
double energy(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, const ReferenceState& reference,
              const Observable& obs, const DenseLimits& limits = {});

}  // namespace qce
