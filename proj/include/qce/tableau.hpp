#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qce/clifford.hpp"
#include "qce/pauli.hpp"

namespace qce {

/// Exact value of <psi|Q|psi> for a stabilizer state and Pauli Q: either 0 or a power of i.
struct PauliExpectation {
  bool nonzero = false;
  Phase phase;

  static PauliExpectation zero() { return {}; }
  static PauliExpectation of(Phase p) { return {true, p}; }

  std::complex<double> value() const { return nonzero ? phase.value() : std::complex<double>{}; }
  /// Real part as an integer in {-1, 0, 1}.
  int real_sign() const;
  /// Imaginary part as an integer in {-1, 0, 1}.
  int imag_sign() const;

  friend bool operator==(const PauliExpectation&, const PauliExpectation&) = default;
};

/// Aaronson-Gottesman tableau of a stabilizer state: n destabilizer rows and n
/// stabilizer rows, each a sign-tracked PauliString (phase +1 or -1).
class StabilizerTableau {
 public:
  StabilizerTableau() = default;

  /// Tableau of the computational basis state |bits>; stabilizers (-1)^{b_j} Z_j.
  static StabilizerTableau basis_state(std::span<const std::uint8_t> bits);
  static StabilizerTableau zero_state(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_; }
  const PauliString& stabilizer(std::size_t j) const { return stabilizers_[j]; }
  const PauliString& destabilizer(std::size_t j) const { return destabilizers_[j]; }

  /// Conjugates every row by the gate; O(n) per gate.
  void apply(const CliffordGate& gate);
  void apply(std::span<const CliffordGate> gates);

  /// <psi|q|psi> exactly; O(n^2 / 64) word operations.
  PauliExpectation expectation(const PauliString& q) const;

  /// Checks the commutation structure and GF(2) independence of the rows.
  bool is_valid() const;

  friend bool operator==(const StabilizerTableau&, const StabilizerTableau&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> destabilizers_;
  std::vector<PauliString> stabilizers_;
};

StabilizerTableau apply_clifford(StabilizerTableau state, const CliffordGate& gate);

std::complex<double> expectation(const StabilizerTableau& state, const PauliString& q);

}  // namespace qce
