#include "qce/tableau.hpp"

#include <algorithm>

namespace qce {

int PauliExpectation::real_sign() const {
  if (!nonzero) return 0;
  switch (phase.exponent) {
    case 0: return 1;
    case 2: return -1;
    default: return 0;
  }
}

int PauliExpectation::imag_sign() const {
  if (!nonzero) return 0;
  switch (phase.exponent) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
  }
}

StabilizerTableau StabilizerTableau::basis_state(std::span<const std::uint8_t> bits) {
  StabilizerTableau t;
  t.n_ = bits.size();
  t.destabilizers_.reserve(t.n_);
  t.stabilizers_.reserve(t.n_);
  for (std::size_t j = 0; j < t.n_; ++j) {
    t.destabilizers_.push_back(PauliString::single(t.n_, j, PauliLetter::X));
    PauliString s = PauliString::single(t.n_, j, PauliLetter::Z);
    if (bits[j] != 0) s.set_phase(Phase(2));
    t.stabilizers_.push_back(std::move(s));
  }
  return t;
}

StabilizerTableau StabilizerTableau::zero_state(std::size_t n_qubits) {
  const std::vector<std::uint8_t> zeros(n_qubits, 0);
  return basis_state(zeros);
}

void StabilizerTableau::apply(const CliffordGate& gate) {
  validate_gate(gate, n_);
  for (auto& row : destabilizers_) conjugate_in_place(row, gate);
  for (auto& row : stabilizers_) conjugate_in_place(row, gate);
}

void StabilizerTableau::apply(std::span<const CliffordGate> gates) {
  for (const auto& g : gates) apply(g);
}

PauliExpectation StabilizerTableau::expectation(const PauliString& q) const {
  if (q.n_qubits() != n_) {
    throw DimensionError("expectation: Pauli has " + std::to_string(q.n_qubits()) + " qubits, state has " +
                         std::to_string(n_));
  }
  for (const auto& s : stabilizers_) {
    if (!commutes(s, q)) return PauliExpectation::zero();
  }
  // q commutes with the whole stabilizer group, so +-q is in it. The generators
  // needed are exactly those whose destabilizer anticommutes with q. Rows are
  // multiplied in increasing index order.
  PauliString acc = PauliString::identity(n_);
  for (std::size_t j = 0; j < n_; ++j) {
    if (!commutes(destabilizers_[j], q)) acc *= stabilizers_[j];
  }
  // acc = i^a sigma(q) stabilizes psi, so sigma(q)|psi> = i^{-a}|psi>.
  return PauliExpectation::of(q.phase() * acc.phase().conj());
}

bool StabilizerTableau::is_valid() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!stabilizers_[i].is_hermitian() || !destabilizers_[i].is_hermitian()) return false;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!commutes(stabilizers_[i], stabilizers_[j])) return false;
      if (!commutes(destabilizers_[i], destabilizers_[j])) return false;
      const bool anti = !commutes(destabilizers_[i], stabilizers_[j]);
      if (anti != (i == j)) return false;
    }
  }
  // The symplectic pairing above already forces independence over GF(2).
  return true;
}

StabilizerTableau apply_clifford(StabilizerTableau state, const CliffordGate& gate) {
  state.apply(gate);
  return state;
}

std::complex<double> expectation(const StabilizerTableau& state, const PauliString& q) {
  return state.expectation(q).value();
}

}  // namespace qce
