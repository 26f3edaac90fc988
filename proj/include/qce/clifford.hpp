#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qce/pauli.hpp"

namespace qce {

enum class CliffordKind : std::uint8_t { H, S, Sdg, X, Y, Z, CNOT, CZ, SWAP, SingleQubitClifford };

/// A Clifford gate acting on one or two wires.
///
/// For SingleQubitClifford, `table_index` selects an element of the 24-element
/// single-qubit Clifford group (see single_qubit_clifford_word).
struct CliffordGate {
  CliffordKind kind = CliffordKind::H;
  std::array<std::uint32_t, 2> wires{0, 0};
  std::uint8_t table_index = 0;

  static CliffordGate h(std::uint32_t q) { return {CliffordKind::H, {q, 0}, 0}; }
  static CliffordGate s(std::uint32_t q) { return {CliffordKind::S, {q, 0}, 0}; }
  static CliffordGate sdg(std::uint32_t q) { return {CliffordKind::Sdg, {q, 0}, 0}; }
  static CliffordGate x(std::uint32_t q) { return {CliffordKind::X, {q, 0}, 0}; }
  static CliffordGate y(std::uint32_t q) { return {CliffordKind::Y, {q, 0}, 0}; }
  static CliffordGate z(std::uint32_t q) { return {CliffordKind::Z, {q, 0}, 0}; }
  static CliffordGate cnot(std::uint32_t control, std::uint32_t target) { return {CliffordKind::CNOT, {control, target}, 0}; }
  static CliffordGate cz(std::uint32_t a, std::uint32_t b) { return {CliffordKind::CZ, {a, b}, 0}; }
  static CliffordGate swap(std::uint32_t a, std::uint32_t b) { return {CliffordKind::SWAP, {a, b}, 0}; }
  static CliffordGate single(std::uint32_t q, std::uint8_t index);

  bool is_two_qubit() const;
  std::size_t arity() const { return is_two_qubit() ? 2 : 1; }

  friend bool operator==(const CliffordGate&, const CliffordGate&) = default;
};

inline constexpr std::size_t kSingleQubitCliffordCount = 24;

/// Canonical word over {H, S} for table entry `index`, applied left to right in
/// time order. Index 0 is the identity (empty word) and index 1 is H.
std::string_view single_qubit_clifford_word(std::size_t index);

/// Table index of the group inverse of entry `index`.
std::uint8_t single_qubit_clifford_inverse(std::size_t index);

inline constexpr std::uint8_t kCliffordIdentityIndex = 0;
inline constexpr std::uint8_t kCliffordHadamardIndex = 1;

std::string_view kind_name(CliffordKind kind);
CliffordKind parse_kind(std::string_view name);

/// Throws DimensionError if a wire is >= n_qubits or a two-qubit gate repeats a wire.
void validate_gate(const CliffordGate& gate, std::size_t n_qubits);

/// The inverse gate (kinds are closed under inversion).
CliffordGate inverse(const CliffordGate& gate);

/// p <- G p G^dagger using the gate's local conjugation rule. O(1) per gate.
void conjugate_in_place(PauliString& p, const CliffordGate& gate);

/// Returns C p C^dagger for the circuit C = gates[m-1] ... gates[0].
PauliString conjugate_pauli(std::span<const CliffordGate> circuit, const PauliString& p);

}  // namespace qce
