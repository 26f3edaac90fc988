#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qce/clifford.hpp"
#include "qce/pauli.hpp"
#include "qce/tableau.hpp"

namespace qce {

enum class RotationAxis : std::uint8_t { X, Y, Z };

/// R(theta) = exp(i theta P) with P the single-qubit Pauli `axis` on `wire`.
struct RotationGate {
  RotationAxis axis = RotationAxis::Y;
  std::uint32_t wire = 0;
  std::uint32_t param = 0;

  PauliLetter letter() const;
  PauliString generator(std::size_t n_qubits) const;

  friend bool operator==(const RotationGate&, const RotationGate&) = default;
};

using CircuitElement = std::variant<CliffordGate, RotationGate>;

enum class AnsatzVariant : std::uint8_t { Complex, Real };

std::string_view variant_name(AnsatzVariant v);
AnsatzVariant parse_variant(std::string_view name);

struct AnsatzMetadata {
  std::uint64_t seed = 0;
  AnsatzVariant variant = AnsatzVariant::Complex;
  std::uint32_t depth = 0;
  bool generated = false;

  friend bool operator==(const AnsatzMetadata&, const AnsatzMetadata&) = default;
};

/// Ordered list of Clifford gates and parameterized single-qubit rotations.
///
/// Elements are in time order: elements[0] acts first. Every parameter index in
/// 0..n_params-1 is carried by exactly one rotation.
struct AnsatzCircuit {
  std::size_t n_qubits = 0;
  std::size_t n_params = 0;
  std::vector<CircuitElement> elements;
  AnsatzMetadata metadata;

  /// Throws ParseError/DimensionError naming the offending element index.
  void validate() const;

  /// Clifford content with every rotation removed (the circuit at theta = 0).
  std::vector<CliffordGate> clifford_part() const;

  /// Rotation gates indexed by parameter id.
  std::vector<RotationGate> rotations_by_param() const;

  friend bool operator==(const AnsatzCircuit&, const AnsatzCircuit&) = default;
};

/// Computational-basis input; bits[j] is the occupation of qubit j.
struct ReferenceState {
  std::vector<std::uint8_t> bits;

  static ReferenceState zeros(std::size_t n) { return {std::vector<std::uint8_t>(n, 0)}; }
  /// Parses "1100..." with the leftmost character as qubit 0.
  static ReferenceState parse(std::string_view text);
  std::string to_string() const;
  std::size_t size() const { return bits.size(); }

  friend bool operator==(const ReferenceState&, const ReferenceState&) = default;
};

/// Tableau of U(0)|reference>.
StabilizerTableau clifford_point_state(const AnsatzCircuit& ansatz, const ReferenceState& reference);

// --- Hardware-efficient brickwork generator ---------------------------------

/// Brickwork ansatz whose theta = 0 circuit is the identity.
///
/// Layout for depth d (R = rotation layer, E_l = entangler layer l):
///
///   R E_0 R E_1 ... R E_{d-1} R E_{d-1}^-1 R ... R E_0^-1 R
///
/// i.e. one rotation layer in each of the 2d+1 slots around the 2d entangler
/// layers; the middle slot is the region boundary. Entangler layer l pairs
/// (0,1),(2,3),... when l is even and (1,2),(3,4),... when odd (n = 2 always
/// uses (0,1)). Each block is C_a (x) C_b, CZ, C_c (x) C_d with random
/// single-qubit Cliffords; the mirrored layer applies the exact inverses in
/// reverse order. Complex variant: C from all 24 and rotation layers Rx Ry Rz on
/// every qubit. Real variant: C from {I, H} and rotation layers Ry only.
///
/// Randomness: block b (counted in generation order over region 1) draws from a
/// std::mt19937_64 seeded with stream_seed(seed, b).
AnsatzCircuit generate_hwe_ansatz(std::size_t n_qubits, std::size_t depth, std::uint64_t seed, AnsatzVariant variant);

/// Number of parameters generate_hwe_ansatz produces.
std::size_t hwe_parameter_count(std::size_t n_qubits, std::size_t depth, AnsatzVariant variant);

/// SplitMix64 finalizer applied to (seed, stream): the per-slot stream splitting rule.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

// --- Serialization -----------------------------------------------------------

inline constexpr int kAnsatzSchemaVersion = 1;

std::string serialize_ansatz(const AnsatzCircuit& ansatz);
AnsatzCircuit deserialize_ansatz(std::string_view document);

}  // namespace qce
