#include "qce/clifford.hpp"

#include <algorithm>

namespace qce {

namespace {

// Shortest {H, S} words, ordered by length then lexicographically (H < S).
// Mirrored in data/single_qubit_cliffords.tsv.
constexpr std::array<std::string_view, kSingleQubitCliffordCount> kCliffordWords = {
    "",      "H",     "S",      "HS",     "SH",     "SS",    "HSH",   "HSS",
    "SHS",   "SSH",   "SSS",    "HSHS",   "HSSH",   "HSSS",  "SHSS",  "SSHS",
    "HSHSS", "HSSHS", "SHSSH",  "SHSSS",  "SSHSS",  "HSHSSH", "HSHSSS", "HSSHSS",
};

inline void flip_sign(PauliString& p) { p.set_phase(p.phase() * Phase(2)); }

void apply_h(PauliString& p, std::size_t q) {
  const bool x = p.x(q);
  const bool z = p.z(q);
  if (x && z) flip_sign(p);
  p.set_x(q, z);
  p.set_z(q, x);
}

void apply_s(PauliString& p, std::size_t q) {
  const bool x = p.x(q);
  const bool z = p.z(q);
  if (x && z) flip_sign(p);
  p.set_z(q, z != x);
}

void apply_sdg(PauliString& p, std::size_t q) {
  const bool x = p.x(q);
  const bool z = p.z(q);
  if (x && !z) flip_sign(p);
  p.set_z(q, z != x);
}

void apply_word(PauliString& p, std::size_t q, std::string_view word) {
  for (char c : word) {
    if (c == 'H') {
      apply_h(p, q);
    } else {
      apply_s(p, q);
    }
  }
}

std::array<std::uint8_t, kSingleQubitCliffordCount> build_inverse_table() {
  std::array<std::uint8_t, kSingleQubitCliffordCount> table{};
  const PauliString x1 = PauliString::single(1, 0, PauliLetter::X);
  const PauliString z1 = PauliString::single(1, 0, PauliLetter::Z);
  for (std::size_t i = 0; i < kSingleQubitCliffordCount; ++i) {
    for (std::size_t j = 0; j < kSingleQubitCliffordCount; ++j) {
      PauliString px = x1;
      PauliString pz = z1;
      apply_word(px, 0, kCliffordWords[i]);
      apply_word(px, 0, kCliffordWords[j]);
      apply_word(pz, 0, kCliffordWords[i]);
      apply_word(pz, 0, kCliffordWords[j]);
      if (px == x1 && pz == z1) {
        table[i] = static_cast<std::uint8_t>(j);
        break;
      }
    }
  }
  return table;
}

void check_wire(std::uint32_t wire, std::size_t n_qubits) {
  if (wire >= n_qubits) {
    throw DimensionError("gate wire " + std::to_string(wire) + " out of range for " + std::to_string(n_qubits) +
                         " qubits");
  }
}

}  // namespace

CliffordGate CliffordGate::single(std::uint32_t q, std::uint8_t index) {
  if (index >= kSingleQubitCliffordCount) {
    throw std::invalid_argument("single-qubit Clifford index " + std::to_string(index) + " outside 0..23");
  }
  return {CliffordKind::SingleQubitClifford, {q, 0}, index};
}

bool CliffordGate::is_two_qubit() const {
  return kind == CliffordKind::CNOT || kind == CliffordKind::CZ || kind == CliffordKind::SWAP;
}

std::string_view single_qubit_clifford_word(std::size_t index) { return kCliffordWords.at(index); }

std::uint8_t single_qubit_clifford_inverse(std::size_t index) {
  static const auto table = build_inverse_table();
  return table.at(index);
}

std::string_view kind_name(CliffordKind kind) {
  switch (kind) {
    case CliffordKind::H: return "H";
    case CliffordKind::S: return "S";
    case CliffordKind::Sdg: return "SDG";
    case CliffordKind::X: return "X";
    case CliffordKind::Y: return "Y";
    case CliffordKind::Z: return "Z";
    case CliffordKind::CNOT: return "CNOT";
    case CliffordKind::CZ: return "CZ";
    case CliffordKind::SWAP: return "SWAP";
    case CliffordKind::SingleQubitClifford: return "C1";
  }
  return "?";
}

CliffordKind parse_kind(std::string_view name) {
  static constexpr std::array kinds = {CliffordKind::H,    CliffordKind::S,  CliffordKind::Sdg,
                                       CliffordKind::X,    CliffordKind::Y,  CliffordKind::Z,
                                       CliffordKind::CNOT, CliffordKind::CZ, CliffordKind::SWAP,
                                       CliffordKind::SingleQubitClifford};
  for (CliffordKind k : kinds) {
    if (kind_name(k) == name) return k;
  }
  throw ParseError("unknown Clifford gate kind '" + std::string(name) + "'");
}

void validate_gate(const CliffordGate& gate, std::size_t n_qubits) {
  check_wire(gate.wires[0], n_qubits);
  if (gate.is_two_qubit()) {
    check_wire(gate.wires[1], n_qubits);
    if (gate.wires[0] == gate.wires[1]) {
      throw DimensionError("two-qubit gate " + std::string(kind_name(gate.kind)) + " repeats wire " +
                           std::to_string(gate.wires[0]));
    }
  }
  if (gate.kind == CliffordKind::SingleQubitClifford && gate.table_index >= kSingleQubitCliffordCount) {
    throw DimensionError("single-qubit Clifford index " + std::to_string(gate.table_index) + " outside 0..23");
  }
}

CliffordGate inverse(const CliffordGate& gate) {
  CliffordGate inv = gate;
  switch (gate.kind) {
    case CliffordKind::S: inv.kind = CliffordKind::Sdg; break;
    case CliffordKind::Sdg: inv.kind = CliffordKind::S; break;
    case CliffordKind::SingleQubitClifford: inv.table_index = single_qubit_clifford_inverse(gate.table_index); break;
    default: break;
  }
  return inv;
}

void conjugate_in_place(PauliString& p, const CliffordGate& gate) {
  const std::size_t a = gate.wires[0];
  const std::size_t b = gate.wires[1];
  switch (gate.kind) {
    case CliffordKind::H: apply_h(p, a); break;
    case CliffordKind::S: apply_s(p, a); break;
    case CliffordKind::Sdg: apply_sdg(p, a); break;
    case CliffordKind::X:
      if (p.z(a)) flip_sign(p);
      break;
    case CliffordKind::Y:
      if (p.x(a) != p.z(a)) flip_sign(p);
      break;
    case CliffordKind::Z:
      if (p.x(a)) flip_sign(p);
      break;
    case CliffordKind::CNOT: {
      const bool xc = p.x(a), zc = p.z(a), xt = p.x(b), zt = p.z(b);
      if (xc && zt && (xt == zc)) flip_sign(p);
      p.set_x(b, xt != xc);
      p.set_z(a, zc != zt);
      break;
    }
    case CliffordKind::CZ: {
      const bool xa = p.x(a), za = p.z(a), xb = p.x(b), zb = p.z(b);
      if (xa && xb && (za != zb)) flip_sign(p);
      p.set_z(a, za != xb);
      p.set_z(b, zb != xa);
      break;
    }
    case CliffordKind::SWAP: {
      const PauliLetter la = p.letter(a);
      const PauliLetter lb = p.letter(b);
      p.set_letter(a, lb);
      p.set_letter(b, la);
      break;
    }
    case CliffordKind::SingleQubitClifford: apply_word(p, a, kCliffordWords[gate.table_index]); break;
  }
}

PauliString conjugate_pauli(std::span<const CliffordGate> circuit, const PauliString& p) {
  PauliString out = p;
  for (const CliffordGate& g : circuit) {
    validate_gate(g, p.n_qubits());
    conjugate_in_place(out, g);
  }
  return out;
}

}  // namespace qce
