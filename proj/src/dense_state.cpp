#include "qce/dense.hpp"

#include <bit>
#include <cmath>

#include "qce/kahan.hpp"

namespace qce {

namespace {

using cd = std::complex<double>;

const Eigen::Matrix2cd& hadamard() {
  static const Eigen::Matrix2cd h = [] {
    Eigen::Matrix2cd m;
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
    return m;
  }();
  return h;
}

Eigen::Matrix2cd diag(cd a, cd b) {
  Eigen::Matrix2cd m;
  m << a, 0.0, 0.0, b;
  return m;
}

Eigen::Matrix2cd offdiag(cd a, cd b) {
  Eigen::Matrix2cd m;
  m << 0.0, a, b, 0.0;
  return m;
}

cd i_power(unsigned k) {
  switch (k & 3u) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

struct PauliMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  unsigned y_count = 0;
};

PauliMasks masks_of(const PauliString& p) {
  if (p.n_qubits() > 63) throw ResourceError("dense Pauli application limited to 63 qubits");
  PauliMasks m;
  if (p.n_words() > 0) {
    m.x = p.x_words()[0];
    m.z = p.z_words()[0];
  }
  m.y_count = static_cast<unsigned>(std::popcount(m.x & m.z));
  return m;
}

}  // namespace

void check_dense_limits(std::size_t n_qubits, const DenseLimits& limits) {
  if (n_qubits > limits.max_qubits) {
    throw ResourceError("statevector of " + std::to_string(n_qubits) + " qubits exceeds the cap of " +
                        std::to_string(limits.max_qubits) + " qubits; use a desk-scale input");
  }
  if (n_qubits >= 60 || (sizeof(cd) << n_qubits) > limits.max_bytes) {
    throw ResourceError("statevector of " + std::to_string(n_qubits) + " qubits exceeds the memory budget of " +
                        std::to_string(limits.max_bytes) + " bytes");
  }
}

DenseState::DenseState(std::size_t n_qubits, const DenseLimits& limits) : n_(n_qubits) {
  check_dense_limits(n_qubits, limits);
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  amps_[0] = 1.0;
}

DenseState DenseState::basis_state(const ReferenceState& reference, const DenseLimits& limits) {
  DenseState s(reference.size(), limits);
  Eigen::Index index = 0;
  for (std::size_t q = 0; q < reference.size(); ++q) {
    if (reference.bits[q] != 0) index |= Eigen::Index{1} << q;
  }
  s.amps_.setZero();
  s.amps_[index] = 1.0;
  return s;
}

void DenseState::apply_single(std::size_t wire, const Eigen::Matrix2cd& u) {
  const Eigen::Index stride = Eigen::Index{1} << wire;
  const Eigen::Index dim = amps_.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index off = 0; off < stride; ++off) {
      const Eigen::Index i0 = base + off;
      const Eigen::Index i1 = i0 + stride;
      const cd a0 = amps_[i0];
      const cd a1 = amps_[i1];
      amps_[i0] = u(0, 0) * a0 + u(0, 1) * a1;
      amps_[i1] = u(1, 0) * a0 + u(1, 1) * a1;
    }
  }
}

void DenseState::apply(const CliffordGate& gate) {
  validate_gate(gate, n_);
  const std::size_t a = gate.wires[0];
  const std::size_t b = gate.wires[1];
  const cd i(0.0, 1.0);
  switch (gate.kind) {
    case CliffordKind::H: apply_single(a, hadamard()); break;
    case CliffordKind::S: apply_single(a, diag(1.0, i)); break;
    case CliffordKind::Sdg: apply_single(a, diag(1.0, -i)); break;
    case CliffordKind::X: apply_single(a, offdiag(1.0, 1.0)); break;
    case CliffordKind::Y: apply_single(a, offdiag(-i, i)); break;
    case CliffordKind::Z: apply_single(a, diag(1.0, -1.0)); break;
    case CliffordKind::SingleQubitClifford:
      for (char c : single_qubit_clifford_word(gate.table_index)) {
        apply_single(a, c == 'H' ? hadamard() : diag(1.0, i));
      }
      break;
    case CliffordKind::CNOT: {
      const Eigen::Index cm = Eigen::Index{1} << a;
      const Eigen::Index tm = Eigen::Index{1} << b;
      for (Eigen::Index k = 0; k < amps_.size(); ++k) {
        if ((k & cm) && !(k & tm)) std::swap(amps_[k], amps_[k | tm]);
      }
      break;
    }
    case CliffordKind::CZ: {
      const Eigen::Index m = (Eigen::Index{1} << a) | (Eigen::Index{1} << b);
      for (Eigen::Index k = 0; k < amps_.size(); ++k) {
        if ((k & m) == m) amps_[k] = -amps_[k];
      }
      break;
    }
    case CliffordKind::SWAP: {
      const Eigen::Index am = Eigen::Index{1} << a;
      const Eigen::Index bm = Eigen::Index{1} << b;
      for (Eigen::Index k = 0; k < amps_.size(); ++k) {
        if ((k & am) && !(k & bm)) std::swap(amps_[k], amps_[(k & ~am) | bm]);
      }
      break;
    }
  }
}

void DenseState::apply_rotation(const RotationGate& gate, double theta) {
  if (gate.wire >= n_) throw DimensionError("rotation wire out of range");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Eigen::Matrix2cd u;
  switch (gate.axis) {
    case RotationAxis::X: u << c, cd(0, s), cd(0, s), c; break;
    case RotationAxis::Y: u << c, s, -s, c; break;
    case RotationAxis::Z: u << cd(c, s), 0.0, 0.0, cd(c, -s); break;
  }
  apply_single(gate.wire, u);
}

void apply_pauli(const PauliString& p, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
  const PauliMasks m = masks_of(p);
  const cd global = i_power(p.phase().exponent + m.y_count);
  out.resize(in.size());
  for (Eigen::Index b = 0; b < in.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double sign = (std::popcount(ub & m.z) & 1) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(ub ^ m.x)] = global * sign * in[b];
  }
}

cd DenseState::expectation(const PauliString& p) const {
  if (p.n_qubits() != n_) throw DimensionError("dense expectation: width mismatch");
  const PauliMasks m = masks_of(p);
  cd acc = 0.0;
  for (Eigen::Index b = 0; b < amps_.size(); ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    const double sign = (std::popcount(ub & m.z) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps_[static_cast<Eigen::Index>(ub ^ m.x)]) * sign * amps_[b];
  }
  return i_power(p.phase().exponent + m.y_count) * acc;
}

double DenseState::expectation(const Observable& obs) const {
  if (obs.n_qubits() != n_) throw DimensionError("dense expectation: observable width mismatch");
  KahanSum sum;
  for (const auto& t : obs.terms()) sum += t.coefficient * expectation(t.pauli).real();
  return sum.value();
}

DenseState simulate(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, const ReferenceState& reference,
                    const DenseLimits& limits) {
  if (static_cast<std::size_t>(theta.size()) != ansatz.n_params) {
    throw DimensionError("theta has " + std::to_string(theta.size()) + " entries, ansatz has " +
                         std::to_string(ansatz.n_params) + " parameters");
  }
  if (reference.size() != ansatz.n_qubits) throw DimensionError("reference width differs from ansatz width");
  DenseState state = DenseState::basis_state(reference, limits);
  for (const auto& e : ansatz.elements) {
    if (const auto* g = std::get_if<CliffordGate>(&e)) {
      state.apply(*g);
    } else {
      const auto& r = std::get<RotationGate>(e);
      state.apply_rotation(r, theta[static_cast<Eigen::Index>(r.param)]);
    }
  }
  return state;
}

double energy(const AnsatzCircuit& ansatz, const Eigen::VectorXd& theta, const ReferenceState& reference,
              const Observable& obs, const DenseLimits& limits) {
  return simulate(ansatz, theta, reference, limits).expectation(obs);
}

}  // namespace qce
