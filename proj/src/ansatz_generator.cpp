#include <random>

#include "qce/circuit.hpp"

namespace qce {

namespace {

struct Block {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::array<std::uint8_t, 4> dressing{};  // pre a, pre b, post a, post b
};

std::vector<std::pair<std::uint32_t, std::uint32_t>> brick_pairs(std::size_t n_qubits, std::size_t layer) {
  std::size_t offset = layer % 2;
  if (n_qubits == 2) offset = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::size_t q = offset; q + 1 < n_qubits; q += 2) {
    pairs.emplace_back(static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(q + 1));
  }
  return pairs;
}

std::uint8_t draw_clifford(std::mt19937_64& rng, AnsatzVariant variant) {
  if (variant == AnsatzVariant::Real) {
    return (rng() & 1u) ? kCliffordHadamardIndex : kCliffordIdentityIndex;
  }
  // Modulo bias is below 2^-59.
  return static_cast<std::uint8_t>(rng() % kSingleQubitCliffordCount);
}

class Builder {
 public:
  Builder(std::size_t n_qubits, AnsatzVariant variant) : n_(n_qubits), variant_(variant) {}

  void rotation_layer() {
    for (std::uint32_t q = 0; q < n_; ++q) {
      if (variant_ == AnsatzVariant::Real) {
        add_rotation(RotationAxis::Y, q);
      } else {
        add_rotation(RotationAxis::X, q);
        add_rotation(RotationAxis::Y, q);
        add_rotation(RotationAxis::Z, q);
      }
    }
  }

  void block(const Block& blk) {
    single(blk.a, blk.dressing[0]);
    single(blk.b, blk.dressing[1]);
    out_.emplace_back(CliffordGate::cz(blk.a, blk.b));
    single(blk.a, blk.dressing[2]);
    single(blk.b, blk.dressing[3]);
  }

  void inverse_block(const Block& blk) {
    single(blk.a, single_qubit_clifford_inverse(blk.dressing[2]));
    single(blk.b, single_qubit_clifford_inverse(blk.dressing[3]));
    out_.emplace_back(CliffordGate::cz(blk.a, blk.b));
    single(blk.a, single_qubit_clifford_inverse(blk.dressing[0]));
    single(blk.b, single_qubit_clifford_inverse(blk.dressing[1]));
  }

  std::size_t n_params() const { return next_param_; }
  std::vector<CircuitElement> take() { return std::move(out_); }

 private:
  void single(std::uint32_t q, std::uint8_t index) { out_.emplace_back(CliffordGate::single(q, index)); }

  void add_rotation(RotationAxis axis, std::uint32_t q) {
    out_.emplace_back(RotationGate{axis, q, static_cast<std::uint32_t>(next_param_++)});
  }

  std::size_t n_;
  AnsatzVariant variant_;
  std::size_t next_param_ = 0;
  std::vector<CircuitElement> out_;
};

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::size_t hwe_parameter_count(std::size_t n_qubits, std::size_t depth, AnsatzVariant variant) {
  const std::size_t per_layer = variant == AnsatzVariant::Real ? n_qubits : 3 * n_qubits;
  return per_layer * (2 * depth + 1);
}

AnsatzCircuit generate_hwe_ansatz(std::size_t n_qubits, std::size_t depth, std::uint64_t seed,
                                  AnsatzVariant variant) {
  if (n_qubits < 2) throw std::invalid_argument("hardware-efficient ansatz needs at least 2 qubits");
  if (depth < 1) throw std::invalid_argument("ansatz depth must be >= 1");

  std::vector<std::vector<Block>> layers(depth);
  std::uint64_t block_counter = 0;
  for (std::size_t l = 0; l < depth; ++l) {
    for (auto [a, b] : brick_pairs(n_qubits, l)) {
      std::mt19937_64 rng(stream_seed(seed, block_counter++));
      Block blk{a, b, {}};
      for (auto& d : blk.dressing) d = draw_clifford(rng, variant);
      layers[l].push_back(blk);
    }
  }

  Builder builder(n_qubits, variant);
  for (std::size_t l = 0; l < depth; ++l) {
    builder.rotation_layer();
    for (const auto& blk : layers[l]) builder.block(blk);
  }
  builder.rotation_layer();
  for (std::size_t l = depth; l-- > 0;) {
    const auto& layer = layers[l];
    for (auto it = layer.rbegin(); it != layer.rend(); ++it) builder.inverse_block(*it);
    builder.rotation_layer();
  }

  AnsatzCircuit a;
  a.n_qubits = n_qubits;
  a.n_params = builder.n_params();
  a.elements = builder.take();
  a.metadata = {seed, variant, static_cast<std::uint32_t>(depth), true};
  return a;
}

}  // namespace qce
