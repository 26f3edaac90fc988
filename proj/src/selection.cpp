#include "qce/selection.hpp"

#include "qce/expansion.hpp"
#include "qce/parallel.hpp"

namespace qce {

std::uint64_t candidate_seed(std::uint64_t seed, std::size_t index) {
  // Stream ids for candidates live far from the per-block ids used inside a generator.
  return stream_seed(seed, (std::uint64_t{1} << 40) + index);
}

SelectionResult select_ansatz(std::size_t count, std::size_t n_qubits, std::size_t depth, AnsatzVariant variant,
                              const Observable& obs, const ReferenceState& reference, std::uint64_t seed,
                              std::size_t jobs) {
  if (count < 1) throw std::invalid_argument("candidate count must be >= 1");
  if (obs.n_qubits() != n_qubits) throw DimensionError("observable width differs from the requested ansatz width");

  SelectionResult result;
  result.candidates.resize(count);
  parallel_for(count, jobs, [&](std::size_t c) {
    const std::uint64_t s = candidate_seed(seed, c);
    const AnsatzCircuit a = generate_hwe_ansatz(n_qubits, depth, s, variant);
    const StabilizerTableau state = clifford_point_state(a, reference);
    const Eigen::VectorXd g = compute_gradient(obs, state, conjugate_generators(a));
    result.candidates[c] = {c, s, g.cwiseAbs().sum()};
  });

  std::size_t best = 0;
  for (std::size_t c = 1; c < count; ++c) {
    if (result.candidates[c].gradient_l1 > result.candidates[best].gradient_l1) best = c;
  }
  result.chosen_index = best;
  result.chosen = generate_hwe_ansatz(n_qubits, depth, result.candidates[best].seed, variant);
  return result;
}

}  // namespace qce
