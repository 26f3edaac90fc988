#pragma once

#include <cstdint>
#include <vector>

#include "qce/circuit.hpp"
#include "qce/observable.hpp"

namespace qce {

inline constexpr std::size_t kDefaultCandidateCount = 200;

struct SelectionCandidate {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double gradient_l1 = 0.0;  // sum_l |g_l|
};

struct SelectionResult {
  AnsatzCircuit chosen;
  std::size_t chosen_index = 0;
  std::vector<SelectionCandidate> candidates;
};

/// Seed of candidate `index` under master seed `seed`.
std::uint64_t candidate_seed(std::uint64_t seed, std::size_t index);

/// Generates `count` ansatzes and keeps the one with the largest sum_l |g_l|
/// (lowest index on ties).
SelectionResult select_ansatz(std::size_t count, std::size_t n_qubits, std::size_t depth, AnsatzVariant variant,
                              const Observable& obs, const ReferenceState& reference, std::uint64_t seed,
                              std::size_t jobs = 0);

}  // namespace qce
