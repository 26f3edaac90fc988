#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qce/expansion.hpp"
#include "qce/selection.hpp"

namespace qce {
namespace {

TEST(Selection, PicksLargestGradientL1) {
  std::mt19937_64 rng(89);
  const auto obs = oracle::random_observable(4, 12, rng);
  const auto ref = ReferenceState::parse("1100");
  const auto result = select_ansatz(16, 4, 1, AnsatzVariant::Complex, obs, ref, 2024, 4);
  ASSERT_EQ(result.candidates.size(), 16u);
  for (const auto& c : result.candidates) {
    EXPECT_LE(c.gradient_l1, result.candidates[result.chosen_index].gradient_l1);
    const auto a = generate_hwe_ansatz(4, 1, c.seed, AnsatzVariant::Complex);
    const auto g = compute_gradient(obs, clifford_point_state(a, ref), conjugate_generators(a));
    EXPECT_DOUBLE_EQ(g.cwiseAbs().sum(), c.gradient_l1);
  }
  for (std::size_t i = 0; i < result.chosen_index; ++i) {
    EXPECT_LT(result.candidates[i].gradient_l1, result.candidates[result.chosen_index].gradient_l1);
  }
  EXPECT_EQ(result.chosen, generate_hwe_ansatz(4, 1, result.candidates[result.chosen_index].seed, AnsatzVariant::Complex));
}

TEST(Selection, DeterministicAcrossJobCounts) {
  std::mt19937_64 rng(97);
  const auto obs = oracle::random_observable(3, 6, rng);
  const auto ref = ReferenceState::zeros(3);
  const auto a = select_ansatz(10, 3, 2, AnsatzVariant::Real, obs, ref, 5, 1);
  const auto b = select_ansatz(10, 3, 2, AnsatzVariant::Real, obs, ref, 5, 4);
  EXPECT_EQ(a.chosen_index, b.chosen_index);
  EXPECT_EQ(a.chosen, b.chosen);
}

TEST(Selection, TiesGoToLowestIndex) {
  // The identity observable has zero gradient for every candidate.
  const auto obs = parse_observable("qubits 2\n1\n");
  const auto r = select_ansatz(5, 2, 1, AnsatzVariant::Complex, obs, ReferenceState::zeros(2), 1);
  EXPECT_EQ(r.chosen_index, 0u);
}

TEST(Selection, RejectsBadArguments) {
  const auto obs = parse_observable("qubits 2\n1 Z0\n");
  EXPECT_THROW(select_ansatz(0, 2, 1, AnsatzVariant::Complex, obs, ReferenceState::zeros(2), 1), std::invalid_argument);
  EXPECT_THROW(select_ansatz(3, 3, 1, AnsatzVariant::Complex, obs, ReferenceState::zeros(3), 1), DimensionError);
}

}  // namespace
}  // namespace qce
