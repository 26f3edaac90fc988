#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qce/circuit.hpp"
#include "qce/tableau.hpp"

namespace qce {
namespace {

TEST(Circuit, ParameterCounts) {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (std::size_t d = 1; d <= 4; ++d) {
      const auto c = generate_hwe_ansatz(n, d, 7, AnsatzVariant::Complex);
      const auto r = generate_hwe_ansatz(n, d, 7, AnsatzVariant::Real);
      EXPECT_EQ(c.n_params, 3 * n * (2 * d + 1));
      EXPECT_EQ(r.n_params, c.n_params / 3);
      EXPECT_EQ(hwe_parameter_count(n, d, AnsatzVariant::Complex), c.n_params);
      EXPECT_EQ(hwe_parameter_count(n, d, AnsatzVariant::Real), r.n_params);
      EXPECT_NO_THROW(c.validate());
      EXPECT_NO_THROW(r.validate());
    }
  }
}

TEST(Circuit, RealVariantUsesOnlyRyAndHadamardDressings) {
  const auto a = generate_hwe_ansatz(5, 3, 99, AnsatzVariant::Real);
  for (const auto& e : a.elements) {
    if (const auto* r = std::get_if<RotationGate>(&e)) {
      EXPECT_EQ(r->axis, RotationAxis::Y);
    } else {
      const auto& g = std::get<CliffordGate>(e);
      if (g.kind == CliffordKind::SingleQubitClifford) {
        EXPECT_TRUE(g.table_index == kCliffordIdentityIndex || g.table_index == kCliffordHadamardIndex);
      } else {
        EXPECT_EQ(g.kind, CliffordKind::CZ);
      }
    }
  }
}

TEST(Circuit, IdentityAtZeroOnTableau) {
  for (auto variant : {AnsatzVariant::Complex, AnsatzVariant::Real}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = generate_hwe_ansatz(2 + seed % 5, 1 + seed % 3, seed, variant);
      const auto zero = StabilizerTableau::zero_state(a.n_qubits);
      auto t = zero;
      t.apply(a.clifford_part());
      EXPECT_EQ(t, zero);
    }
  }
}

TEST(Circuit, IdentityAtZeroOnDenseMatrix) {
  const auto a = generate_hwe_ansatz(3, 2, 4, AnsatzVariant::Complex);
  const auto u = oracle::ansatz_unitary(a, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(a.n_params)));
  EXPECT_LT((u - oracle::Matrix::Identity(8, 8)).norm(), 1e-12);
}

TEST(Circuit, GenerationIsDeterministicAndSeedSensitive) {
  const auto a = generate_hwe_ansatz(4, 3, 123, AnsatzVariant::Complex);
  const auto b = generate_hwe_ansatz(4, 3, 123, AnsatzVariant::Complex);
  const auto c = generate_hwe_ansatz(4, 3, 124, AnsatzVariant::Complex);
  EXPECT_EQ(a, b);
  EXPECT_NE(a.elements, c.elements);
  EXPECT_EQ(a.metadata.seed, 123u);
  EXPECT_TRUE(a.metadata.generated);
}

TEST(Circuit, GeneratorRejectsBadShape) {
  EXPECT_THROW(generate_hwe_ansatz(1, 1, 0, AnsatzVariant::Complex), std::invalid_argument);
  EXPECT_THROW(generate_hwe_ansatz(3, 0, 0, AnsatzVariant::Complex), std::invalid_argument);
}

TEST(Circuit, SerializationRoundTrip) {
  for (auto variant : {AnsatzVariant::Complex, AnsatzVariant::Real}) {
    const auto a = generate_hwe_ansatz(4, 2, 5, variant);
    const std::string text = serialize_ansatz(a);
    const auto b = deserialize_ansatz(text);
    EXPECT_EQ(a, b);
    EXPECT_EQ(serialize_ansatz(b), text);
  }
}

TEST(Circuit, HandWrittenFileParses) {
  const char* doc = R"({
    "version": 1, "n_qubits": 2, "n_params": 2,
    "elements": [
      {"type": "rotation", "axis": "Y", "wire": 0, "param": 1},
      {"type": "clifford", "kind": "CNOT", "wires": [0, 1]},
      {"type": "clifford", "kind": "C1", "wires": [1], "index": 5},
      {"type": "rotation", "axis": "X", "wire": 1, "param": 0}
    ]})";
  const auto a = deserialize_ansatz(doc);
  EXPECT_EQ(a.n_qubits, 2u);
  EXPECT_EQ(a.n_params, 2u);
  ASSERT_EQ(a.elements.size(), 4u);
  EXPECT_EQ(std::get<RotationGate>(a.elements[0]), (RotationGate{RotationAxis::Y, 0, 1}));
  EXPECT_EQ(std::get<CliffordGate>(a.elements[2]), CliffordGate::single(1, 5));
  EXPECT_FALSE(a.metadata.generated);
  const auto by_param = a.rotations_by_param();
  EXPECT_EQ(by_param[0].axis, RotationAxis::X);
  EXPECT_EQ(a.clifford_part().size(), 2u);
}

TEST(Circuit, DuplicateParamIsRejectedWithElementIndex) {
  const char* doc = R"({"version": 1, "n_qubits": 2, "n_params": 1, "elements": [
      {"type": "rotation", "axis": "Y", "wire": 0, "param": 0},
      {"type": "rotation", "axis": "Z", "wire": 1, "param": 0}]})";
  try {
    deserialize_ansatz(doc);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("element 1"), std::string::npos) << e.what();
  }
}

TEST(Circuit, MalformedDocumentsAreRejected) {
  EXPECT_THROW(deserialize_ansatz("not json"), ParseError);
  EXPECT_THROW(deserialize_ansatz(R"({"version": 2, "n_qubits": 1, "n_params": 0, "elements": []})"), ParseError);
  EXPECT_THROW(deserialize_ansatz(R"({"version": 1, "n_qubits": 1, "n_params": 1, "elements": []})"), ParseError);
  EXPECT_THROW(deserialize_ansatz(R"({"version": 1, "n_qubits": 2, "n_params": 0, "elements": [
      {"type": "clifford", "kind": "CZ", "wires": [0]}]})"),
               ParseError);
  EXPECT_THROW(deserialize_ansatz(R"({"version": 1, "n_qubits": 2, "n_params": 0, "elements": [
      {"type": "clifford", "kind": "H", "wires": [5]}]})"),
               std::exception);
}

TEST(Circuit, ReferenceParsing) {
  const auto r = ReferenceState::parse("1100");
  EXPECT_EQ(r.bits, (std::vector<std::uint8_t>{1, 1, 0, 0}));
  EXPECT_EQ(r.to_string(), "1100");
  EXPECT_THROW(ReferenceState::parse("10a"), ParseError);
  EXPECT_THROW(ReferenceState::parse(""), ParseError);
}

TEST(Circuit, CliffordPointStateUsesReference) {
  const auto a = generate_hwe_ansatz(3, 1, 1, AnsatzVariant::Complex);
  const auto t = clifford_point_state(a, ReferenceState::parse("010"));
  EXPECT_EQ(expectation(t, parse_pauli("Z1", 3)), std::complex<double>(-1.0));
  EXPECT_THROW(clifford_point_state(a, ReferenceState::parse("01")), DimensionError);
}

TEST(Circuit, StreamSeedSeparatesStreams) {
  EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
  EXPECT_EQ(stream_seed(1, 5), stream_seed(1, 5));
}

}  // namespace
}  // namespace qce
