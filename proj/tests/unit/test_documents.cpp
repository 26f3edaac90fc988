#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qce/documents.hpp"

namespace qce {
namespace {

TEST(Documents, ContentHashIsStableFnv) {
  EXPECT_EQ(content_hash(""), "fnv1a64:cbf29ce484222325");
  EXPECT_EQ(content_hash("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(Documents, HeaderCarriesProvenance) {
  const auto doc = document_header("qce.expand", {{"rtol", 1e-10}}, {{"ansatz", "fnv1a64:0"}});
  EXPECT_EQ(doc.at("schema"), "qce.expand");
  EXPECT_EQ(doc.at("version"), kResultSchemaVersion);
  EXPECT_EQ(doc.at("tool").at("version"), std::string(tool_version()));
  EXPECT_EQ(doc.at("config").at("rtol"), 1e-10);
}

TEST(Documents, ExpansionRoundTrip) {
  std::mt19937_64 rng(107);
  const auto a = generate_hwe_ansatz(3, 1, 2, AnsatzVariant::Complex);
  const auto obs = oracle::random_observable(3, 8, rng);
  const auto r = expand(a, obs, ReferenceState::zeros(3), {.dropout_threshold = 1e-6});
  nlohmann::json doc = document_header("qce.expand", {}, {});
  write_expansion(doc, r);
  const auto back = read_expansion(nlohmann::json::parse(doc.dump()));
  EXPECT_EQ(back.e0, r.e0);
  EXPECT_EQ(back.gradient, r.gradient);
  EXPECT_EQ(back.hessian, r.hessian);
  EXPECT_EQ(back.kept_indices, r.kept_indices);
  EXPECT_EQ(back.dropout_mask.keep, r.dropout_mask.keep);
  EXPECT_EQ(back.theta_star, r.theta_star);
  EXPECT_EQ(back.perturbative_optimum, r.perturbative_optimum);
  EXPECT_EQ(back.rank, r.rank);
  EXPECT_EQ(doc.at("theta_star").size(), r.kept_indices.size());
  EXPECT_EQ(doc.at("theta_full").size(), a.n_params);
}

TEST(Documents, StripTimingsRemovesOnlyTimingFields) {
  nlohmann::json doc = {{"a", 1}, {"timings", {{"x", 2}}}, {"nested", {{"t_s", 3}, {"b", 4}}}};
  const auto s = strip_timings(doc);
  EXPECT_FALSE(s.contains("timings"));
  EXPECT_FALSE(s.at("nested").contains("t_s"));
  EXPECT_EQ(s.at("nested").at("b"), 4);
  EXPECT_EQ(s.at("a"), 1);
}

TEST(Documents, ReadRejectsMalformed) {
  EXPECT_THROW(read_expansion(nlohmann::json::object()), ParseError);
}

}  // namespace
}  // namespace qce
