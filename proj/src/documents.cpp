#include "qce/documents.hpp"

#include <cstdio>

#ifndef QCE_VERSION
#define QCE_VERSION "0.0.0"
#endif

namespace qce {

using nlohmann::json;

std::string_view tool_version() { return QCE_VERSION; }

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

json document_header(std::string_view schema, const json& config, const json& inputs) {
  return json{{"schema", std::string(schema)},
              {"version", kResultSchemaVersion},
              {"tool", {{"name", std::string(kToolName)}, {"version", std::string(tool_version())}}},
              {"config", config},
              {"inputs", inputs}};
}

namespace {

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from(const json& a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  return v;
}

}  // namespace

void write_expansion(json& doc, const ExpansionResult& r) {
  json row_major = json::array();
  for (Eigen::Index i = 0; i < r.hessian.rows(); ++i) {
    for (Eigen::Index j = 0; j < r.hessian.cols(); ++j) row_major.push_back(r.hessian(i, j));
  }
  json theta_kept = json::array();
  for (auto k : r.kept_indices) theta_kept.push_back(r.theta_star[static_cast<Eigen::Index>(k)]);

  doc["e0"] = r.e0;
  doc["gradient"] = vector_json(r.gradient);
  doc["hessian"] = {{"kept_indices", r.kept_indices}, {"row_major", std::move(row_major)}};
  doc["dropout"] = {{"threshold", r.dropout_threshold},
                    {"kept", r.dropout_mask.kept()},
                    {"dropped", r.dropout_mask.dropped()}};
  doc["theta_star"] = std::move(theta_kept);
  doc["theta_full"] = vector_json(r.theta_star);
  doc["perturbative_optimum"] = r.perturbative_optimum;
  doc["rank"] = r.rank;
  doc["rtol"] = r.solve_options.rtol;
  doc["stable_subspace"] = r.solve_options.stable_subspace;
  doc["warnings"] = {{"all_dropped", r.counters.all_dropped}};
  doc["timings"] = {{"conjugation_s", r.timings.conjugation_s},
                    {"gradient_s", r.timings.gradient_s},
                    {"hessian_s", r.timings.hessian_s},
                    {"solve_s", r.timings.solve_s}};
  doc["counters"] = {{"n_qubits", r.counters.n_qubits},
                     {"K", r.counters.n_params},
                     {"K_kept", r.counters.n_kept},
                     {"N_o", r.counters.n_terms},
                     {"pauli_expectations_evaluated", r.counters.pauli_expectations_evaluated},
                     {"cache_hits", r.counters.cache_hits}};
}

ExpansionResult read_expansion(const json& doc) {
  ExpansionResult r;
  try {
    r.e0 = doc.at("e0").get<double>();
    r.gradient = vector_from(doc.at("gradient"));
    r.kept_indices = doc.at("hessian").at("kept_indices").get<std::vector<std::size_t>>();
    const auto nk = static_cast<Eigen::Index>(r.kept_indices.size());
    const auto& flat = doc.at("hessian").at("row_major");
    if (flat.size() != static_cast<std::size_t>(nk * nk)) throw ParseError("hessian row_major has the wrong length");
    r.hessian.resize(nk, nk);
    for (Eigen::Index i = 0; i < nk; ++i) {
      for (Eigen::Index j = 0; j < nk; ++j) r.hessian(i, j) = flat[static_cast<std::size_t>(i * nk + j)].get<double>();
    }
    r.dropout_mask.keep.assign(static_cast<std::size_t>(r.gradient.size()), 0);
    for (auto k : r.kept_indices) {
      if (k >= r.dropout_mask.keep.size()) throw ParseError("kept index out of range");
      r.dropout_mask.keep[k] = 1;
    }
    r.dropout_threshold = doc.at("dropout").at("threshold").get<double>();
    r.theta_star = vector_from(doc.at("theta_full"));
    if (r.theta_star.size() != r.gradient.size()) throw ParseError("theta_full length differs from gradient length");
    r.perturbative_optimum = doc.at("perturbative_optimum").get<double>();
    r.rank = doc.at("rank").get<std::size_t>();
    r.solve_options.rtol = doc.at("rtol").get<double>();
    r.solve_options.stable_subspace = doc.value("stable_subspace", false);
    const auto& c = doc.at("counters");
    r.counters.n_qubits = c.at("n_qubits").get<std::size_t>();
    r.counters.n_params = c.at("K").get<std::size_t>();
    r.counters.n_kept = c.at("K_kept").get<std::size_t>();
    r.counters.n_terms = c.at("N_o").get<std::size_t>();
    r.counters.pauli_expectations_evaluated = c.at("pauli_expectations_evaluated").get<std::uint64_t>();
    r.counters.all_dropped = doc.at("warnings").at("all_dropped").get<bool>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("expansion result document: ") + e.what());
  }
  return r;
}

void write_trace(json& doc, const OptimizationTrace& trace) {
  json records = json::array();
  for (const auto& rec : trace.records) {
    records.push_back({{"iteration", rec.iteration}, {"cost", rec.cost}, {"gradient_norm", rec.gradient_norm}});
  }
  doc["init"] = std::string(warm_start_name(trace.init));
  doc["records"] = std::move(records);
  doc["final_cost"] = trace.final_cost;
  doc["iterations"] = trace.iterations;
  doc["converged"] = trace.converged;
  doc["max_iterations_reached"] = trace.max_iterations_reached;
  doc["line_search_failed"] = trace.line_search_failed;
  doc["function_evaluations"] = trace.function_evaluations;
  doc["gradient_evaluations"] = trace.gradient_evaluations;
  doc["theta"] = vector_json(trace.theta);
}

json strip_timings(const json& doc) {
  if (doc.is_object()) {
    json out = json::object();
    for (auto it = doc.begin(); it != doc.end(); ++it) {
      const std::string& key = it.key();
      if (key == "timings") continue;
      if (key.size() > 2 && key.compare(key.size() - 2, 2, "_s") == 0) continue;
      out[key] = strip_timings(it.value());
    }
    return out;
  }
  if (doc.is_array()) {
    json out = json::array();
    for (const auto& v : doc) out.push_back(strip_timings(v));
    return out;
  }
  return doc;
}

}  // namespace qce
