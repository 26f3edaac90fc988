#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "qce/dense.hpp"
#include "qce/documents.hpp"
#include "qce/expansion.hpp"
#include "qce/parallel.hpp"
#include "qce/selection.hpp"
#include "qce/verifier.hpp"

namespace qce::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Raised for bad paths and inconsistent inputs; maps to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InputFile {
  std::string path;
  std::string bytes;
};

void require_readable(const std::string& path, const char* what) {
  if (path.empty()) throw InputError(std::string("missing --") + what);
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError(std::string(what) + " file not found: " + path);
  std::ifstream in(path);
  if (!in) throw InputError(std::string(what) + " file is not readable: " + path);
}

void require_writable(const std::string& path, const char* what) {
  if (path.empty()) return;
  const fs::path parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec)) {
    throw InputError(std::string(what) + " directory does not exist: " + parent.string());
  }
}

InputFile read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {path, ss.str()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json input_entry(const InputFile& f) { return {{"path", f.path}, {"hash", content_hash(f.bytes)}}; }

Observable load_observable(const InputFile& f) {
  try {
    return parse_observable(f.bytes);
  } catch (const std::exception& e) {
    throw ParseError(f.path + ": " + e.what());
  }
}

AnsatzCircuit load_ansatz(const InputFile& f) {
  try {
    return deserialize_ansatz(f.bytes);
  } catch (const std::exception& e) {
    throw ParseError(f.path + ": " + e.what());
  }
}

json load_json(const InputFile& f) {
  try {
    return json::parse(f.bytes);
  } catch (const json::exception& e) {
    throw ParseError(f.path + ": not a valid result document: " + e.what());
  }
}

ReferenceState reference_or_zeros(const std::string& text, std::size_t n) {
  if (text.empty()) return ReferenceState::zeros(n);
  ReferenceState r = ReferenceState::parse(text);
  if (r.size() != n) {
    throw DimensionError("reference has " + std::to_string(r.size()) + " bits, inputs have " + std::to_string(n) +
                         " qubits");
  }
  return r;
}

/// The result document must have been produced from the same files.
void check_same_input(const json& result, const char* key, const InputFile& f) {
  if (!result.contains("inputs") || !result["inputs"].contains(key)) return;
  const auto& recorded = result["inputs"][key];
  if (recorded.value("hash", "") != content_hash(f.bytes)) {
    throw InputError(std::string("--") + key + " " + f.path + " differs from the file the result was computed from (" +
                     recorded.value("path", "?") + ")");
  }
}

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError(std::string("malformed --") + what + " list entry '" + item + "'");
    }
  }
  if (out.empty()) throw InputError(std::string("--") + what + " list is empty");
  return out;
}

// --- Commands --------------------------------------------------------------------

struct GenArgs {
  std::size_t qubits = 0;
  std::size_t depth = 1;
  std::uint64_t seed = 0;
  std::string variant = "complex";
};

json gen_config(const GenArgs& g) {
  return {{"qubits", g.qubits}, {"depth", g.depth}, {"seed", g.seed}, {"variant", g.variant}};
}

struct GenAnsatzCmd {
  GenArgs gen;
  std::string out_path;

  int run(std::ostream& out) const {
    require_writable(out_path, "--out");
    const AnsatzCircuit a = generate_hwe_ansatz(gen.qubits, gen.depth, gen.seed, parse_variant(gen.variant));
    json doc = json::parse(serialize_ansatz(a));
    doc["provenance"] = document_header("qce.ansatz", {{"command", "gen-ansatz"}, {"generator", gen_config(gen)}},
                                        json::object());
    emit(out_path, dump(doc), out);
    if (!out_path.empty() && out_path != "-") out << "K=" << a.n_params << "\n";
    return kSuccess;
  }
};

struct SelectAnsatzCmd {
  GenArgs gen;
  std::size_t count = kDefaultCandidateCount;
  std::string hamiltonian;
  std::string reference;
  std::size_t jobs = 0;
  std::string out_path;
  std::string report_path;

  int run(std::ostream& out) const {
    require_readable(hamiltonian, "hamiltonian");
    require_writable(out_path, "--out");
    require_writable(report_path, "--report");
    const InputFile hf = read_file(hamiltonian);
    const Observable obs = load_observable(hf);
    const std::size_t n = gen.qubits == 0 ? obs.n_qubits() : gen.qubits;
    const ReferenceState ref = reference_or_zeros(reference, n);

    const SelectionResult sel = select_ansatz(count, n, gen.depth, parse_variant(gen.variant), obs, ref, gen.seed, jobs);

    GenArgs resolved = gen;
    resolved.qubits = n;
    const json config = {{"command", "select-ansatz"}, {"generator", gen_config(resolved)}, {"count", count},
                         {"reference", ref.to_string()}, {"jobs", jobs}};
    const json inputs = {{"hamiltonian", input_entry(hf)}};

    json ansatz_doc = json::parse(serialize_ansatz(sel.chosen));
    ansatz_doc["provenance"] = document_header("qce.ansatz", config, inputs);

    json report = document_header("qce.selection", config, inputs);
    json cands = json::array();
    for (const auto& c : sel.candidates) {
      cands.push_back({{"index", c.index}, {"seed", c.seed}, {"gradient_l1", c.gradient_l1}});
    }
    report["candidates"] = std::move(cands);
    report["chosen_index"] = sel.chosen_index;
    report["chosen_seed"] = sel.candidates[sel.chosen_index].seed;
    report["chosen_gradient_l1"] = sel.candidates[sel.chosen_index].gradient_l1;
    report["K"] = sel.chosen.n_params;

    emit(out_path, dump(ansatz_doc), out);
    if (!report_path.empty()) write_file(report_path, dump(report));
    if (!out_path.empty() && out_path != "-") {
      out << "chosen candidate " << sel.chosen_index << " of " << count << ", sum|g| = " << std::setprecision(17)
          << sel.candidates[sel.chosen_index].gradient_l1 << ", K=" << sel.chosen.n_params << "\n";
    }
    return kSuccess;
  }
};

struct ExpandCmd {
  std::string hamiltonian;
  std::string ansatz;
  std::string reference;
  double dropout_threshold = 1e-6;
  double rtol = 1e-10;
  bool stable_subspace = false;
  std::size_t jobs = 0;
  std::string out_path;

  int run(std::ostream& out) const {
    require_readable(hamiltonian, "hamiltonian");
    require_readable(ansatz, "ansatz");
    require_writable(out_path, "--out");
    if (!(dropout_threshold >= 0.0)) throw InputError("--dropout-threshold must be >= 0");
    if (!(rtol >= 0.0)) throw InputError("--rtol must be >= 0");
    const InputFile hf = read_file(hamiltonian);
    const InputFile af = read_file(ansatz);
    const Observable obs = load_observable(hf);
    const AnsatzCircuit a = load_ansatz(af);
    if (obs.n_qubits() != a.n_qubits) {
      throw DimensionError("hamiltonian has " + std::to_string(obs.n_qubits()) + " qubits, ansatz has " +
                           std::to_string(a.n_qubits));
    }
    const ReferenceState ref = reference_or_zeros(reference, a.n_qubits);

    ExpansionOptions opts;
    opts.dropout_threshold = dropout_threshold;
    opts.solve.rtol = rtol;
    opts.solve.stable_subspace = stable_subspace;
    opts.jobs = jobs;
    const ExpansionResult r = expand(a, obs, ref, opts);

    const json config = {{"command", "expand"},           {"reference", ref.to_string()},
                         {"dropout_threshold", dropout_threshold}, {"rtol", rtol},
                         {"stable_subspace", stable_subspace},     {"jobs", jobs}};
    json doc = document_header("qce.expansion", config, {{"hamiltonian", input_entry(hf)}, {"ansatz", input_entry(af)}});
    write_expansion(doc, r);
    emit(out_path, dump(doc), out);
    return kSuccess;
  }
};

struct VerifyCmd {
  std::string result;
  std::string hamiltonian;
  std::string ansatz;
  std::string reference;
  bool exact = false;
  std::size_t max_qubits = DenseLimits{}.max_qubits;
  std::string out_path;

  int run(std::ostream& out) const {
    require_readable(result, "result");
    require_readable(hamiltonian, "hamiltonian");
    require_readable(ansatz, "ansatz");
    require_writable(out_path, "--out");
    const InputFile rf = read_file(result);
    const InputFile hf = read_file(hamiltonian);
    const InputFile af = read_file(ansatz);
    const json rdoc = load_json(rf);
    check_same_input(rdoc, "hamiltonian", hf);
    check_same_input(rdoc, "ansatz", af);
    const ExpansionResult r = read_expansion(rdoc);
    const Observable obs = load_observable(hf);
    const AnsatzCircuit a = load_ansatz(af);
    std::string ref_text = reference;
    if (ref_text.empty() && rdoc.contains("config")) ref_text = rdoc["config"].value("reference", "");
    const ReferenceState ref = reference_or_zeros(ref_text, a.n_qubits);
    if (obs.n_qubits() != a.n_qubits) throw DimensionError("hamiltonian and ansatz widths differ");
    if (static_cast<std::size_t>(r.theta_star.size()) != a.n_params) {
      throw DimensionError("result theta* has " + std::to_string(r.theta_star.size()) + " entries, ansatz has " +
                           std::to_string(a.n_params) + " parameters");
    }

    DenseLimits limits;
    limits.max_qubits = max_qubits;
    if (a.n_qubits > limits.max_qubits) {
      throw ResourceError("verify needs a " + std::to_string(a.n_qubits) + "-qubit statevector, above the cap of " +
                          std::to_string(limits.max_qubits) + "; use desk-scale inputs or raise --max-qubits");
    }
    const double e_theta = energy(a, r.theta_star, ref, obs, limits);
    const double e0_dense = energy(a, Eigen::VectorXd::Zero(r.theta_star.size()), ref, obs, limits);
    const double gap = std::abs(e_theta - r.perturbative_optimum);

    const json config = {{"command", "verify"}, {"reference", ref.to_string()}, {"exact", exact},
                         {"max_qubits", max_qubits}};
    json doc = document_header(
        "qce.verify", config,
        {{"result", input_entry(rf)}, {"hamiltonian", input_entry(hf)}, {"ansatz", input_entry(af)}});
    doc["e0"] = r.e0;
    doc["e0_dense"] = e0_dense;
    doc["energy_at_theta_star"] = e_theta;
    doc["perturbative_optimum"] = r.perturbative_optimum;
    doc["model_gap"] = gap;
    doc["theta_star_norm"] = r.theta_star.norm();
    doc["energy_not_worse_than_e0"] = e_theta <= r.e0;
    if (exact) {
      GroundStateOptions g;
      g.max_qubits = std::min(g.max_qubits, max_qubits);
      const double e_exact = exact_ground_energy(obs, g);
      doc["exact_ground_energy"] = e_exact;
      doc["above_exact_ground_energy"] = e_theta >= e_exact - 1e-9;
    }
    if (!out_path.empty() && out_path != "-") {
      write_file(out_path, dump(doc));
      out << std::setprecision(12) << "E(theta*)       " << e_theta << "\n"
          << "<O>*            " << r.perturbative_optimum << "\n"
          << "|E - <O>*|      " << gap << "\n"
          << "||theta*||      " << r.theta_star.norm() << "\n"
          << "e0              " << r.e0 << "\n";
      if (exact) out << "E_exact         " << doc["exact_ground_energy"].get<double>() << "\n";
    } else {
      out << dump(doc);
    }
    return kSuccess;
  }
};

struct OptimizeCmd {
  std::string hamiltonian;
  std::string ansatz;
  std::string reference;
  std::string result;
  std::string init = "zero";
  std::size_t max_iters = 500;
  double gtol = 1e-6;
  std::size_t max_qubits = DenseLimits{}.max_qubits;
  std::string trace_out;

  int run(std::ostream& out) const {
    const WarmStart w = parse_warm_start(init);
    require_readable(hamiltonian, "hamiltonian");
    require_readable(ansatz, "ansatz");
    if (w != WarmStart::Zero) require_readable(result, "result");
    require_writable(trace_out, "--trace-out");
    if (!(gtol > 0.0)) throw InputError("--gtol must be > 0");

    const InputFile hf = read_file(hamiltonian);
    const InputFile af = read_file(ansatz);
    const Observable obs = load_observable(hf);
    const AnsatzCircuit a = load_ansatz(af);
    if (obs.n_qubits() != a.n_qubits) throw DimensionError("hamiltonian and ansatz widths differ");
    json inputs = {{"hamiltonian", input_entry(hf)}, {"ansatz", input_entry(af)}};

    ExpansionResult r;
    std::string ref_text = reference;
    if (!result.empty()) {
      require_readable(result, "result");
      const InputFile rf = read_file(result);
      const json rdoc = load_json(rf);
      check_same_input(rdoc, "hamiltonian", hf);
      check_same_input(rdoc, "ansatz", af);
      r = read_expansion(rdoc);
      if (ref_text.empty() && rdoc.contains("config")) ref_text = rdoc["config"].value("reference", "");
      inputs["result"] = input_entry(rf);
    }
    const ReferenceState ref = reference_or_zeros(ref_text, a.n_qubits);

    VqeOptimizeOptions opts;
    opts.bfgs.max_iterations = max_iters;
    opts.bfgs.gtol = gtol;
    opts.limits.max_qubits = max_qubits;
    if (a.n_qubits > max_qubits) {
      throw ResourceError("optimize needs a " + std::to_string(a.n_qubits) + "-qubit statevector, above the cap of " +
                          std::to_string(max_qubits) + "; use desk-scale inputs or raise --max-qubits");
    }
    const OptimizationTrace trace = optimize_bfgs(a, obs, ref, w, result.empty() ? nullptr : &r, opts);

    const json config = {{"command", "optimize"}, {"init", init},           {"reference", ref.to_string()},
                         {"max_iters", max_iters}, {"gtol", gtol},          {"max_qubits", max_qubits},
                         {"gradient", "central finite differences"},      {"gradient_step", opts.gradient_step}};
    json doc = document_header("qce.trace", config, inputs);
    write_trace(doc, trace);
    if (!trace_out.empty() && trace_out != "-") {
      write_file(trace_out, dump(doc));
      out << std::setprecision(12) << "init " << init << ": " << trace.iterations << " iterations, final cost "
          << trace.final_cost << (trace.converged ? "" : " (not converged)") << "\n";
    } else {
      out << dump(doc);
    }
    return kSuccess;
  }
};

struct BenchCmd {
  std::string qubits = "4";
  std::string depths = "1,2,4";
  std::size_t terms = 32;
  std::uint64_t seed = 0;
  std::string variant = "complex";
  double dropout_threshold = 0.0;
  std::size_t jobs = 1;
  std::size_t max_qubits = 64;
  std::string out_path;

  int run(std::ostream& out, std::ostream& err) const {
    require_writable(out_path, "--out");
    const auto ns = parse_list(qubits, "qubits");
    const auto ds = parse_list(depths, "depths");
    const AnsatzVariant v = parse_variant(variant);

    std::ostringstream csv;
    csv << "n,depth,K,K_kept,N_o,t_grad,t_hess,t_solve,expectations_evaluated\n";
    std::map<std::size_t, std::vector<std::pair<double, double>>> points;  // n -> (K_kept, t_hess)
    for (std::size_t n : ns) {
      if (n < 2 || n > max_qubits) {
        err << "skipping n=" << n << " (outside 2.." << max_qubits << ")\n";
        continue;
      }
      std::mt19937_64 rng(stream_seed(seed, n));
      std::uniform_real_distribution<double> coeff(-1.0, 1.0);
      Observable obs(n);
      while (obs.size() < terms) {
        PauliString p(n);
        for (std::size_t q = 0; q < n; ++q) p.set_letter(q, static_cast<PauliLetter>(rng() % 4));
        if (!p.is_identity_letters()) obs.add_term(coeff(rng), p);
      }
      for (std::size_t d : ds) {
        if (d < 1) {
          err << "skipping depth 0\n";
          continue;
        }
        const AnsatzCircuit a = generate_hwe_ansatz(n, d, seed, v);
        ExpansionOptions opts;
        opts.dropout_threshold = dropout_threshold;
        opts.jobs = jobs;
        const ExpansionResult r = expand(a, obs, ReferenceState::zeros(n), opts);
        csv << n << ',' << d << ',' << r.counters.n_params << ',' << r.counters.n_kept << ',' << r.counters.n_terms
            << ',' << std::setprecision(6) << r.timings.gradient_s << ',' << r.timings.hessian_s << ','
            << r.timings.solve_s << ',' << r.counters.pauli_expectations_evaluated << '\n';
        if (r.counters.n_kept > 0 && r.timings.hessian_s > 0) {
          points[n].emplace_back(static_cast<double>(r.counters.n_kept), r.timings.hessian_s);
        }
      }
    }
    emit(out_path, csv.str(), out);
    std::ostream& summary = (out_path.empty() || out_path == "-") ? err : out;
    for (const auto& [n, pts] : points) {
      if (pts.size() < 2) continue;
      double mx = 0, my = 0;
      for (const auto& [k, t] : pts) {
        mx += std::log(k);
        my += std::log(t);
      }
      mx /= static_cast<double>(pts.size());
      my /= static_cast<double>(pts.size());
      double sxy = 0, sxx = 0;
      for (const auto& [k, t] : pts) {
        sxy += (std::log(k) - mx) * (std::log(t) - my);
        sxx += (std::log(k) - mx) * (std::log(k) - mx);
      }
      if (sxx > 0) summary << "hessian time exponent vs K_kept at n=" << n << ": " << std::setprecision(3) << sxy / sxx << "\n";
    }
    return kSuccess;
  }
};

void add_gen_flags(CLI::App* app, GenArgs& g, bool qubits_required) {
  auto* q = app->add_option("--qubits", g.qubits, "Number of qubits")->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  if (qubits_required) q->required();
  app->add_option("--depth", g.depth, "Entangler layers per region")->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  app->add_option("--seed", g.seed, "Master seed");
  app->add_option("--variant", g.variant, "complex | real")->check(CLI::IsMember({"complex", "real"}));
}

int exit_code_for(const ExpansionError& e) { return e.stage() == ExpansionStage::Solve ? kSolve : kExpansion; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic Clifford expansion of parameterized circuits"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  GenAnsatzCmd gen;
  auto* gen_app = app.add_subcommand("gen-ansatz", "Generate a hardware-efficient ansatz");
  add_gen_flags(gen_app, gen.gen, true);
  gen_app->add_option("--out", gen.out_path, "Ansatz file to write")->required();

  SelectAnsatzCmd sel;
  auto* sel_app = app.add_subcommand("select-ansatz", "Pick the candidate ansatz with the largest sum |g|");
  add_gen_flags(sel_app, sel.gen, false);
  sel_app->add_option("--count", sel.count, "Number of candidates")->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  sel_app->add_option("--hamiltonian", sel.hamiltonian, "Observable file")->required();
  sel_app->add_option("--reference", sel.reference, "Reference bitstring, qubit 0 first");
  sel_app->add_option("--jobs", sel.jobs, "Worker threads (0 = all cores)");
  sel_app->add_option("--out", sel.out_path, "Ansatz file to write")->required();
  sel_app->add_option("--report", sel.report_path, "Candidate report to write");

  ExpandCmd exp;
  auto* exp_app = app.add_subcommand("expand", "Gradient, Hessian and quadratic-model optimum at theta = 0");
  exp_app->add_option("--hamiltonian", exp.hamiltonian, "Observable file")->required();
  exp_app->add_option("--ansatz", exp.ansatz, "Ansatz file")->required();
  exp_app->add_option("--reference", exp.reference, "Reference bitstring, qubit 0 first");
  exp_app->add_option("--dropout-threshold", exp.dropout_threshold, "Drop parameters with |g_k| below this");
  exp_app->add_option("--rtol", exp.rtol, "Relative eigenvalue cutoff of the pseudo-inverse");
  exp_app->add_flag("--stable-subspace", exp.stable_subspace, "Step only along positive-curvature directions");
  exp_app->add_option("--jobs", exp.jobs, "Worker threads (0 = all cores)");
  exp_app->add_option("--out", exp.out_path, "Result document (default stdout)");

  VerifyCmd ver;
  auto* ver_app = app.add_subcommand("verify", "Evaluate E(theta*) on the statevector simulator");
  ver_app->add_option("--result", ver.result, "Output of expand")->required();
  ver_app->add_option("--hamiltonian", ver.hamiltonian, "Observable file")->required();
  ver_app->add_option("--ansatz", ver.ansatz, "Ansatz file")->required();
  ver_app->add_option("--reference", ver.reference, "Reference bitstring (default: the one in --result)");
  ver_app->add_flag("--exact", ver.exact, "Also compute the exact ground energy");
  ver_app->add_option("--max-qubits", ver.max_qubits, "Statevector qubit cap");
  ver_app->add_option("--out", ver.out_path, "Report document (default stdout)");

  OptimizeCmd opt;
  auto* opt_app = app.add_subcommand("optimize", "BFGS on the statevector energy");
  opt_app->add_option("--hamiltonian", opt.hamiltonian, "Observable file")->required();
  opt_app->add_option("--ansatz", opt.ansatz, "Ansatz file")->required();
  opt_app->add_option("--reference", opt.reference, "Reference bitstring (default: the one in --result, else zeros)");
  opt_app->add_option("--result", opt.result, "Output of expand (needed for pert and pert-hessian)");
  opt_app->add_option("--init", opt.init, "zero | pert | pert-hessian")->check(CLI::IsMember({"zero", "pert", "pert-hessian"}));
  opt_app->add_option("--max-iters", opt.max_iters, "Iteration cap");
  opt_app->add_option("--gtol", opt.gtol, "Gradient infinity-norm tolerance");
  opt_app->add_option("--max-qubits", opt.max_qubits, "Statevector qubit cap");
  opt_app->add_option("--trace-out", opt.trace_out, "Trace document (default stdout)");

  BenchCmd bench;
  auto* bench_app = app.add_subcommand("bench", "Time the expansion stages over a qubit/depth sweep");
  bench_app->add_option("--qubits", bench.qubits, "Comma-separated qubit counts");
  bench_app->add_option("--depths", bench.depths, "Comma-separated depths");
  bench_app->add_option("--terms", bench.terms, "Random observable size N_o")->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));
  bench_app->add_option("--seed", bench.seed, "Seed for ansatzes and observables");
  bench_app->add_option("--variant", bench.variant, "complex | real")->check(CLI::IsMember({"complex", "real"}));
  bench_app->add_option("--dropout-threshold", bench.dropout_threshold, "Dropout threshold");
  bench_app->add_option("--jobs", bench.jobs, "Worker threads (0 = all cores)");
  bench_app->add_option("--max-qubits", bench.max_qubits, "Skip cells above this width");
  bench_app->add_option("--out", bench.out_path, "CSV file (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInput;
  }

  try {
    if (gen_app->parsed()) return gen.run(out);
    if (sel_app->parsed()) return sel.run(out);
    if (exp_app->parsed()) return exp.run(out);
    if (ver_app->parsed()) return ver.run(out);
    if (opt_app->parsed()) return opt.run(out);
    if (bench_app->parsed()) return bench.run(out, err);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const ExpansionError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kGeneric;
  }
  return kGeneric;
}

}  // namespace qce::cli
