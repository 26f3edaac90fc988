#include "qce/expansion.hpp"

#include <chrono>
#include <cmath>

#include "qce/kahan.hpp"
#include "qce/parallel.hpp"

namespace qce {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_width(const Observable& obs, const CliffordPointEvaluator& eval, const ConjugatedGenerators& gens) {
  if (obs.n_qubits() != eval.n_qubits()) {
    throw DimensionError("observable has " + std::to_string(obs.n_qubits()) + " qubits, state has " +
                         std::to_string(eval.n_qubits()));
  }
  for (const auto& p : gens.generators) {
    if (p.n_qubits() != eval.n_qubits()) throw DimensionError("conjugated generator width differs from state width");
  }
}

/// Term indices of O that anticommute with P'_k; only these contribute.
std::vector<std::uint32_t> anticommuting_terms(const Observable& obs, const PauliString& generator) {
  std::vector<std::uint32_t> out;
  const auto& terms = obs.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!commutes(terms[i].pauli, generator)) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

}  // namespace

// --- HeisenbergFrame ------------------------------------------------------------

HeisenbergFrame::HeisenbergFrame(std::size_t n_qubits) {
  x_images_.reserve(n_qubits);
  z_images_.reserve(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) {
    x_images_.push_back(PauliString::single(n_qubits, q, PauliLetter::X));
    z_images_.push_back(PauliString::single(n_qubits, q, PauliLetter::Z));
  }
}

PauliString HeisenbergFrame::image(std::size_t wire, PauliLetter letter) const {
  switch (letter) {
    case PauliLetter::I: return PauliString::identity(n_qubits());
    case PauliLetter::X: return x_images_[wire];
    case PauliLetter::Z: return z_images_[wire];
    case PauliLetter::Y: {
      // Y = i X Z
      PauliString out = x_images_[wire];
      out *= z_images_[wire];
      out.set_phase(out.phase() * Phase(1));
      return out;
    }
  }
  return PauliString::identity(n_qubits());
}

PauliString HeisenbergFrame::image(const PauliString& p) const {
  if (p.n_qubits() != n_qubits()) throw DimensionError("HeisenbergFrame::image: width mismatch");
  PauliString out = PauliString::identity(n_qubits());
  out.set_phase(p.phase());
  for (std::size_t q = 0; q < n_qubits(); ++q) {
    const PauliLetter l = p.letter(q);
    if (l != PauliLetter::I) out *= image(q, l);
  }
  return out;
}

void HeisenbergFrame::prepend(const CliffordGate& gate) {
  validate_gate(gate, n_qubits());
  // Conjugate each affected single-qubit Pauli by the gate on a local register,
  // then express the result through the current images.
  const std::size_t arity = gate.arity();
  CliffordGate local = gate;
  local.wires = {0, 1};
  const std::size_t local_width = arity;

  auto lift = [&](std::size_t local_qubit, PauliLetter letter) {
    PauliString b = PauliString::single(local_width, local_qubit, letter);
    conjugate_in_place(b, local);
    PauliString out = PauliString::identity(n_qubits());
    out.set_phase(b.phase());
    for (std::size_t l = 0; l < local_width; ++l) {
      const PauliLetter bl = b.letter(l);
      if (bl != PauliLetter::I) out *= image(gate.wires[l], bl);
    }
    return out;
  };

  std::array<PauliString, 2> new_x;
  std::array<PauliString, 2> new_z;
  for (std::size_t l = 0; l < arity; ++l) {
    new_x[l] = lift(l, PauliLetter::X);
    new_z[l] = lift(l, PauliLetter::Z);
  }
  for (std::size_t l = 0; l < arity; ++l) {
    x_images_[gate.wires[l]] = std::move(new_x[l]);
    z_images_[gate.wires[l]] = std::move(new_z[l]);
  }
}

ConjugatedGenerators conjugate_generators(const AnsatzCircuit& ansatz) {
  ansatz.validate();
  ConjugatedGenerators out;
  out.generators.resize(ansatz.n_params);
  out.positions.resize(ansatz.n_params);
  HeisenbergFrame frame(ansatz.n_qubits);
  for (std::size_t i = ansatz.elements.size(); i-- > 0;) {
    const auto& e = ansatz.elements[i];
    if (const auto* g = std::get_if<CliffordGate>(&e)) {
      frame.prepend(*g);
    } else {
      const auto& r = std::get<RotationGate>(e);
      out.generators[r.param] = frame.image(r.wire, r.letter());
      out.positions[r.param] = i;
    }
  }
  return out;
}

// --- CliffordPointEvaluator -------------------------------------------------------

CliffordPointEvaluator::CliffordPointEvaluator(const StabilizerTableau& state, std::size_t cache_capacity)
    : state_(state), per_shard_capacity_((cache_capacity + kShards - 1) / kShards) {
  if (cache_capacity > 0) shards_ = std::make_unique<std::array<Shard, kShards>>();
}

PauliExpectation CliffordPointEvaluator::operator()(const PauliString& q) const {
  queries_.fetch_add(1, std::memory_order_relaxed);
  if (!shards_) return state_.expectation(q);

  const std::size_t h = q.letters_hash();
  Shard& shard = (*shards_)[(h >> 7) % kShards];
  {
    std::lock_guard lock(shard.mutex);
    if (auto it = shard.map.find(q); it != shard.map.end()) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      PauliExpectation e = it->second;
      e.phase = e.phase * q.phase();
      return e;
    }
  }
  const PauliString key = q.unsigned_part();
  const PauliExpectation base = state_.expectation(key);
  {
    std::lock_guard lock(shard.mutex);
    if (shard.map.size() < per_shard_capacity_) shard.map.emplace(key, base);
  }
  PauliExpectation e = base;
  e.phase = e.phase * q.phase();
  return e;
}

// --- Gradient / Hessian ------------------------------------------------------------

Eigen::VectorXd compute_gradient(const Observable& obs, const CliffordPointEvaluator& eval,
                                 const ConjugatedGenerators& gens, std::size_t jobs) {
  require_width(obs, eval, gens);
  const auto& terms = obs.terms();
  Eigen::VectorXd g(static_cast<Eigen::Index>(gens.size()));
  parallel_for(gens.size(), jobs, [&](std::size_t k) {
    KahanSum sum;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      // Commuting terms give a Hermitian product with real expectation.
      if (commutes(terms[i].pauli, gens.generators[k])) continue;
      const PauliExpectation e = eval(pauli_mul(terms[i].pauli, gens.generators[k]));
      sum += terms[i].coefficient * static_cast<double>(e.imag_sign());
    }
    g[static_cast<Eigen::Index>(k)] = -2.0 * sum.value();
  });
  return g;
}

Eigen::VectorXd compute_gradient(const Observable& obs, const StabilizerTableau& state,
                                 const ConjugatedGenerators& gens) {
  const CliffordPointEvaluator eval(state, 0);
  return compute_gradient(obs, eval, gens, 1);
}

std::size_t DropoutMask::kept() const {
  std::size_t n = 0;
  for (auto k : keep) n += k != 0;
  return n;
}

std::vector<std::size_t> DropoutMask::kept_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] != 0) out.push_back(k);
  }
  return out;
}

DropoutMask apply_dropout(const Eigen::VectorXd& gradient, double threshold) {
  if (!(threshold >= 0.0)) throw std::invalid_argument("dropout threshold must be >= 0");
  DropoutMask mask;
  mask.keep.resize(static_cast<std::size_t>(gradient.size()));
  for (Eigen::Index k = 0; k < gradient.size(); ++k) {
    mask.keep[static_cast<std::size_t>(k)] = std::abs(gradient[k]) >= threshold ? 1 : 0;
  }
  return mask;
}

Eigen::MatrixXd compute_hessian(const Observable& obs, const CliffordPointEvaluator& eval,
                                const ConjugatedGenerators& gens, const DropoutMask& mask, std::size_t jobs) {
  require_width(obs, eval, gens);
  if (mask.size() != gens.size()) throw DimensionError("dropout mask length differs from parameter count");
  const auto kept = mask.kept_indices();
  const auto nk = kept.size();
  const auto& terms = obs.terms();

  std::vector<std::vector<std::uint32_t>> anti(nk);
  parallel_for(nk, jobs, [&](std::size_t a) { anti[a] = anticommuting_terms(obs, gens.generators[kept[a]]); });

  Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk));
  parallel_for(nk, jobs, [&](std::size_t a) {
    const std::size_t ka = kept[a];
    for (std::size_t b = a; b < nk; ++b) {
      const std::size_t kb = kept[b];
      // `later` is the generator applied later in the circuit (adjacent to O).
      const bool a_first = gens.positions[ka] <= gens.positions[kb];
      const std::size_t earlier = a_first ? ka : kb;
      const std::size_t later = a_first ? kb : ka;
      const PauliString product = pauli_mul(gens.generators[later], gens.generators[earlier]);
      const auto& contributing = anti[a_first ? b : a];

      KahanSum sum;
      for (const std::uint32_t i : contributing) {
        const PauliExpectation e = eval(pauli_mul(terms[i].pauli, product));
        sum += terms[i].coefficient * static_cast<double>(e.real_sign());
      }
      const double value = -4.0 * sum.value();
      hess(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = value;
      hess(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = value;
    }
  });
  return hess;
}

Eigen::MatrixXd compute_hessian(const Observable& obs, const StabilizerTableau& state,
                                const ConjugatedGenerators& gens, const DropoutMask& mask) {
  const CliffordPointEvaluator eval(state, 0);
  return compute_hessian(obs, eval, gens, mask, 1);
}

// --- Quadratic model ---------------------------------------------------------------

namespace {

Eigen::VectorXd gather(const Eigen::VectorXd& full, const std::vector<std::size_t>& kept) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t a = 0; a < kept.size(); ++a) out[static_cast<Eigen::Index>(a)] = full[static_cast<Eigen::Index>(kept[a])];
  return out;
}

}  // namespace

double quadratic_model(double e0, const Eigen::VectorXd& gradient, const Eigen::MatrixXd& hessian_kept,
                       const DropoutMask& mask, const Eigen::VectorXd& theta) {
  const auto kept = mask.kept_indices();
  const Eigen::VectorXd g = gather(gradient, kept);
  const Eigen::VectorXd t = gather(theta, kept);
  return e0 + g.dot(t) + 0.5 * t.dot(hessian_kept * t);
}

QuadraticSolution solve_quadratic(double e0, const Eigen::VectorXd& gradient, const Eigen::MatrixXd& hessian_kept,
                                  const DropoutMask& mask, const SolveOptions& options) {
  if (mask.size() != static_cast<std::size_t>(gradient.size())) {
    throw ExpansionError(ExpansionStage::Solve, "dropout mask length differs from gradient length");
  }
  const auto kept = mask.kept_indices();
  const auto nk = static_cast<Eigen::Index>(kept.size());
  if (hessian_kept.rows() != nk || hessian_kept.cols() != nk) {
    throw ExpansionError(ExpansionStage::Solve, "Hessian shape does not match the kept parameter count");
  }
  if (!std::isfinite(e0) || !gradient.allFinite() || !hessian_kept.allFinite()) {
    throw ExpansionError(ExpansionStage::Solve, "non-finite input to the quadratic solve");
  }

  QuadraticSolution out;
  out.theta_star = Eigen::VectorXd::Zero(gradient.size());
  out.perturbative_optimum = e0;
  if (nk == 0) return out;

  const Eigen::VectorXd g = gather(gradient, kept);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hessian_kept);
  if (eig.info() != Eigen::Success) {
    throw ExpansionError(ExpansionStage::Solve, "symmetric eigendecomposition did not converge");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const double cutoff = options.rtol * lambda.cwiseAbs().maxCoeff();

  const Eigen::VectorXd coords = v.transpose() * g;
  Eigen::VectorXd step = Eigen::VectorXd::Zero(nk);
  for (Eigen::Index j = 0; j < nk; ++j) {
    const double l = lambda[j];
    const bool retained = options.stable_subspace ? (l > cutoff) : (std::abs(l) > cutoff);
    if (!retained || l == 0.0) continue;
    step[j] = -coords[j] / l;
    ++out.rank;
  }
  const Eigen::VectorXd theta_kept = v * step;
  for (Eigen::Index a = 0; a < nk; ++a) out.theta_star[static_cast<Eigen::Index>(kept[static_cast<std::size_t>(a)])] = theta_kept[a];
  out.perturbative_optimum = e0 + g.dot(theta_kept) + 0.5 * theta_kept.dot(hessian_kept * theta_kept);
  return out;
}

// --- Pipeline ------------------------------------------------------------------------

std::string_view stage_name(ExpansionStage stage) {
  switch (stage) {
    case ExpansionStage::Setup: return "setup";
    case ExpansionStage::Conjugation: return "conjugation";
    case ExpansionStage::Gradient: return "gradient";
    case ExpansionStage::Hessian: return "hessian";
    case ExpansionStage::Solve: return "solve";
  }
  return "?";
}

ExpansionResult expand(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                       const ExpansionOptions& options) {
  auto staged = [](ExpansionStage stage, auto&& fn) {
    try {
      return fn();
    } catch (const ExpansionError&) {
      throw;
    } catch (const std::exception& e) {
      throw ExpansionError(stage, e.what());
    }
  };

  ExpansionResult r;
  r.dropout_threshold = options.dropout_threshold;
  r.solve_options = options.solve;

  const StabilizerTableau state = staged(ExpansionStage::Setup, [&] {
    ansatz.validate();
    if (obs.n_qubits() != ansatz.n_qubits) {
      throw DimensionError("observable has " + std::to_string(obs.n_qubits()) + " qubits, ansatz has " +
                           std::to_string(ansatz.n_qubits));
    }
    return clifford_point_state(ansatz, reference);
  });
  const CliffordPointEvaluator eval(state, options.cache_capacity);

  auto t0 = Clock::now();
  const ConjugatedGenerators gens = staged(ExpansionStage::Conjugation, [&] { return conjugate_generators(ansatz); });
  r.timings.conjugation_s = seconds_since(t0);

  t0 = Clock::now();
  staged(ExpansionStage::Gradient, [&] {
    r.e0 = expectation_at_clifford_point(obs, state);
    r.gradient = compute_gradient(obs, eval, gens, options.jobs);
    r.dropout_mask = apply_dropout(r.gradient, options.dropout_threshold);
    return 0;
  });
  r.timings.gradient_s = seconds_since(t0);
  r.kept_indices = r.dropout_mask.kept_indices();

  t0 = Clock::now();
  r.hessian = staged(ExpansionStage::Hessian,
                     [&] { return compute_hessian(obs, eval, gens, r.dropout_mask, options.jobs); });
  r.timings.hessian_s = seconds_since(t0);

  t0 = Clock::now();
  const QuadraticSolution sol = staged(ExpansionStage::Solve, [&] {
    return solve_quadratic(r.e0, r.gradient, r.hessian, r.dropout_mask, options.solve);
  });
  r.timings.solve_s = seconds_since(t0);
  r.theta_star = sol.theta_star;
  r.perturbative_optimum = sol.perturbative_optimum;
  r.rank = sol.rank;

  r.counters.n_qubits = ansatz.n_qubits;
  r.counters.n_params = ansatz.n_params;
  r.counters.n_kept = r.kept_indices.size();
  r.counters.n_terms = obs.size();
  r.counters.pauli_expectations_evaluated = eval.queries();
  r.counters.cache_hits = eval.cache_hits();
  r.counters.all_dropped = r.kept_indices.empty();
  return r;
}

}  // namespace qce
