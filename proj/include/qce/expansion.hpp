#pragma once

#include <Eigen/Dense>
#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qce/circuit.hpp"
#include "qce/observable.hpp"
#include "qce/pauli.hpp"
#include "qce/tableau.hpp"

namespace qce {

// --- Conjugated generators ----------------------------------------------------

/// Images V X_j V^dagger and V Z_j V^dagger of the single-qubit Paulis under a
/// Clifford V, grown by prepending gates (V <- V g) in a right-to-left sweep.
class HeisenbergFrame {
 public:
  explicit HeisenbergFrame(std::size_t n_qubits);

  std::size_t n_qubits() const { return x_images_.size(); }

  void prepend(const CliffordGate& gate);

  /// V P V^dagger for a single-qubit Pauli on `wire`.
  PauliString image(std::size_t wire, PauliLetter letter) const;
  /// V p V^dagger for an arbitrary Pauli string.
  PauliString image(const PauliString& p) const;

 private:
  std::vector<PauliString> x_images_;
  std::vector<PauliString> z_images_;
};

/// P'_k for every parameter: the rotation generator pushed through everything
/// applied after it (rotations at zero are the identity).
struct ConjugatedGenerators {
  std::vector<PauliString> generators;  // indexed by param id
  std::vector<std::size_t> positions;   // element index of each param's rotation

  std::size_t size() const { return generators.size(); }
};

ConjugatedGenerators conjugate_generators(const AnsatzCircuit& ansatz);

// --- Stabilizer expectation service -------------------------------------------

/// Thread-safe <psi|Q|psi> on a frozen tableau, memoized by Q's letters.
class CliffordPointEvaluator {
 public:
  /// cache_capacity = 0 disables memoization.
  explicit CliffordPointEvaluator(const StabilizerTableau& state, std::size_t cache_capacity = 1u << 20);

  const StabilizerTableau& state() const { return state_; }
  std::size_t n_qubits() const { return state_.n_qubits(); }

  PauliExpectation operator()(const PauliString& q) const;

  std::uint64_t queries() const { return queries_.load(std::memory_order_relaxed); }
  std::uint64_t cache_hits() const { return hits_.load(std::memory_order_relaxed); }

 private:
  static constexpr std::size_t kShards = 64;
  struct Shard {
    std::mutex mutex;
    std::unordered_map<PauliString, PauliExpectation, PauliLettersHash, PauliLettersEqual> map;
  };

  const StabilizerTableau& state_;
  std::size_t per_shard_capacity_;
  std::unique_ptr<std::array<Shard, kShards>> shards_;
  mutable std::atomic<std::uint64_t> queries_{0};
  mutable std::atomic<std::uint64_t> hits_{0};
};

// --- Derivatives at the Clifford point -------------------------------------------

/// g_k = 2 Re[i <psi|O P'_k|psi>] = -2 Im <psi|O P'_k|psi>.
Eigen::VectorXd compute_gradient(const Observable& obs, const CliffordPointEvaluator& eval,
                                 const ConjugatedGenerators& gens, std::size_t jobs = 1);
Eigen::VectorXd compute_gradient(const Observable& obs, const StabilizerTableau& state,
                                 const ConjugatedGenerators& gens);

/// Keep flags per parameter.
struct DropoutMask {
  std::vector<std::uint8_t> keep;

  static DropoutMask all(std::size_t k) { return {std::vector<std::uint8_t>(k, 1)}; }
  std::size_t size() const { return keep.size(); }
  std::size_t kept() const;
  std::size_t dropped() const { return size() - kept(); }
  std::vector<std::size_t> kept_indices() const;
};

/// keep_k = |g_k| >= threshold.
DropoutMask apply_dropout(const Eigen::VectorXd& gradient, double threshold);

/// Hessian on the kept parameters, ordered by param id (kept_indices()).
///
/// For k applied before m:
///   A_km = 2 Re<P'_k O P'_m> - 2 Re<O P'_m P'_k>
///   A_kk = 2 <P'_k O P'_k> - 2 <O>
/// Each term of O that commutes with P'_m contributes zero, and for the rest the
/// two expectations are related by Hermitian conjugation, so only
/// -4 c_i Re<P_i P'_m P'_k> is evaluated.
Eigen::MatrixXd compute_hessian(const Observable& obs, const CliffordPointEvaluator& eval,
                                const ConjugatedGenerators& gens, const DropoutMask& mask, std::size_t jobs = 1);
Eigen::MatrixXd compute_hessian(const Observable& obs, const StabilizerTableau& state,
                                const ConjugatedGenerators& gens, const DropoutMask& mask);

// --- Quadratic model -----------------------------------------------------------

struct SolveOptions {
  double rtol = 1e-10;
  /// Restrict theta* to eigendirections of positive curvature (where the model
  /// is bounded below); off reproduces the plain pseudo-inverse step.
  bool stable_subspace = false;
};

struct QuadraticSolution {
  Eigen::VectorXd theta_star;  // full length K, zeros at dropped parameters
  double perturbative_optimum = 0.0;
  std::size_t rank = 0;
};

/// theta* = -A^+ g on the kept parameters, and the model value there.
/// `hessian_kept` is indexed like mask.kept_indices().
QuadraticSolution solve_quadratic(double e0, const Eigen::VectorXd& gradient, const Eigen::MatrixXd& hessian_kept,
                                  const DropoutMask& mask, const SolveOptions& options = {});

/// e0 + g.theta + theta.A.theta / 2 restricted to the kept parameters.
double quadratic_model(double e0, const Eigen::VectorXd& gradient, const Eigen::MatrixXd& hessian_kept,
                       const DropoutMask& mask, const Eigen::VectorXd& theta);

// --- Pipeline --------------------------------------------------------------------

enum class ExpansionStage { Setup, Conjugation, Gradient, Hessian, Solve };
std::string_view stage_name(ExpansionStage stage);

class ExpansionError : public std::runtime_error {
 public:
  ExpansionError(ExpansionStage stage, const std::string& what)
      : std::runtime_error(std::string(stage_name(stage)) + ": " + what), stage_(stage) {}
  ExpansionStage stage() const { return stage_; }

 private:
  ExpansionStage stage_;
};

struct ExpansionOptions {
  double dropout_threshold = 1e-6;
  SolveOptions solve;
  std::size_t jobs = 0;
  std::size_t cache_capacity = 1u << 20;
};

struct ExpansionTimings {
  double conjugation_s = 0.0;
  double gradient_s = 0.0;
  double hessian_s = 0.0;
  double solve_s = 0.0;
};

struct ExpansionCounters {
  std::size_t n_qubits = 0;
  std::size_t n_params = 0;
  std::size_t n_kept = 0;
  std::size_t n_terms = 0;
  std::uint64_t pauli_expectations_evaluated = 0;
  std::uint64_t cache_hits = 0;
  /// Set when every parameter was dropped.
  bool all_dropped = false;
};

struct ExpansionResult {
  double e0 = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;  // kept x kept, ordered by kept_indices
  std::vector<std::size_t> kept_indices;
  DropoutMask dropout_mask;
  double dropout_threshold = 0.0;
  Eigen::VectorXd theta_star;  // length K
  double perturbative_optimum = 0.0;
  std::size_t rank = 0;
  SolveOptions solve_options;
  ExpansionTimings timings;
  ExpansionCounters counters;
};

ExpansionResult expand(const AnsatzCircuit& ansatz, const Observable& obs, const ReferenceState& reference,
                       const ExpansionOptions& options = {});

}  // namespace qce
