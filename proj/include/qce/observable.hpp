#pragma once

#include <string>
#include <unordered_map>
#include <string_view>
#include <vector>

#include "qce/pauli.hpp"
#include "qce/tableau.hpp"

namespace qce {

struct ObservableTerm {
  double coefficient = 0.0;
  PauliString pauli;  // phase +1

  friend bool operator==(const ObservableTerm&, const ObservableTerm&) = default;
};

/// O = sum_i c_i P_i with real c_i and distinct Pauli letters P_i.
class Observable {
 public:
  Observable() = default;
  explicit Observable(std::size_t n_qubits) : n_qubits_(n_qubits) {}

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<ObservableTerm>& terms() const { return terms_; }

  /// Adds c * P; merges into an existing term with the same letters. The phase of
  /// `pauli` must be +1 or -1 (a -1 phase is folded into the coefficient).
  void add_term(double coefficient, const PauliString& pauli);

  /// Drops terms with |c| < threshold.
  void prune(double threshold);

  friend bool operator==(const Observable& a, const Observable& b) {
    return a.n_qubits_ == b.n_qubits_ && a.terms_ == b.terms_;
  }

 private:
  void reindex();

  std::size_t n_qubits_ = 0;
  std::vector<ObservableTerm> terms_;
  std::unordered_map<PauliString, std::size_t, PauliLettersHash, PauliLettersEqual> index_;
};

struct ObservableParseOptions {
  double prune_threshold = 0.0;
};

/// Text format:
///
///   # comment
///   qubits N
///   <coefficient> <pauli tokens...>
///
/// `#` starts a comment anywhere on a line. An empty token list is the identity.
Observable parse_observable(std::string_view document, const ObservableParseOptions& options = {});

/// Canonical text form: "qubits N" then one line per term, coefficients in
/// shortest round-trip decimal form.
std::string serialize_observable(const Observable& obs);

/// sum_i c_i <psi|P_i|psi> with compensated summation.
double expectation_at_clifford_point(const Observable& obs, const StabilizerTableau& state);

}  // namespace qce
