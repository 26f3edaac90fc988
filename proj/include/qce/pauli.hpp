#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qce {

/// Raised when two operands disagree on qubit count or an index falls outside the register.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for malformed textual input (Pauli tokens, observable lines, ansatz documents).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char to_char(PauliLetter letter);

/// An element of {1, i, -1, -i} stored as the exponent k of i^k.
struct Phase {
  std::uint8_t exponent = 0;

  constexpr Phase() = default;
  constexpr explicit Phase(int k) : exponent(static_cast<std::uint8_t>(((k % 4) + 4) % 4)) {}

  constexpr Phase operator*(Phase other) const { return Phase(exponent + other.exponent); }
  constexpr Phase conj() const { return Phase(4 - exponent); }
  constexpr bool is_real() const { return (exponent & 1u) == 0; }
  std::complex<double> value() const;

  friend constexpr bool operator==(Phase, Phase) = default;
};

/// Phase-exact n-qubit Pauli operator i^k * (sigma_0 (x) sigma_1 (x) ...).
///
/// Qubit j is stored in bit (j % 64) of word (j / 64) of the x and z vectors.
/// The per-qubit letter is (x,z) = (0,0) I, (1,0) X, (0,1) Z, (1,1) Y, where Y is
/// the Hermitian Pauli Y (not XZ). Bits past n_qubits are always zero.
class PauliString {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  PauliString() = default;
  explicit PauliString(std::size_t n_qubits);

  static PauliString identity(std::size_t n_qubits) { return PauliString(n_qubits); }
  static PauliString single(std::size_t n_qubits, std::size_t qubit, PauliLetter letter);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t n_words() const { return x_.size(); }

  Phase phase() const { return phase_; }
  void set_phase(Phase p) { phase_ = p; }
  bool is_hermitian() const { return phase_.is_real(); }

  bool x(std::size_t q) const { return (x_[q / kWordBits] >> (q % kWordBits)) & 1u; }
  bool z(std::size_t q) const { return (z_[q / kWordBits] >> (q % kWordBits)) & 1u; }
  void set_x(std::size_t q, bool v);
  void set_z(std::size_t q, bool v);

  PauliLetter letter(std::size_t q) const {
    return static_cast<PauliLetter>(static_cast<unsigned>(x(q)) | (static_cast<unsigned>(z(q)) << 1));
  }
  void set_letter(std::size_t q, PauliLetter letter);

  const std::vector<Word>& x_words() const { return x_; }
  const std::vector<Word>& z_words() const { return z_; }

  /// Number of non-identity sites.
  std::size_t weight() const;
  bool is_identity_letters() const;

  /// In-place right multiplication: *this = (*this) * rhs, phase exact.
  PauliString& operator*=(const PauliString& rhs);

  /// Same letters, phase forced to +1.
  PauliString unsigned_part() const;

  /// Equality of letters only, ignoring phase.
  bool same_letters(const PauliString& other) const { return x_ == other.x_ && z_ == other.z_; }

  std::size_t letters_hash() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<Word> x_;
  std::vector<Word> z_;
  Phase phase_;
};

/// Exact operator product a * b.
PauliString pauli_mul(const PauliString& a, const PauliString& b);

/// True iff ab == ba (even symplectic product).
bool commutes(const PauliString& a, const PauliString& b);

/// Parses whitespace separated tokens such as "X0 Z3 Y7" on n_qubits qubits.
/// The empty string is the identity. The result has phase +1.
PauliString parse_pauli(std::string_view text, std::size_t n_qubits);

/// Inverse of parse_pauli for the letter part; phase is not rendered.
std::string format_pauli(const PauliString& p);

/// Debug form with the phase prefix, e.g. "-i*X0 Y2" or "+I".
std::string to_string(const PauliString& p);

struct PauliLettersHash {
  std::size_t operator()(const PauliString& p) const { return p.letters_hash(); }
};

struct PauliLettersEqual {
  bool operator()(const PauliString& a, const PauliString& b) const { return a.same_letters(b); }
};

}  // namespace qce
