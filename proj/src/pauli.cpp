#include "qce/pauli.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace qce {

namespace {

void require_same_width(const PauliString& a, const PauliString& b, const char* what) {
  if (a.n_qubits() != b.n_qubits()) {
    throw DimensionError(std::string(what) + ": qubit count mismatch (" + std::to_string(a.n_qubits()) + " vs " +
                         std::to_string(b.n_qubits()) + ")");
  }
}

}  // namespace

char to_char(PauliLetter letter) {
  switch (letter) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Z: return 'Z';
    case PauliLetter::Y: return 'Y';
  }
  return '?';
}

std::complex<double> Phase::value() const {
  switch (exponent) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString::PauliString(std::size_t n_qubits)
    : n_qubits_(n_qubits),
      x_((n_qubits + kWordBits - 1) / kWordBits, 0),
      z_((n_qubits + kWordBits - 1) / kWordBits, 0) {}

PauliString PauliString::single(std::size_t n_qubits, std::size_t qubit, PauliLetter letter) {
  PauliString p(n_qubits);
  p.set_letter(qubit, letter);
  return p;
}

void PauliString::set_x(std::size_t q, bool v) {
  const Word mask = Word{1} << (q % kWordBits);
  if (v) {
    x_[q / kWordBits] |= mask;
  } else {
    x_[q / kWordBits] &= ~mask;
  }
}

void PauliString::set_z(std::size_t q, bool v) {
  const Word mask = Word{1} << (q % kWordBits);
  if (v) {
    z_[q / kWordBits] |= mask;
  } else {
    z_[q / kWordBits] &= ~mask;
  }
}

void PauliString::set_letter(std::size_t q, PauliLetter letter) {
  if (q >= n_qubits_) {
    throw DimensionError("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_qubits_) +
                         " qubits");
  }
  const auto bits = static_cast<unsigned>(letter);
  set_x(q, bits & 1u);
  set_z(q, bits & 2u);
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    w += static_cast<std::size_t>(std::popcount(x_[i] | z_[i]));
  }
  return w;
}

bool PauliString::is_identity_letters() const {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if ((x_[i] | z_[i]) != 0) return false;
  }
  return true;
}

PauliString& PauliString::operator*=(const PauliString& rhs) {
  require_same_width(*this, rhs, "pauli_mul");
  // Per site the product of two distinct non-identity letters carries +i when the
  // pair is cyclic (XY, YZ, ZX) and -i otherwise. Count anticommuting sites and,
  // among them, the anti-cyclic ones; exponent = #anti + 2 * #anticyclic (mod 4).
  unsigned count = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    const Word x1 = x_[w];
    const Word z1 = z_[w];
    const Word x2 = rhs.x_[w];
    const Word z2 = rhs.z_[w];
    const Word x1z2 = x1 & z2;
    const Word anti = x1z2 ^ (z1 & x2);
    const Word xn = x1 ^ x2;
    const Word zn = z1 ^ z2;
    const Word anticyclic = (xn ^ zn ^ x1z2) & anti;
    count += static_cast<unsigned>(std::popcount(anti)) + 2u * static_cast<unsigned>(std::popcount(anticyclic));
    x_[w] = xn;
    z_[w] = zn;
  }
  phase_ = phase_ * rhs.phase_ * Phase(static_cast<int>(count & 3u));
  return *this;
}

PauliString PauliString::unsigned_part() const {
  PauliString p = *this;
  p.phase_ = Phase{};
  return p;
}

std::size_t PauliString::letters_hash() const {
  // FNV-1a over the packed words.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](Word w) {
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  for (Word w : x_) mix(w);
  for (Word w : z_) mix(w);
  return static_cast<std::size_t>(h);
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  PauliString out = a;
  out *= b;
  return out;
}

bool commutes(const PauliString& a, const PauliString& b) {
  require_same_width(a, b, "commutes");
  const auto& ax = a.x_words();
  const auto& az = a.z_words();
  const auto& bx = b.x_words();
  const auto& bz = b.z_words();
  PauliString::Word acc = 0;
  for (std::size_t w = 0; w < ax.size(); ++w) {
    acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
  }
  return (std::popcount(acc) & 1) == 0;
}

PauliString parse_pauli(std::string_view text, std::size_t n_qubits) {
  PauliString p(n_qubits);
  std::vector<bool> seen(n_qubits, false);
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;

    PauliLetter letter;
    switch (token.front()) {
      case 'I': letter = PauliLetter::I; break;
      case 'X': letter = PauliLetter::X; break;
      case 'Y': letter = PauliLetter::Y; break;
      case 'Z': letter = PauliLetter::Z; break;
      default: throw ParseError("unknown Pauli letter in token '" + std::string(token) + "'");
    }
    const std::string_view digits = token.substr(1);
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw ParseError("malformed qubit index in token '" + std::string(token) + "'");
    }
    if (index >= n_qubits) {
      throw DimensionError("qubit index " + std::to_string(index) + " out of range for " + std::to_string(n_qubits) +
                           " qubits");
    }
    if (seen[index]) {
      throw ParseError("duplicate qubit index " + std::to_string(index) + " in Pauli string");
    }
    seen[index] = true;
    p.set_letter(index, letter);
  }
  return p;
}

std::string format_pauli(const PauliString& p) {
  std::string out;
  for (std::size_t q = 0; q < p.n_qubits(); ++q) {
    const PauliLetter l = p.letter(q);
    if (l == PauliLetter::I) continue;
    if (!out.empty()) out.push_back(' ');
    out.push_back(to_char(l));
    out += std::to_string(q);
  }
  return out;
}

std::string to_string(const PauliString& p) {
  static constexpr const char* kPrefix[] = {"+", "+i*", "-", "-i*"};
  const std::string letters = format_pauli(p);
  return std::string(kPrefix[p.phase().exponent]) + (letters.empty() ? "I" : letters);
}

}  // namespace qce
