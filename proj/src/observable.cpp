#include "qce/observable.hpp"

#include <charconv>
#include <cmath>

#include "qce/kahan.hpp"

namespace qce {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

void Observable::add_term(double coefficient, const PauliString& pauli) {
  if (pauli.n_qubits() != n_qubits_) {
    throw DimensionError("observable term has " + std::to_string(pauli.n_qubits()) + " qubits, expected " +
                         std::to_string(n_qubits_));
  }
  if (!pauli.is_hermitian()) throw std::invalid_argument("observable term must be Hermitian (phase +-1)");
  if (pauli.phase() == Phase(2)) coefficient = -coefficient;
  if (auto it = index_.find(pauli); it != index_.end()) {
    terms_[it->second].coefficient += coefficient;
    return;
  }
  index_.emplace(pauli.unsigned_part(), terms_.size());
  terms_.push_back({coefficient, pauli.unsigned_part()});
}

void Observable::prune(double threshold) {
  std::erase_if(terms_, [threshold](const ObservableTerm& t) { return std::abs(t.coefficient) < threshold; });
  reindex();
}

void Observable::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i].pauli, i);
}

Observable parse_observable(std::string_view document, const ObservableParseOptions& options) {
  Observable obs;
  bool have_header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    const auto nl = document.find('\n', pos);
    std::string_view line = document.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? document.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!have_header) {
      constexpr std::string_view kHeader = "qubits";
      if (line.substr(0, kHeader.size()) != kHeader) {
        throw ParseError(line_prefix(line_no) + "expected 'qubits N' header");
      }
      const std::string_view num = trim(line.substr(kHeader.size()));
      std::size_t n = 0;
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
      if (num.empty() || ec != std::errc{} || ptr != num.data() + num.size() || n == 0) {
        throw ParseError(line_prefix(line_no) + "malformed qubit count '" + std::string(num) + "'");
      }
      obs = Observable(n);
      have_header = true;
      continue;
    }

    const auto split = line.find_first_of(" \t");
    std::string_view coeff_text = line.substr(0, split);
    if (coeff_text.size() > 1 && coeff_text.front() == '+') coeff_text.remove_prefix(1);
    const std::string_view pauli_text = split == std::string_view::npos ? std::string_view{} : line.substr(split);
    double coeff = 0.0;
    auto [ptr, ec] = std::from_chars(coeff_text.data(), coeff_text.data() + coeff_text.size(), coeff);
    if (ec != std::errc{} || ptr != coeff_text.data() + coeff_text.size()) {
      throw ParseError(line_prefix(line_no) + "coefficient '" + std::string(coeff_text) +
                       "' is not a real decimal number");
    }
    if (!std::isfinite(coeff)) throw ParseError(line_prefix(line_no) + "coefficient is not finite");
    PauliString p;
    try {
      p = parse_pauli(pauli_text, obs.n_qubits());
    } catch (const DimensionError& e) {
      throw DimensionError(line_prefix(line_no) + e.what());
    } catch (const ParseError& e) {
      throw ParseError(line_prefix(line_no) + e.what());
    }
    obs.add_term(coeff, p);
  }
  if (!have_header) throw ParseError("observable document has no 'qubits N' header");

  obs.prune(options.prune_threshold);
  return obs;
}

std::string serialize_observable(const Observable& obs) {
  std::string out = "qubits " + std::to_string(obs.n_qubits()) + "\n";
  for (const auto& t : obs.terms()) {
    out += format_double(t.coefficient);
    const std::string letters = format_pauli(t.pauli);
    if (!letters.empty()) {
      out.push_back(' ');
      out += letters;
    }
    out.push_back('\n');
  }
  return out;
}

double expectation_at_clifford_point(const Observable& obs, const StabilizerTableau& state) {
  if (obs.n_qubits() != state.n_qubits()) {
    throw DimensionError("observable has " + std::to_string(obs.n_qubits()) + " qubits, state has " +
                         std::to_string(state.n_qubits()));
  }
  KahanSum sum;
  for (const auto& t : obs.terms()) {
    sum += t.coefficient * state.expectation(t.pauli).real_sign();
  }
  return sum.value();
}

}  // namespace qce
