#include "qce/circuit.hpp"

#include <json.hpp>

namespace qce {

namespace {

using nlohmann::json;

std::string at_element(std::size_t index) { return "element " + std::to_string(index) + ": "; }

char axis_char(RotationAxis a) {
  switch (a) {
    case RotationAxis::X: return 'X';
    case RotationAxis::Y: return 'Y';
    case RotationAxis::Z: return 'Z';
  }
  return '?';
}

RotationAxis parse_axis(std::string_view s, std::size_t index) {
  if (s == "X") return RotationAxis::X;
  if (s == "Y") return RotationAxis::Y;
  if (s == "Z") return RotationAxis::Z;
  throw ParseError(at_element(index) + "unknown rotation axis '" + std::string(s) + "'");
}

}  // namespace

PauliLetter RotationGate::letter() const {
  switch (axis) {
    case RotationAxis::X: return PauliLetter::X;
    case RotationAxis::Y: return PauliLetter::Y;
    case RotationAxis::Z: return PauliLetter::Z;
  }
  return PauliLetter::I;
}

PauliString RotationGate::generator(std::size_t n_qubits) const { return PauliString::single(n_qubits, wire, letter()); }

std::string_view variant_name(AnsatzVariant v) { return v == AnsatzVariant::Real ? "real" : "complex"; }

AnsatzVariant parse_variant(std::string_view name) {
  if (name == "complex") return AnsatzVariant::Complex;
  if (name == "real") return AnsatzVariant::Real;
  throw ParseError("unknown ansatz variant '" + std::string(name) + "' (expected complex|real)");
}

void AnsatzCircuit::validate() const {
  if (n_qubits == 0) throw ParseError("ansatz must have at least one qubit");
  std::vector<std::size_t> owner(n_params, elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (const auto* g = std::get_if<CliffordGate>(&elements[i])) {
      try {
        validate_gate(*g, n_qubits);
      } catch (const DimensionError& e) {
        throw DimensionError(at_element(i) + e.what());
      }
    } else {
      const auto& r = std::get<RotationGate>(elements[i]);
      if (r.wire >= n_qubits) {
        throw DimensionError(at_element(i) + "rotation wire " + std::to_string(r.wire) + " out of range");
      }
      if (r.param >= n_params) {
        throw ParseError(at_element(i) + "param " + std::to_string(r.param) + " >= n_params " +
                         std::to_string(n_params));
      }
      if (owner[r.param] != elements.size()) {
        throw ParseError(at_element(i) + "duplicate param " + std::to_string(r.param) + " (first used by element " +
                         std::to_string(owner[r.param]) + ")");
      }
      owner[r.param] = i;
    }
  }
  for (std::size_t k = 0; k < n_params; ++k) {
    if (owner[k] == elements.size()) throw ParseError("param " + std::to_string(k) + " is not used by any rotation");
  }
}

std::vector<CliffordGate> AnsatzCircuit::clifford_part() const {
  std::vector<CliffordGate> out;
  for (const auto& e : elements) {
    if (const auto* g = std::get_if<CliffordGate>(&e)) out.push_back(*g);
  }
  return out;
}

std::vector<RotationGate> AnsatzCircuit::rotations_by_param() const {
  std::vector<RotationGate> out(n_params);
  for (const auto& e : elements) {
    if (const auto* r = std::get_if<RotationGate>(&e)) out.at(r->param) = *r;
  }
  return out;
}

ReferenceState ReferenceState::parse(std::string_view text) {
  ReferenceState r;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '0' || text[i] == '1') {
      r.bits.push_back(static_cast<std::uint8_t>(text[i] - '0'));
    } else {
      throw ParseError("reference bitstring has invalid character '" + std::string(1, text[i]) + "' at position " +
                       std::to_string(i));
    }
  }
  if (r.bits.empty()) throw ParseError("reference bitstring is empty");
  return r;
}

std::string ReferenceState::to_string() const {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

StabilizerTableau clifford_point_state(const AnsatzCircuit& ansatz, const ReferenceState& reference) {
  if (reference.size() != ansatz.n_qubits) {
    throw DimensionError("reference has " + std::to_string(reference.size()) + " bits, ansatz has " +
                         std::to_string(ansatz.n_qubits) + " qubits");
  }
  StabilizerTableau state = StabilizerTableau::basis_state(reference.bits);
  for (const auto& e : ansatz.elements) {
    if (const auto* g = std::get_if<CliffordGate>(&e)) state.apply(*g);
  }
  return state;
}

std::string serialize_ansatz(const AnsatzCircuit& ansatz) {
  json elements = json::array();
  for (const auto& e : ansatz.elements) {
    if (const auto* g = std::get_if<CliffordGate>(&e)) {
      json j{{"type", "clifford"}, {"kind", std::string(kind_name(g->kind))}};
      if (g->is_two_qubit()) {
        j["wires"] = {g->wires[0], g->wires[1]};
      } else {
        j["wires"] = {g->wires[0]};
      }
      if (g->kind == CliffordKind::SingleQubitClifford) j["index"] = g->table_index;
      elements.push_back(std::move(j));
    } else {
      const auto& r = std::get<RotationGate>(e);
      elements.push_back({{"type", "rotation"}, {"axis", std::string(1, axis_char(r.axis))}, {"wire", r.wire},
                          {"param", r.param}});
    }
  }
  json doc{{"version", kAnsatzSchemaVersion},
           {"n_qubits", ansatz.n_qubits},
           {"n_params", ansatz.n_params},
           {"metadata",
            {{"seed", ansatz.metadata.seed},
             {"variant", std::string(variant_name(ansatz.metadata.variant))},
             {"depth", ansatz.metadata.depth},
             {"generated", ansatz.metadata.generated}}},
           {"elements", std::move(elements)}};
  return doc.dump(2) + "\n";
}

AnsatzCircuit deserialize_ansatz(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("ansatz document is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.contains("version") || doc.at("version").get<int>() != kAnsatzSchemaVersion) {
      throw ParseError("unsupported or missing ansatz schema version (expected " +
                       std::to_string(kAnsatzSchemaVersion) + ")");
    }
    AnsatzCircuit a;
    a.n_qubits = doc.at("n_qubits").get<std::size_t>();
    a.n_params = doc.at("n_params").get<std::size_t>();
    if (doc.contains("metadata")) {
      const auto& m = doc.at("metadata");
      a.metadata.seed = m.value("seed", std::uint64_t{0});
      a.metadata.variant = parse_variant(m.value("variant", std::string("complex")));
      a.metadata.depth = m.value("depth", std::uint32_t{0});
      a.metadata.generated = m.value("generated", false);
    }
    const auto& elements = doc.at("elements");
    if (!elements.is_array()) throw ParseError("'elements' must be an array");
    for (std::size_t i = 0; i < elements.size(); ++i) try {
      const auto& e = elements[i];
      const std::string type = e.at("type").get<std::string>();
      if (type == "clifford") {
        CliffordGate g;
        g.kind = parse_kind(e.at("kind").get<std::string>());
        const auto& wires = e.at("wires");
        const std::size_t expected = g.is_two_qubit() ? 2 : 1;
        if (!wires.is_array() || wires.size() != expected) {
          throw ParseError(at_element(i) + "gate " + std::string(kind_name(g.kind)) + " needs " +
                           std::to_string(expected) + " wire(s)");
        }
        g.wires[0] = wires[0].get<std::uint32_t>();
        if (expected == 2) g.wires[1] = wires[1].get<std::uint32_t>();
        if (g.kind == CliffordKind::SingleQubitClifford) {
          const auto idx = e.at("index").get<unsigned>();
          if (idx >= kSingleQubitCliffordCount) {
            throw ParseError(at_element(i) + "single-qubit Clifford index " + std::to_string(idx) + " outside 0..23");
          }
          g.table_index = static_cast<std::uint8_t>(idx);
        }
        a.elements.emplace_back(g);
      } else if (type == "rotation") {
        RotationGate r;
        r.axis = parse_axis(e.at("axis").get<std::string>(), i);
        r.wire = e.at("wire").get<std::uint32_t>();
        r.param = e.at("param").get<std::uint32_t>();
        a.elements.emplace_back(r);
      } else {
        throw ParseError(at_element(i) + "unknown element type '" + type + "'");
      }
    } catch (const json::exception& e) {
      throw ParseError(at_element(i) + e.what());
    }
    a.validate();
    return a;
  } catch (const json::exception& e) {
    throw ParseError(std::string("ansatz document schema violation: ") + e.what());
  }
}

}  // namespace qce
