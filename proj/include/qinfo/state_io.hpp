#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "qinfo/measurement.hpp"
#include "qinfo/states.hpp"

namespace qinfo::io {

using nlohmann::json;

// Malformed document structure (bad JSON, missing fields, wrong types).
// Distinct from validation failures of a well-formed payload, which surface
// as std::invalid_argument from the domain types.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// State file: { "kind": "pure" | "matrix" | "named", "payload": ...,
//               "dims": [a, b] (optional), "label": "..." (optional) }.
// Complex numbers serialize as [re, im]; bare numbers are accepted on input.
struct StateDocument {
  enum class Kind { pure, matrix, named };

  Kind kind = Kind::pure;
  ComplexVector pure_payload;
  ComplexMatrix matrix_payload;
  std::string name;  // kind == named
  std::optional<std::pair<int, int>> dims;
  std::string label;

  bool operator==(const StateDocument& other) const {
    if (kind != other.kind || dims != other.dims || label != other.label) return false;
    switch (kind) {
      case Kind::pure:
        return pure_payload.size() == other.pure_payload.size() &&
               pure_payload == other.pure_payload;
      case Kind::matrix:
        return matrix_payload.rows() == other.matrix_payload.rows() &&
               matrix_payload.cols() == other.matrix_payload.cols() &&
               matrix_payload == other.matrix_payload;
      case Kind::named:
        return name == other.name;
    }
    return false;
  }
};

namespace detail {

inline Complex parse_complex(const json& j, const char* where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw parse_error(std::string(where) + ": complex entries must be numbers or [re, im] pairs");
}

inline json dump_complex(const Complex& c) { return json::array({c.real(), c.imag()}); }

inline ComplexVector parse_vector(const json& j, const char* where) {
  if (!j.is_array() || j.empty())
    throw parse_error(std::string(where) + ": expected a nonempty array of amplitudes");
  ComplexVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = parse_complex(j[i], where);
  return v;
}

inline ComplexMatrix parse_matrix(const json& j, const char* where) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw parse_error(std::string(where) + ": expected an array of matrix rows");
  std::size_t rows = j.size();
  std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw parse_error(std::string(where) + ": ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_complex(j[r][c], where);
  }
  return m;
}

inline json dump_vector(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(dump_complex(v(i)));
  return out;
}

inline json dump_matrix(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(dump_complex(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& named_state_names() {
  static const std::vector<std::string> names = {
      "bell-phi-plus", "bell-phi-minus", "bell-psi-plus", "bell-psi-minus",
      "singlet",       "rho1",           "max-mixed-N"};
  return names;
}

// Resolves a built-in name to a document with an explicit payload.
// "max-mixed-N" takes the dimension in place of N, e.g. "max-mixed-4".
inline StateDocument resolve_named_state(const std::string& name) {
  StateDocument doc;
  doc.label = name;
  auto bell = [&](Complex c00, Complex c01, Complex c10, Complex c11) {
    doc.kind = StateDocument::Kind::pure;
    doc.pure_payload = ComplexVector(4);
    doc.pure_payload << c00, c01, c10, c11;
    doc.dims = std::make_pair(2, 2);
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (name == "bell-phi-plus") {
    bell(inv_sqrt2, 0, 0, inv_sqrt2);
  } else if (name == "bell-phi-minus") {
    bell(inv_sqrt2, 0, 0, -inv_sqrt2);
  } else if (name == "bell-psi-plus") {
    bell(0, inv_sqrt2, inv_sqrt2, 0);
  } else if (name == "bell-psi-minus" || name == "singlet") {
    bell(0, inv_sqrt2, -inv_sqrt2, 0);
  } else if (name == "rho1") {
    doc.kind = StateDocument::Kind::matrix;
    doc.matrix_payload = ComplexMatrix::Zero(4, 4);
    doc.matrix_payload(0, 0) = 0.5;
    doc.matrix_payload(3, 3) = 0.5;
    doc.dims = std::make_pair(2, 2);
  } else if (name.rfind("max-mixed-", 0) == 0) {
    int dim = 0;
    try {
      dim = std::stoi(name.substr(10));
    } catch (const std::exception&) {
      throw std::invalid_argument("unknown named state: " + name);
    }
    if (dim < 1) throw std::invalid_argument("max-mixed dimension must be positive: " + name);
    doc.kind = StateDocument::Kind::matrix;
    doc.matrix_payload = ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
  } else {
    throw std::invalid_argument("unknown named state: " + name);
  }
  return doc;
}

inline DensityMatrix to_density(const StateDocument& doc);
inline std::optional<PureState> to_pure(const StateDocument& doc);

// Parses and validates. Structural problems raise parse_error; a well-formed
// payload that fails state validation surfaces the domain error verbatim.
inline StateDocument parse_state_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error("state file must be an object with a string \"kind\"");

  StateDocument doc;
  std::string kind = j["kind"].get<std::string>();
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw parse_error("\"label\" must be a string");
    doc.label = j["label"].get<std::string>();
  }
  if (j.contains("dims")) {
    const json& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 2 || !dims[0].is_number_integer() ||
        !dims[1].is_number_integer())
      throw parse_error("\"dims\" must be a pair of integers [dim_a, dim_b]");
    doc.dims = std::make_pair(dims[0].get<int>(), dims[1].get<int>());
    if (doc.dims->first < 1 || doc.dims->second < 1)
      throw parse_error("\"dims\" entries must be positive");
  }

  if (kind == "pure") {
    doc.kind = StateDocument::Kind::pure;
    if (!j.contains("payload")) throw parse_error("pure state document needs a \"payload\"");
    doc.pure_payload = detail::parse_vector(j["payload"], "payload");
  } else if (kind == "matrix") {
    doc.kind = StateDocument::Kind::matrix;
    if (!j.contains("payload")) throw parse_error("matrix document needs a \"payload\"");
    doc.matrix_payload = detail::parse_matrix(j["payload"], "payload");
  } else if (kind == "named") {
    doc.kind = StateDocument::Kind::named;
    if (!j.contains("payload") || !j["payload"].is_string())
      throw parse_error("named document needs a string \"payload\"");
    doc.name = j["payload"].get<std::string>();
  } else {
    throw parse_error("unknown document kind: " + kind);
  }

  to_density(doc);  // validates payload and dims
  return doc;
}

inline std::string serialize(const StateDocument& doc) {
  json j;
  switch (doc.kind) {
    case StateDocument::Kind::pure:
      j["kind"] = "pure";
      j["payload"] = detail::dump_vector(doc.pure_payload);
      break;
    case StateDocument::Kind::matrix:
      j["kind"] = "matrix";
      j["payload"] = detail::dump_matrix(doc.matrix_payload);
      break;
    case StateDocument::Kind::named:
      j["kind"] = "named";
      j["payload"] = doc.name;
      break;
  }
  if (doc.dims) j["dims"] = json::array({doc.dims->first, doc.dims->second});
  if (!doc.label.empty()) j["label"] = doc.label;
  return j.dump(2) + "\n";
}

inline std::optional<PureState> to_pure(const StateDocument& doc) {
  switch (doc.kind) {
    case StateDocument::Kind::pure:
      return PureState(doc.pure_payload);
    case StateDocument::Kind::named: {
      StateDocument resolved = resolve_named_state(doc.name);
      if (!doc.dims) return to_pure(resolved);
      StateDocument with_dims = resolved;
      with_dims.dims = doc.dims;
      return to_pure(with_dims);
    }
    case StateDocument::Kind::matrix:
      return std::nullopt;
  }
  return std::nullopt;
}

inline DensityMatrix to_density(const StateDocument& doc) {
  switch (doc.kind) {
    case StateDocument::Kind::pure: {
      PureState psi(doc.pure_payload);
      DensityMatrix rho = from_pure(psi);
      return doc.dims ? rho.with_split(doc.dims->first, doc.dims->second) : rho;
    }
    case StateDocument::Kind::matrix: {
      if (doc.dims) return DensityMatrix(doc.matrix_payload, doc.dims->first, doc.dims->second);
      return DensityMatrix(doc.matrix_payload);
    }
    case StateDocument::Kind::named: {
      StateDocument resolved = resolve_named_state(doc.name);
      if (doc.dims) resolved.dims = doc.dims;
      return to_density(resolved);
    }
  }
  throw parse_error("unreachable document kind");
}

// Operator file: { "kind": "operator", "payload": matrix, "label": ... }.
// Holds observables, witness operators, and reference bases; no state
// validation is applied beyond shape and finiteness.
struct OperatorDocument {
  ComplexMatrix op;
  std::string label;
};

inline OperatorDocument parse_operator_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("operator file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("kind", "") != "operator" || !j.contains("payload"))
    throw parse_error("operator file must be an object with kind \"operator\" and a payload");
  OperatorDocument doc;
  doc.op = detail::parse_matrix(j["payload"], "payload");
  doc.label = j.value("label", "");
  if (!is_finite(doc.op))
    throw std::invalid_argument("operator payload contains NaN or Inf");
  return doc;
}

inline std::string serialize_operator(const ComplexMatrix& op, const std::string& label) {
  json j;
  j["kind"] = "operator";
  j["payload"] = detail::dump_matrix(op);
  if (!label.empty()) j["label"] = label;
  return j.dump(2) + "\n";
}

// Measurement set file: { "kind": "pvm" | "kraus" | "povm",
//                         "operators": [matrix, ...], "labels": [...] }.
struct OperatorSetDocument {
  enum class Kind { pvm, kraus, povm };
  Kind kind = Kind::kraus;
  std::vector<ComplexMatrix> operators;
  std::vector<std::string> labels;
};

inline OperatorSetDocument parse_operator_set_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("operator set file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw parse_error("operator set file must be an object with a string \"kind\"");
  OperatorSetDocument doc;
  std::string kind = j["kind"].get<std::string>();
  if (kind == "pvm")
    doc.kind = OperatorSetDocument::Kind::pvm;
  else if (kind == "kraus")
    doc.kind = OperatorSetDocument::Kind::kraus;
  else if (kind == "povm")
    doc.kind = OperatorSetDocument::Kind::povm;
  else
    throw parse_error("unknown operator set kind: " + kind);
  if (!j.contains("operators") || !j["operators"].is_array() || j["operators"].empty())
    throw parse_error("operator set file needs a nonempty \"operators\" array");
  for (const auto& entry : j["operators"])
    doc.operators.push_back(detail::parse_matrix(entry, "operators"));
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw parse_error("\"labels\" must be an array of strings");
    for (const auto& label : j["labels"]) {
      if (!label.is_string()) throw parse_error("\"labels\" must be an array of strings");
      doc.labels.push_back(label.get<std::string>());
    }
  }
  return doc;
}

// Validates into the corresponding measurement type; PVM and POVM conditions
// are enforced here, Kraus completeness always.
inline KrausSet to_kraus(const OperatorSetDocument& doc) {
  switch (doc.kind) {
    case OperatorSetDocument::Kind::pvm:
      return kraus_from_pvm(PVMSet(doc.operators, doc.labels));
    case OperatorSetDocument::Kind::kraus:
      return KrausSet(doc.operators, doc.labels);
    case OperatorSetDocument::Kind::povm:
      return kraus_from_povm(POVMSet(doc.operators, doc.labels));
  }
  throw parse_error("unreachable operator set kind");
}

}  // namespace qinfo::io
