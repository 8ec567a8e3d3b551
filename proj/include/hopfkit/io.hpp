#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hopfkit/algebra.hpp"
#include "hopfkit/hopf.hpp"
#include "hopfkit/operator.hpp"
#include "hopfkit/report.hpp"

namespace hopfkit {

using Json = nlohmann::json;

/// Malformed input file. The message names either the line and column of a
/// syntax error or the JSON path of the offending value.
class FileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// A JSON value together with its path from the document root.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const Json& json() const noexcept { return *j_; }
  const std::string& path() const noexcept { return path_; }
  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  [[noreturn]] void fail(const std::string& what) const {
    throw FileFormatError((path_.empty() ? std::string("/") : path_) + ": " + what);
  }

  Node operator[](const char* key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail(std::string("missing key \"") + key + "\"");
    return {*it, path_ + "/" + key};
  }

  Node at(std::size_t i) const { return {(*j_)[i], path_ + "/" + std::to_string(i)}; }

  std::size_t array_size(std::optional<std::size_t> expected = std::nullopt) const {
    if (!j_->is_array()) fail("expected an array");
    if (expected && j_->size() != *expected)
      fail("expected " + std::to_string(*expected) + " entries, found " + std::to_string(j_->size()));
    return j_->size();
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  std::size_t index(std::size_t bound) const {
    if (!j_->is_number_unsigned() && !(j_->is_number_integer() && j_->get<long long>() >= 0))
      fail("expected a non-negative integer");
    const auto v = j_->get<std::size_t>();
    if (v >= bound) fail("index " + std::to_string(v) + " out of range (< " + std::to_string(bound) + ")");
    return v;
  }

  /// Scalars are strings in the exact text form; plain integers are accepted too.
  Scalar scalar(FieldSpec F) const {
    try {
      if (j_->is_number_integer()) return Scalar(F, j_->get<long long>());
      if (j_->is_string()) return Scalar::parse(F, j_->get<std::string>());
    } catch (const std::exception& e) {
      fail(e.what());
    }
    fail("expected a scalar string such as \"-3/2\"");
  }

  SparseVec sparse_vec(FieldSpec F, std::size_t dim) const {
    const std::size_t m = array_size();
    std::vector<SparseVec::Entry> e;
    for (std::size_t k = 0; k < m; ++k) {
      const Node pair = at(k);
      pair.array_size(2);
      e.emplace_back(pair.at(0).index(dim), pair.at(1).scalar(F));
    }
    return SparseVec::from_entries(F, dim, std::move(e));
  }

  /// A list of [i, j, "s"] triples for an element of an n⊗n tensor square.
  SparseVec sparse_2tensor(FieldSpec F, std::size_t n) const {
    const std::size_t m = array_size();
    std::vector<SparseVec::Entry> e;
    for (std::size_t k = 0; k < m; ++k) {
      const Node t = at(k);
      t.array_size(3);
      e.emplace_back(t.at(0).index(n) * n + t.at(1).index(n), t.at(2).scalar(F));
    }
    return SparseVec::from_entries(F, n * n, std::move(e));
  }

  std::vector<std::size_t> shape() const {
    const std::size_t m = array_size();
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t v = at(k).index(std::size_t{1} << 24);
      if (v == 0) at(k).fail("factor dimensions must be positive");
      s.push_back(v);
    }
    return s;
  }

 private:
  const Json* j_;
  std::string path_;
};

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FileFormatError(e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileFormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline FieldSpec field_of(const Node& root) {
  try {
    return FieldSpec::parse(root["field"].string());
  } catch (const FieldError& e) {
    root["field"].fail(e.what());
  }
}

inline std::vector<std::string> basis_of(const Node& root, std::size_t n) {
  std::vector<std::string> out;
  if (!root.has("basis")) return out;
  const Node b = root["basis"];
  b.array_size(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(b.at(i).string());
  return out;
}

/// mul[i][j] is the sparse vector of b_i·b_j.
inline std::vector<SparseVec> mul_of(const Node& root, FieldSpec F, std::size_t n) {
  const Node m = root["mul"];
  m.array_size(n);
  std::vector<SparseVec> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    m.at(i).array_size(n);
    for (std::size_t j = 0; j < n; ++j) out.push_back(m.at(i).at(j).sparse_vec(F, n));
  }
  return out;
}

inline std::size_t dim_of(const Node& root) {
  const std::size_t n = root["dim"].index(std::size_t{1} << 16);
  if (n == 0) root["dim"].fail("dimension must be positive");
  return n;
}

inline Json scalar_json(const Scalar& s) { return s.to_string(); }

inline Json sparse_json(const SparseVec& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v.entries()) out.push_back(Json::array({i, c.to_string()}));
  return out;
}

inline Json mul_json(const std::vector<SparseVec>& mul, std::size_t n) {
  Json out = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(sparse_json(mul[i * n + j]));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Hopf-files

/// Reads the structure constants only; nothing is validated beyond shapes.
inline HopfData hopf_data_from_json(const Json& doc) {
  const detail::Node root(doc, "");
  const FieldSpec F = detail::field_of(root);
  const std::size_t n = detail::dim_of(root);
  HopfData d;
  d.field = F;
  d.dim = n;
  d.basis = detail::basis_of(root, n);
  if (d.basis.empty())
    for (std::size_t i = 0; i < n; ++i) d.basis.push_back("b" + std::to_string(i));
  d.mul = detail::mul_of(root, F, n);
  if (root.has("unit")) d.unit = root["unit"].sparse_vec(F, n);
  const detail::Node com = root["comul"];
  com.array_size(n);
  for (std::size_t i = 0; i < n; ++i) d.comul.push_back(com.at(i).sparse_2tensor(F, n));
  const detail::Node eps = root["counit"];
  eps.array_size(n);
  for (std::size_t i = 0; i < n; ++i) d.counit.push_back(eps.at(i).scalar(F));
  if (root.has("antipode")) {
    const detail::Node S = root["antipode"];
    S.array_size(n);
    DenseMatrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      S.at(i).array_size(n);
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = S.at(i).at(j).scalar(F);
    }
    d.antipode = std::move(m);
  }
  return d;
}

inline HopfData parse_hopf_data(const std::string& text) { return hopf_data_from_json(detail::parse_json_text(text)); }

/// Parses and runs the Hopf axiom gate (HopfAxiomError on failure).
inline FiniteDimHopf parse_hopf_text(const std::string& text) { return FiniteDimHopf::create(parse_hopf_data(text)); }

inline FiniteDimHopf parse_hopf_file(const std::string& path) { return parse_hopf_text(detail::read_file(path)); }

inline Json hopf_to_json(const FiniteDimHopf& H) {
  const HopfData d = H.data();
  const std::size_t n = d.dim;
  Json out;
  out["field"] = d.field.to_string();
  out["dim"] = n;
  out["basis"] = d.basis;
  out["mul"] = detail::mul_json(d.mul, n);
  out["unit"] = detail::sparse_json(*d.unit);
  Json com = Json::array();
  for (const auto& c : d.comul) {
    Json t = Json::array();
    for (const auto& [ij, s] : c.entries()) t.push_back(Json::array({ij / n, ij % n, s.to_string()}));
    com.push_back(std::move(t));
  }
  out["comul"] = std::move(com);
  Json eps = Json::array();
  for (const auto& s : d.counit) eps.push_back(s.to_string());
  out["counit"] = std::move(eps);
  Json S = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(d.antipode->at(i, j).to_string());
    S.push_back(std::move(row));
  }
  out["antipode"] = std::move(S);
  return out;
}

// ---------------------------------------------------------------------------
// Algebra-files and operator-files

/// Shapes only; associativity and unitality are left to the caller.
inline AlgebraData algebra_data_from_json(const Json& doc) {
  const detail::Node root(doc, "");
  const FieldSpec F = detail::field_of(root);
  const std::size_t n = detail::dim_of(root);
  AlgebraData d;
  d.field = F;
  d.dim = n;
  d.basis = detail::basis_of(root, n);
  d.mul = detail::mul_of(root, F, n);
  d.unit = root["unit"].sparse_vec(F, n);
  if (root.has("grading")) {
    const detail::Node g = root["grading"];
    g.array_size(n);
    std::vector<int> deg;
    for (std::size_t i = 0; i < n; ++i) {
      if (!g.at(i).json().is_number_integer()) g.at(i).fail("expected an integer degree");
      deg.push_back(g.at(i).json().get<int>());
    }
    d.grading = std::move(deg);
  }
  return d;
}

/// Parses and certifies the algebra laws (AlgebraAxiomError on failure).
inline AlgebraPtr parse_algebra_text(const std::string& text) {
  return make_algebra(algebra_data_from_json(detail::parse_json_text(text)));
}

inline AlgebraPtr parse_algebra_file(const std::string& path) { return parse_algebra_text(detail::read_file(path)); }

inline Json algebra_to_json(const Algebra& A) {
  const AlgebraData& d = A.data();
  Json out;
  out["field"] = d.field.to_string();
  out["dim"] = d.dim;
  out["basis"] = d.basis;
  out["mul"] = detail::mul_json(d.mul, d.dim);
  out["unit"] = detail::sparse_json(d.unit);
  if (d.grading) out["grading"] = *d.grading;
  return out;
}

inline LinearOperator operator_from_json(const Json& doc) {
  const detail::Node root(doc, "");
  const FieldSpec F = detail::field_of(root);
  auto dom = root["domain"].shape(), cod = root["codomain"].shape();
  const std::size_t m = LinearOperator::size_of(dom), k = LinearOperator::size_of(cod);
  const detail::Node cols = root["columns"];
  cols.array_size(m);
  std::vector<SparseVec> c;
  c.reserve(m);
  for (std::size_t j = 0; j < m; ++j) c.push_back(cols.at(j).sparse_vec(F, k));
  return {F, std::move(dom), std::move(cod), std::move(c)};
}

inline LinearOperator parse_operator_text(const std::string& text) {
  return operator_from_json(detail::parse_json_text(text));
}

inline LinearOperator parse_operator_file(const std::string& path) {
  return parse_operator_text(detail::read_file(path));
}

inline Json operator_to_json(const LinearOperator& op) {
  Json out;
  out["field"] = op.field().to_string();
  out["domain"] = op.domain();
  out["codomain"] = op.codomain();
  Json cols = Json::array();
  for (std::size_t j = 0; j < op.domain_dim(); ++j) cols.push_back(detail::sparse_json(op.column(j)));
  out["columns"] = std::move(cols);
  return out;
}

// ---------------------------------------------------------------------------
// Reports

/// Timing is left out so that identical runs give identical bytes.
inline Json report_to_json(const VerificationReport& r) {
  Json out;
  out["check"] = r.check_name;
  out["passed"] = r.passed;
  if (r.witness) {
    out["witness"] = {{"location", r.witness->location},
                      {"index", r.witness->index},
                      {"lhs", r.witness->lhs},
                      {"rhs", r.witness->rhs}};
  } else {
    out["witness"] = nullptr;
  }
  Json parts = Json::array();
  for (const auto& p : r.parts) parts.push_back(report_to_json(p));
  out["parts"] = std::move(parts);
  return out;
}

/// Indented text rendering; failing reports show their witness.
inline void render_report(std::ostream& os, const VerificationReport& r, int depth = 0) {
  os << std::string(2 * static_cast<std::size_t>(depth), ' ') << (r.passed ? "[pass] " : "[FAIL] ") << r.check_name;
  if (r.witness && r.parts.empty())
    os << "\n" << std::string(2 * static_cast<std::size_t>(depth) + 4, ' ') << r.witness->location << ": "
       << r.witness->lhs << " != " << r.witness->rhs;
  os << "\n";
  for (const auto& p : r.parts) render_report(os, p, depth + 1);
}

}  // namespace hopfkit
