#include "banalg/io.hpp"

#include <fstream>
#include <sstream>

namespace banalg::io {

namespace {

using Idx = Eigen::Index;

[[noreturn]] void schema(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::schema_error, field + ": " + what);
}

const Json& require(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) schema(field, "expected a number");
  return j.get<double>();
}

std::size_t index_value(const Json& j, const std::string& field) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer()) {
    if (j.get<long long>() < 0) schema(field, "index must be nonnegative");
    return static_cast<std::size_t>(j.get<long long>());
  }
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (d >= 0 && d == static_cast<double>(static_cast<std::size_t>(d))) return static_cast<std::size_t>(d);
  }
  schema(field, "expected a nonnegative integer");
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

Json tensor_to_json(const std::vector<StructureEntry>& entries) {
  Json out = Json::array();
  for (const auto& e : entries) out.push_back(Json::array({e.i, e.j, e.k, e.value.real(), e.value.imag()}));
  return out;
}

std::vector<StructureEntry> tensor_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) schema(field, "expected a list of [i, j, k, re, im]");
  std::vector<StructureEntry> out;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Json& e = j[r];
    const std::string f = at(field, r);
    if (!e.is_array() || e.size() != 5) schema(f, "expected [i, j, k, re, im]");
    out.push_back({index_value(e[0], f + "[0]"), index_value(e[1], f + "[1]"), index_value(e[2], f + "[2]"),
                   Complex(number(e[3], f + "[3]"), number(e[4], f + "[4]"))});
  }
  return out;
}

bool same_structure(const Algebra& a, const Algebra& b, double tol) {
  if (a.dim() != b.dim() || a.weights() != b.weights()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if ((a.basis_left_operator(i) - b.basis_left_operator(i)).cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t p = 0; p < upto; ++p) {
      if (text[p] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::parse_error,
                origin + ": line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) schema(field, "expected [re, im]");
  return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Idx i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVector vector_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) schema(field, "expected a list of [re, im]");
  CVector v(Idx(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(Idx(i)) = complex_from_json(j[i], at(field, i));
  return v;
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (Idx r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

CMatrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) schema(field, "expected a list of rows");
  if (j.empty()) return CMatrix(0, 0);
  const CVector first = vector_from_json(j[0], at(field, 0));
  CMatrix m(Idx(j.size()), first.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const CVector row = vector_from_json(j[r], at(field, r));
    if (row.size() != first.size()) schema(at(field, r), "row length differs from row 0");
    m.row(Idx(r)) = row.transpose();
  }
  return m;
}

Json algebra_to_json(const AlgebraSpec& spec) {
  Json out = Json::object();
  out["name"] = spec.name;
  out["dim"] = spec.dim;
  out["weights"] = spec.weights;
  out["structure"] = tensor_to_json(spec.structure);
  if (spec.unit) out["unit"] = vector_to_json(*spec.unit);
  return out;
}

AlgebraSpec algebra_from_json(const Json& j) {
  AlgebraSpec spec;
  const Json& name = require(j, "name", "");
  if (!name.is_string()) schema("name", "expected a string");
  spec.name = name.get<std::string>();
  const Json& dim = require(j, "dim", "");
  spec.dim = index_value(dim, "dim");
  if (spec.dim == 0) schema("dim", "must be positive");
  const Json& weights = require(j, "weights", "");
  if (!weights.is_array()) schema("weights", "expected a list of numbers");
  if (weights.size() != spec.dim) schema("weights", "expected " + std::to_string(spec.dim) + " entries");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = number(weights[i], at("weights", i));
    if (!(w > 0.0)) schema(at("weights", i), "must be > 0");
    spec.weights.push_back(w);
  }
  spec.structure = tensor_from_json(require(j, "structure", ""), "structure");
  for (std::size_t r = 0; r < spec.structure.size(); ++r) {
    const auto& e = spec.structure[r];
    if (e.i >= spec.dim || e.j >= spec.dim || e.k >= spec.dim) schema(at("structure", r), "index out of range");
  }
  if (const auto it = j.find("unit"); it != j.end() && !it->is_null()) {
    CVector u = vector_from_json(*it, "unit");
    if (u.size() != Idx(spec.dim)) schema("unit", "expected " + std::to_string(spec.dim) + " entries");
    spec.unit = std::move(u);
  }
  return spec;
}

AlgebraSpec load_algebra_spec(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("algebra") && j.contains("kind")) return algebra_from_json(j["algebra"]);
  return algebra_from_json(j);
}

Json morphism_to_json(const Morphism& m) {
  Json out = Json::object();
  out["source"] = m.source;
  out["target"] = m.target;
  out["matrix"] = matrix_to_json(m.matrix);
  return out;
}

Morphism morphism_from_json(const Json& j) {
  Morphism m;
  const Json& src = require(j, "source", "");
  const Json& tgt = require(j, "target", "");
  if (!src.is_string()) schema("source", "expected a string");
  if (!tgt.is_string()) schema("target", "expected a string");
  m.source = src.get<std::string>();
  m.target = tgt.get<std::string>();
  m.matrix = matrix_from_json(require(j, "matrix", ""), "matrix");
  return m;
}

Json actions_to_json(const ActionTensors& actions) {
  Json out = Json::object();
  out["b_i"] = tensor_to_json(actions.b_on_i);
  out["i_b"] = tensor_to_json(actions.i_on_b);
  return out;
}

ActionTensors actions_from_json(const Json& j) {
  ActionTensors act;
  act.b_on_i = tensor_from_json(require(j, "b_i", ""), "b_i");
  if (const auto it = j.find("i_b"); it != j.end() && !it->is_null()) {
    act.i_on_b = tensor_from_json(*it, "i_b");
  } else {
    for (const auto& e : act.b_on_i) act.i_on_b.push_back({e.j, e.i, e.k, e.value});
  }
  return act;
}

Json product_to_json(const ProductDescriptor& desc) {
  Json out = Json::object();
  out["kind"] = std::string(to_string(desc.kind));
  out["algebra"] = algebra_to_json(desc.algebra.spec());
  if (desc.kind == ProductKind::semidirect) {
    out["b"] = algebra_to_json(desc.first.spec());
    out["i"] = algebra_to_json(desc.second.spec());
    out["actions"] = actions_to_json(desc.actions.value_or(ActionTensors{}));
  } else {
    out["a"] = algebra_to_json(desc.first.spec());
    out["b"] = algebra_to_json(desc.second.spec());
    out["phi"] = morphism_to_json({desc.second.name(), desc.first.name(),
                                   desc.phi.value_or(CMatrix::Zero(Idx(desc.first.dim()), Idx(desc.second.dim())))});
    out["forced"] = desc.forced;
  }
  return out;
}

Json group_to_json(const Algebra& algebra, const std::vector<int>& orders) {
  Json out = Json::object();
  out["kind"] = "group";
  out["algebra"] = algebra_to_json(algebra.spec());
  out["orders"] = orders;
  return out;
}

ProductDocument product_from_json(const Json& j, double tol) {
  ProductDocument doc;
  const Json& kind = require(j, "kind", "");
  if (!kind.is_string()) schema("kind", "expected a string");
  doc.kind = kind.get<std::string>();
  doc.algebra = algebra_from_json(require(j, "algebra", ""));
  const ValidationOptions vopts{tol, true};
  if (doc.kind == "group") {
    const Json& orders = require(j, "orders", "");
    if (!orders.is_array() || orders.empty()) schema("orders", "expected a nonempty list of positive integers");
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const std::size_t o = index_value(orders[i], at("orders", i));
      if (o == 0) schema(at("orders", i), "must be positive");
      doc.orders.push_back(static_cast<int>(o));
    }
    return doc;
  }
  if (doc.kind == "semidirect") {
    const Algebra b = Algebra::create(algebra_from_json(require(j, "b", "")), vopts);
    const Algebra i = Algebra::create(algebra_from_json(require(j, "i", "")), vopts);
    doc.descriptor = semidirect({b, i, actions_from_json(require(j, "actions", ""))}, tol);
  } else if (doc.kind == "lau" || doc.kind == "direct_sum") {
    const Algebra a = Algebra::create(algebra_from_json(require(j, "a", "")), vopts);
    const Algebra b = Algebra::create(algebra_from_json(require(j, "b", "")), vopts);
    const Morphism phi = morphism_from_json(require(j, "phi", ""));
    if (phi.matrix.rows() != Idx(a.dim()) || phi.matrix.cols() != Idx(b.dim())) {
      schema("phi.matrix", "expected " + std::to_string(a.dim()) + " rows of " + std::to_string(b.dim()) + " entries");
    }
    bool forced = false;
    if (const auto it = j.find("forced"); it != j.end()) {
      if (!it->is_boolean()) schema("forced", "expected a boolean");
      forced = it->get<bool>();
    }
    doc.descriptor = lau_product(a, b, phi.matrix, {tol, forced});
  } else {
    schema("kind", "expected one of semidirect, lau, direct_sum, group");
  }
  if (!same_structure(doc.descriptor->algebra, Algebra::unchecked(doc.algebra), 1e-12)) {
    schema("algebra", "does not match the product rebuilt from its parents");
  }
  return doc;
}

ProductDocument load_product(const std::filesystem::path& path, double tol) {
  return product_from_json(read_json_file(path), tol);
}

Json sigma_to_json(const CVector& values) {
  Json out = Json::object();
  out["values"] = vector_to_json(values);
  return out;
}

CVector sigma_from_json(const Json& j) { return vector_from_json(require(j, "values", ""), "values"); }

}  // namespace banalg::io
