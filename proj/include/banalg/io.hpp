#pragma once

// JSON reading and writing for algebras, morphisms, action tensors, product
// descriptors and BSE function values. Complex numbers are [re, im] pairs.
// Schema violations raise SCHEMA_ERROR naming the offending field; malformed
// JSON raises PARSE_ERROR with line and column.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "banalg/algebra.hpp"
#include "banalg/constructions.hpp"

namespace banalg::io {

using Json = nlohmann::ordered_json;

/// Parses text; PARSE_ERROR carries "line L, column C".
Json parse_json(const std::string& text, const std::string& origin = "<input>");
Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& field);
Json vector_to_json(const CVector& v);
CVector vector_from_json(const Json& j, const std::string& field);
Json matrix_to_json(const CMatrix& m);  // list of rows
CMatrix matrix_from_json(const Json& j, const std::string& field);

Json algebra_to_json(const AlgebraSpec& spec);
AlgebraSpec algebra_from_json(const Json& j);

/// Accepts either an algebra document or a product document (uses its "algebra").
AlgebraSpec load_algebra_spec(const std::filesystem::path& path);

struct Morphism {
  std::string source;
  std::string target;
  CMatrix matrix;
};

Json morphism_to_json(const Morphism& m);
Morphism morphism_from_json(const Json& j);

/// {"b_i": [[i,j,k,re,im],...], "i_b": [...]}. When "i_b" is absent the
/// commuted b_i tensor is used.
Json actions_to_json(const ActionTensors& actions);
ActionTensors actions_from_json(const Json& j);

/// Product document: {"kind", "algebra", and either "b"/"i"/"actions"
/// (semidirect), "a"/"b"/"phi"/"forced" (lau, direct_sum), or "orders" (group)}.
Json product_to_json(const ProductDescriptor& desc);
Json group_to_json(const Algebra& algebra, const std::vector<int>& orders);

struct ProductDocument {
  std::string kind;
  AlgebraSpec algebra;
  std::optional<ProductDescriptor> descriptor;  // rebuilt from the parents
  std::vector<int> orders;                       // group documents
};

ProductDocument product_from_json(const Json& j, double tol = kAlgebraicTol);
ProductDocument load_product(const std::filesystem::path& path, double tol = kAlgebraicTol);

Json sigma_to_json(const CVector& values);
CVector sigma_from_json(const Json& j);

}  // namespace banalg::io
