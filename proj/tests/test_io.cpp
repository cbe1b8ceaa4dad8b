#include <doctest.h>

#include <filesystem>

#include "banalg/io.hpp"
#include "support.hpp"

using namespace banalg;
using io::Json;

namespace {

std::string schema_detail(const Json& j) {
  try {
    io::algebra_from_json(j);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema_error) return e.detail();
    return "wrong code " + std::string(to_string(e.code()));
  }
  return "no error";
}

bool same_spec(const AlgebraSpec& a, const AlgebraSpec& b) {
  if (a.name != b.name || a.dim != b.dim || a.weights != b.weights || a.structure != b.structure) return false;
  if (a.unit.has_value() != b.unit.has_value()) return false;
  return !a.unit || *a.unit == *b.unit;
}

}  // namespace

TEST_CASE("a C2 document parses to a 2-dim spec") {
  const Json j = io::parse_json(R"({"name": "C2", "dim": 2, "weights": [1, 1],
      "structure": [[0, 0, 0, 1, 0], [1, 1, 1, 1, 0]]})");
  const AlgebraSpec s = io::algebra_from_json(j);
  CHECK(s.dim == 2);
  CHECK(s.structure == support::c2_spec().structure);
  CHECK_FALSE(s.unit.has_value());
}

TEST_CASE("schema errors name the offending field") {
  Json j = io::algebra_to_json(support::c2_spec());
  j["weights"][1] = -1.0;
  CHECK(schema_detail(j).find("weights[1]") == 0);
  j = io::algebra_to_json(support::c2_spec());
  j.erase("dim");
  CHECK(schema_detail(j).find("dim") == 0);
  j = io::algebra_to_json(support::c2_spec());
  j["structure"][0] = Json::array({0, 0, 9, 1.0, 0.0});
  CHECK(schema_detail(j).find("structure[0]") == 0);
  j = io::algebra_to_json(support::c2_spec());
  j["unit"] = Json::array({Json::array({1.0, 0.0})});
  CHECK(schema_detail(j).find("unit") == 0);
  j = io::algebra_to_json(support::c2_spec());
  j["weights"] = "heavy";
  CHECK(schema_detail(j).find("weights") == 0);
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    io::parse_json("{\n  \"dim\": 2,\n  oops\n}");
    FAIL("expected PARSE_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(e.detail().find("line 3") != std::string::npos);
    CHECK(e.detail().find("column") != std::string::npos);
  }
}

TEST_CASE("missing files raise IO_ERROR") {
  try {
    io::read_json_file("/nonexistent/dir/algebra.json");
    FAIL("expected IO_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
  }
}

TEST_CASE("algebra round trips") {
  std::vector<AlgebraSpec> specs{support::c2_spec({1.5, 2.0}), support::nilpotent_spec(),
                                 finite_abelian_group_algebra({2, 3}).spec(), support::lau_fixture().algebra.spec()};
  AlgebraSpec odd = support::c2_spec();
  odd.structure.push_back({0, 1, 0, Complex(0.1, -1.0 / 3.0)});
  odd.structure.push_back({1, 0, 0, Complex(0.1, -1.0 / 3.0)});
  specs.push_back(odd);
  for (const auto& s : specs) {
    const AlgebraSpec back = io::algebra_from_json(io::parse_json(io::algebra_to_json(s).dump(2)));
    CHECK(same_spec(s, back));
    CHECK(io::algebra_to_json(back).dump() == io::algebra_to_json(s).dump());
  }
}

TEST_CASE("vectors, matrices and sigma documents round trip") {
  CVector v(3);
  v << Complex(1, -2), 0.1, Complex(0, 1e-300);
  CHECK(io::vector_from_json(io::vector_to_json(v), "v") == v);
  CMatrix m(2, 3);
  m << 1.0, Complex(2, 3), 0.0, -1.0, 0.5, Complex(0, -0.25);
  CHECK(io::matrix_from_json(io::matrix_to_json(m), "m") == m);
  CHECK(io::sigma_from_json(io::sigma_to_json(v)) == v);
  CHECK_THROWS_AS(io::complex_from_json(Json::array({1.0}), "z"), Error);
  CHECK_THROWS_AS(io::matrix_from_json(Json::array({Json::array({Json::array({1.0, 0.0})}), Json::array()}), "m"),
                  Error);
}

TEST_CASE("morphisms and actions round trip") {
  CMatrix phi(1, 2);
  phi << 1.0, 0.0;
  const io::Morphism mor{"C2", "C", phi};
  const io::Morphism back = io::morphism_from_json(io::morphism_to_json(mor));
  CHECK(back.source == "C2");
  CHECK(back.target == "C");
  CHECK(back.matrix == phi);

  ActionTensors act;
  act.b_on_i = {{0, 0, 0, 1.0}};
  act.i_on_b = {{0, 0, 0, 1.0}};
  const ActionTensors act2 = io::actions_from_json(io::actions_to_json(act));
  CHECK(act2.b_on_i == act.b_on_i);
  CHECK(act2.i_on_b == act.i_on_b);
  // Without "i_b" the commuted tensor is used.
  Json j = io::actions_to_json(act);
  j.erase("i_b");
  CHECK(io::actions_from_json(j).i_on_b == act.b_on_i);
}

TEST_CASE("product documents rebuild their descriptors") {
  for (const ProductDescriptor& d : {support::pointwise_semidirect(), support::lau_fixture(),
                                     direct_sum(support::c1("A"), support::c2())}) {
    const io::ProductDocument doc = io::product_from_json(io::parse_json(io::product_to_json(d).dump()));
    REQUIRE(doc.descriptor);
    CHECK(doc.kind == to_string(d.kind));
    CHECK(doc.descriptor->kind == d.kind);
    CHECK(doc.descriptor->algebra.same_as(d.algebra));
    CHECK(same_spec(doc.algebra, d.algebra.spec()));
  }
  const Algebra g = finite_abelian_group_algebra({2, 3});
  const io::ProductDocument gd = io::product_from_json(io::group_to_json(g, {2, 3}));
  CHECK(gd.orders == std::vector<int>{2, 3});
  CHECK_FALSE(gd.descriptor.has_value());
}

TEST_CASE("a product document whose algebra disagrees with its parents is rejected") {
  Json j = io::product_to_json(support::lau_fixture());
  j["algebra"]["structure"][0][3] = 7.0;
  try {
    io::product_from_json(j);
    FAIL("expected SCHEMA_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::schema_error);
    CHECK(e.detail().find("algebra") == 0);
  }
  j = io::product_to_json(support::lau_fixture());
  j["kind"] = "tensor";
  CHECK_THROWS_AS(io::product_from_json(j), Error);
}

TEST_CASE("files: write then load") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "banalg_test_io";
  std::filesystem::create_directories(dir);
  const auto alg = dir / "c2.json";
  io::write_text_file(alg, io::algebra_to_json(support::c2_spec()).dump(2));
  CHECK(same_spec(io::load_algebra_spec(alg), support::c2_spec()));
  const auto prod = dir / "lau.json";
  io::write_text_file(prod, io::product_to_json(support::lau_fixture()).dump(2));
  CHECK(io::load_algebra_spec(prod).dim == 3);
  CHECK(io::load_product(prod).descriptor->kind == ProductKind::lau);
  std::filesystem::remove_all(dir);
}
