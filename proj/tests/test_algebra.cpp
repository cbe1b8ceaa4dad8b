#include <doctest.h>

#include "banalg/algebra.hpp"
#include "support.hpp"

using namespace banalg;

TEST_CASE("C2 with pointwise product is accepted with zero residuals") {
  const ValidationReport r = validate(support::c2_spec());
  CHECK(r.accepted);
  CHECK(r.associativity_residual == 0.0);
  CHECK(r.commutativity_residual == 0.0);
  CHECK(r.submultiplicativity_violations == 0);
  REQUIRE(r.unit_residual);
  CHECK(*r.unit_residual == 0.0);
}

TEST_CASE("an asymmetric tensor is rejected for commutativity") {
  AlgebraSpec s;
  s.name = "asym";
  s.dim = 2;
  s.weights = {1.0, 1.0};
  s.structure = {{0, 1, 0, 1.0}};
  const ValidationReport r = validate(s);
  CHECK_FALSE(r.accepted);
  CHECK(r.commutativity_residual == doctest::Approx(1.0));
  bool mentions = false;
  for (const auto& v : r.violations) mentions = mentions || v.find("commutativity") != std::string::npos;
  CHECK(mentions);
  try {
    Algebra::create(s);
    FAIL("expected REJECTED");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::rejected);
    CHECK(std::string(e.what()).find("commutativity") != std::string::npos);
  }
}

TEST_CASE("the 2-dim nilpotent algebra is accepted; associativity agrees with direct contraction") {
  const AlgebraSpec s = support::nilpotent_spec();
  CHECK(support::associativity_by_contraction(s) == 0.0);
  const ValidationReport r = validate(s);
  CHECK(r.accepted);
  CHECK(r.associativity_residual == 0.0);
  const Algebra a = Algebra::create(s);
  CHECK(a.norm(a.basis_product(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("validate flags a non-associative tensor that direct contraction also flags") {
  AlgebraSpec s;
  s.name = "bad";
  s.dim = 2;
  s.weights = {4.0, 4.0};
  s.structure = {{0, 0, 1, 1.0}, {1, 1, 0, 1.0}, {0, 1, 0, 1.0}, {1, 0, 0, 1.0}};
  const double oracle = support::associativity_by_contraction(s);
  CHECK(oracle > 0.5);
  CHECK(validate(s).associativity_residual == doctest::Approx(oracle));
  CHECK_FALSE(validate(s).accepted);
}

TEST_CASE("malformed specs are rejected outright") {
  AlgebraSpec s = support::c2_spec();
  s.weights = {1.0, -1.0};
  CHECK_THROWS_AS(validate(s), Error);
  s = support::c2_spec();
  s.structure.push_back({0, 0, 5, 1.0});
  CHECK_THROWS_AS(validate(s), Error);
  s = support::c2_spec();
  s.dim = 0;
  s.weights.clear();
  s.structure.clear();
  s.unit.reset();
  CHECK_THROWS_AS(validate(s), Error);
}

TEST_CASE("submultiplicativity failures are counted") {
  AlgebraSpec s = support::c2_spec({0.5, 1.0});
  const ValidationReport r = validate(s);
  CHECK_FALSE(r.accepted);
  CHECK(r.submultiplicativity_violations == 1);
  CHECK(submultiplicative_weight_scale(s) == doctest::Approx(2.0));
}

TEST_CASE("products on the micro fixtures") {
  const Algebra c2 = support::c2();
  CVector a(2), b(2), ab(2);
  a << 1.0, 2.0;
  b << 3.0, 4.0;
  ab << 3.0, 8.0;
  CHECK((c2.product(a, b) - ab).norm() == 0.0);

  const Algebra nil = Algebra::create(support::nilpotent_spec());
  CHECK(nil.basis_product(0, 0) == CVector::Unit(2, 1));
  CHECK(nil.basis_product(0, 1).isZero());

  const Algebra z2 = finite_abelian_group_algebra({2});
  CHECK(z2.basis_product(1, 1) == CVector::Unit(2, 0));

  const Element x(c2, a), y(c2, b);
  CHECK((multiply(x, y).coeffs - ab).norm() == 0.0);
  CHECK(add(x, y).coeffs == CVector(a + b));
  CHECK(scale(Complex(0, 1), x).coeffs == CVector(Complex(0, 1) * a));
}

TEST_CASE("weighted l1 norm and its dual") {
  const Algebra c2 = support::c2();
  CVector a(2);
  a << 3.0, Complex(0.0, -4.0);
  CHECK(c2.norm(a) == doctest::Approx(7.0));
  const Algebra c2w = Algebra::create(support::c2_spec({2.0, 1.0}));
  CVector f(2);
  f << 2.0, 3.0;
  CHECK(c2w.dual_norm(f) == doctest::Approx(3.0));
  CHECK(c2.norm(CVector::Zero(2)) == 0.0);
  CHECK(c2.dual_norm(CVector::Zero(2)) == 0.0);
}

TEST_CASE("operator norms: exact column formula against a sampling lower bound") {
  const Algebra c2 = support::c2();
  const Algebra c = support::c1();
  CHECK(operator_norm(LinearMap(c2, c2, CMatrix::Identity(2, 2))) == doctest::Approx(1.0));
  CMatrix into(2, 1);
  into << 1.0, 0.0;
  CHECK(operator_norm(LinearMap(c, c2, into)) == doctest::Approx(1.0));
  CMatrix diag(2, 1);
  diag << 1.0, 1.0;
  const double exact = operator_norm(LinearMap(c, c2, diag));
  CHECK(exact == doctest::Approx(2.0));
  CHECK(support::sampled_operator_norm(diag, {1.0}, {1.0, 1.0}) == doctest::Approx(exact));

  // A dense map between weighted spaces: sampling never exceeds the exact
  // value and reaches it on a basis vector.
  CMatrix m(2, 3);
  m << Complex(1, 1), 0.5, -2.0, 0.25, Complex(0, -3), 1.0;
  const std::vector<double> sw{1.0, 2.0, 1.5}, tw{1.0, 0.5};
  const double e = operator_norm(m, sw, tw);
  const double sampled = support::sampled_operator_norm(m, sw, tw);
  CHECK(sampled <= e + 1e-12);
  CHECK(sampled == doctest::Approx(e));
}

TEST_CASE("left multiplication matrices") {
  const Algebra c2 = support::c2();
  CHECK(c2.left_matrix(*c2.unit()).isApprox(CMatrix::Identity(2, 2)));
  CVector a(2);
  a << 2.0, 5.0;
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 5.0;
  CHECK(c2.left_matrix(a) == d);
  const Algebra nil = Algebra::create(support::nilpotent_spec());
  CMatrix expected = CMatrix::Zero(2, 2);
  expected(1, 0) = 1.0;
  CHECK(nil.left_matrix(CVector::Unit(2, 0)) == expected);
  CHECK(left_mult_operator(Element::basis(nil, 0)).matrix == expected);
}

TEST_CASE("structure tensors from product tables round-trip") {
  const Algebra z3 = finite_abelian_group_algebra({3});
  std::vector<std::vector<CVector>> products(3, std::vector<CVector>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) products[i][j] = z3.basis_product(i, j);
  AlgebraSpec s = z3.spec();
  s.structure = structure_from_products(products);
  CHECK(Algebra::create(s).same_as(z3));
}

TEST_CASE("non-commutative algebras pass only with commutativity waived") {
  const Algebra m2 = support::matrix_algebra_m2();
  CHECK_FALSE(m2.commutative());
  CHECK_THROWS_AS(Algebra::create(m2.spec()), Error);
}
