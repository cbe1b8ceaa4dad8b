#include <doctest.h>

#include "banalg/constructions.hpp"
#include "support.hpp"

using namespace banalg;

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("pointwise semidirect product is C2 through (b, a) -> (b + a, b)") {
  const ProductDescriptor d = support::pointwise_semidirect();
  REQUIRE(d.kind == ProductKind::semidirect);
  REQUIRE(d.algebra.dim() == 2);
  // Coordinates of the product: index 0 is the B-coefficient beta, index 1
  // the I-coefficient alpha. The element beta(1,1) + alpha(1,0) of C2 has
  // coordinates (beta + alpha, beta).
  CMatrix iso(2, 2);
  iso << 1.0, 1.0, 1.0, 0.0;
  const Algebra c2 = support::c2();
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const CVector lhs = iso * d.algebra.basis_product(i, j);
      const CVector rhs = c2.product(iso.col(Eigen::Index(i)), iso.col(Eigen::Index(j)));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  CHECK(worst == 0.0);
  CHECK(validate(d.algebra.spec()).accepted);
}

TEST_CASE("zero actions on a nil ideal give a direct sum that validates") {
  SemidirectSpec s{support::c1("B"), support::zero_product(2), {}};
  const ProductDescriptor d = semidirect(s);
  CHECK(d.algebra.dim() == 3);
  CHECK(validate(d.algebra.spec()).accepted);
  CHECK(d.algebra.basis_product(0, 0) == CVector::Unit(3, 0));
  for (std::size_t i = 1; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(d.algebra.basis_product(i, j).isZero());
}

TEST_CASE("an action breaking (bb')a = b(b'a) is rejected") {
  // B = C2, I = C. Let b_0 act by 1 and b_1 by 1: then (b_0 b_1) . a = 0 but
  // b_0 . (b_1 . a) = a.
  ActionTensors act;
  act.b_on_i = {{0, 0, 0, 1.0}, {1, 0, 0, 1.0}};
  act.i_on_b = {{0, 0, 0, 1.0}, {0, 1, 0, 1.0}};
  try {
    semidirect({support::c2(), support::c1("I"), act});
    FAIL("expected INVALID_ACTION");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_action);
  }
}

TEST_CASE("a one-sided action is rejected") {
  // b . a = a with a . b = 0 on I = C: (a b) a = 0 while a (b a) = a.
  ActionTensors act;
  act.b_on_i = {{0, 0, 0, 1.0}};
  try {
    semidirect({support::c1("B"), support::c1("I"), act});
    FAIL("expected INVALID_ACTION");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_action);
  }
}

TEST_CASE("Lau product with phi = 0 has the direct-sum tensor") {
  const Algebra a = support::c1("A");
  const Algebra b = support::c2();
  const ProductDescriptor lau = lau_product(a, b, CMatrix::Zero(1, 2));
  const ProductDescriptor ds = direct_sum(a, b);
  CHECK(lau.algebra.spec().structure == ds.algebra.spec().structure);
  CHECK(ds.kind == ProductKind::direct_sum);
}

TEST_CASE("Lau product A = C, B = C2, phi(b) = b1") {
  const ProductDescriptor d = support::lau_fixture();
  REQUIRE(d.algebra.dim() == 3);
  CHECK(d.kind == ProductKind::lau);
  CVector x(3), y(3), xy(3);
  x << 1.0, 0.0, 0.0;
  y << 0.0, 1.0, 0.0;
  xy << 1.0, 0.0, 0.0;
  CHECK(d.algebra.product(x, y) == xy);
  // The general formula (aa' + phi(b)a' + a phi(b'), bb') on random elements.
  CVector u(3), v(3);
  u << Complex(1, 2), 3.0, Complex(0, -1);
  v << 0.5, Complex(2, 1), 4.0;
  CVector expected(3);
  const Complex a = u(0), a2 = v(0);
  const Complex pb = u(1), pb2 = v(1);
  expected << a * a2 + pb * a2 + a * pb2, u(1) * v(1), u(2) * v(2);
  CHECK((d.algebra.product(u, v) - expected).norm() < 1e-14);
  CHECK(validate(d.algebra.spec()).accepted);
}

TEST_CASE("a non-contractive phi is refused unless forced") {
  const Algebra a = support::c2();
  const Algebra b = support::c1("B");
  CMatrix phi(2, 1);
  phi << 1.0, 1.0;
  CHECK(support::sampled_operator_norm(phi, {1.0}, {1.0, 1.0}) == doctest::Approx(2.0));
  try {
    lau_product(a, b, phi);
    FAIL("expected NOT_CONTRACTIVE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_contractive);
  }
  const ProductDescriptor forced = lau_product(a, b, phi, {kAlgebraicTol, true});
  CHECK(forced.forced);
}

TEST_CASE("a non-multiplicative phi is refused") {
  CMatrix phi(1, 1);
  phi << 0.5;
  try {
    lau_product(support::c1("A"), support::c1("B"), phi);
    FAIL("expected NOT_HOMOMORPHISM");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_homomorphism);
  }
}

TEST_CASE("direct sum of C and C is C2") {
  const ProductDescriptor d = direct_sum(support::c1("A"), support::c1("B"));
  CHECK(d.algebra.spec().structure == support::c2_spec().structure);
  CHECK(d.algebra.weights() == std::vector<double>{1.0, 1.0});
}

TEST_CASE("the phi isomorphism") {
  SUBCASE("phi = 0 gives the identity") {
    const PhiIsomorphism iso = phi_isomorphism(support::c1("A"), support::c2(), CMatrix::Zero(1, 2));
    CHECK(iso.forward.matrix == CMatrix::Identity(3, 3));
    CHECK(iso.inverse.matrix == CMatrix::Identity(3, 3));
  }
  SUBCASE("phi(b) = b1") {
    CMatrix phi(1, 2);
    phi << 1.0, 0.0;
    const PhiIsomorphism iso = phi_isomorphism(support::c1("A"), support::c2(), phi);
    CVector x(3), fx(3);
    x << 7.0, 2.0, 5.0;
    fx << 5.0, 2.0, 5.0;
    CHECK(iso.forward(x) == fx);
    CHECK(iso.forward.matrix * iso.inverse.matrix == CMatrix::Identity(3, 3));
    CHECK(iso.multiplicativity_residual <= 1e-12);
    CHECK(iso.phi_norm == doctest::Approx(1.0));
    const double sampled = support::sampled_operator_norm(iso.forward.matrix, {1, 1, 1}, {1, 1, 1});
    CHECK(iso.norm == doctest::Approx(sampled));
    CHECK(iso.norm <= iso.phi_norm + 1.0);
    // Multiplicativity by direct expansion on a random pair.
    CVector u(3), v(3);
    u << Complex(1, 1), 2.0, -1.0;
    v << 3.0, Complex(0, 1), 0.5;
    const CVector lhs = iso.forward(iso.direct.algebra.product(u, v));
    const CVector rhs = iso.lau.algebra.product(iso.forward(u), iso.forward(v));
    CHECK((lhs - rhs).norm() < 1e-13);
  }
}

TEST_CASE("finite abelian group algebras") {
  const Algebra z2 = finite_abelian_group_algebra({2});
  CHECK(z2.dim() == 2);
  CHECK(z2.basis_product(1, 1) == CVector::Unit(2, 0));
  const Algebra z23 = finite_abelian_group_algebra({2, 3});
  CHECK(z23.dim() == 6);
  // Index g has digits (g / 3, g % 3): (1, 2) * (1, 2) = (0, 1).
  CHECK(z23.basis_product(5, 5) == CVector::Unit(6, 1));
  CHECK(validate(z23.spec()).accepted);
  CHECK(support::associativity_by_contraction(z23.spec()) == 0.0);
  CHECK_THROWS_AS(finite_abelian_group_algebra({}), Error);
  CHECK_THROWS_AS(finite_abelian_group_algebra({0}), Error);
}

TEST_CASE("check_homomorphism") {
  const Algebra c = support::c1();
  const Algebra c2 = support::c2();
  HomomorphismReport r = check_homomorphism(LinearMap(c, c2, CMatrix::Zero(2, 1)));
  CHECK(r.homomorphism);
  CHECK(r.norm == 0.0);
  CMatrix m(2, 1);
  m << 1.0, 0.0;
  r = check_homomorphism(LinearMap(c, c2, m));
  CHECK(r.homomorphism);
  CHECK(r.contractive);
  CHECK(r.norm == doctest::Approx(1.0));
  m << 0.5, 0.0;
  r = check_homomorphism(LinearMap(c, c2, m));
  CHECK_FALSE(r.homomorphism);
  // phi(1 * 1) - phi(1) phi(1) = 1/2 - 1/4.
  CHECK(r.residual == doctest::Approx(0.25));
}

TEST_CASE("Lau products read as semidirect products") {
  const ProductDescriptor lau = support::lau_fixture();
  const ProductDescriptor sd = lau_as_semidirect(lau);
  CHECK(sd.kind == ProductKind::semidirect);
  CHECK(sd.first.same_as(lau.second));
  CHECK(sd.second.same_as(lau.first));
  // The coordinate permutation (b, a) -> (a, b) intertwines the products.
  CMatrix perm = CMatrix::Zero(3, 3);
  perm(0, 2) = 1.0;
  perm(1, 0) = 1.0;
  perm(2, 1) = 1.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      worst = std::max(worst, max_abs(perm * sd.algebra.basis_product(i, j) -
                                      lau.algebra.product(perm.col(Eigen::Index(i)), perm.col(Eigen::Index(j)))));
  CHECK(worst < 1e-14);
}

TEST_CASE("span ranks") {
  const ProductDescriptor d = support::pointwise_semidirect();
  CHECK(ideal_module_span_rank(d) == 1);
  CHECK(ideal_square_span_rank(d) == 1);
  const ProductDescriptor nil = semidirect({support::c1("B"), support::zero_product(2), {}});
  CHECK(ideal_module_span_rank(nil) == 0);
  CHECK(ideal_square_span_rank(nil) == 0);
}

TEST_CASE("embeddings are coordinate inclusions") {
  const ProductDescriptor d = support::lau_fixture();
  const CMatrix e1 = d.first_embedding();
  const CMatrix e2 = d.second_embedding();
  CHECK(e1.rows() == 3);
  CHECK(e1.cols() == 1);
  CHECK(e2.cols() == 2);
  CHECK(e1(0, 0) == Complex(1.0));
  CHECK(e2(1, 0) == Complex(1.0));
  CHECK(e2(2, 1) == Complex(1.0));
}
