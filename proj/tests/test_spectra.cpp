#include <doctest.h>

#include <numbers>

#include "banalg/spectra.hpp"
#include "support.hpp"

using namespace banalg;

namespace {

CharacterSet as_set(const std::vector<CVector>& vs) {
  CharacterSet s;
  for (const auto& v : vs) s.items.push_back({v, 0.0});
  return s;
}

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("characters of C2 are the coordinate projections") {
  const CharacterSet s = characters_numerical(support::c2());
  REQUIRE(s.size() == 2);
  const CharacterSet expected = as_set({vec({1.0, 0.0}), vec({0.0, 1.0})});
  CHECK(hausdorff_distance(s, expected) < 1e-12);
  CHECK(s.max_residual() < 1e-12);
  CHECK(is_semisimple(support::c2(), s));
  CHECK((gelfand(*support::c2().unit(), s) - CVector::Ones(2)).norm() < 1e-12);
}

TEST_CASE("the nilpotent algebra has no characters") {
  const Algebra nil = Algebra::create(support::nilpotent_spec());
  const CharacterSet s = characters_numerical(nil);
  CHECK(s.empty());
  CHECK_FALSE(is_semisimple(nil, s));
  CHECK(characters_numerical(support::zero_product(3)).empty());
}

TEST_CASE("l1(Z3): numerical characters against brute force over cube roots of unity") {
  const Algebra z3 = finite_abelian_group_algebra({3});
  const CharacterSet numerical = characters_numerical(z3);
  const CharacterSet brute = as_set(support::brute_force_group_characters(z3, {3}));
  REQUIRE(brute.size() == 3);
  REQUIRE(numerical.size() == 3);
  CHECK(hausdorff_distance(numerical, brute) <= 1e-10);
  for (const auto& c : numerical.items) CHECK(std::abs(std::pow(c.values(1), 3) - 1.0) < 1e-10);
  CHECK(hausdorff_distance(group_characters({3}), brute) <= 1e-12);
}

TEST_CASE("group characters of Z2 and Z2 x Z2") {
  const CharacterSet z2 = group_characters({2});
  CHECK(hausdorff_distance(z2, as_set({vec({1.0, 1.0}), vec({1.0, -1.0})})) < 1e-15);

  const Algebra k4 = finite_abelian_group_algebra({2, 2});
  const CharacterSet brute = as_set(support::brute_force_group_characters(k4, {2, 2}));
  REQUIRE(brute.size() == 4);
  for (const auto& c : brute.items)
    for (Eigen::Index g = 0; g < 4; ++g) CHECK(std::abs(std::abs(c.values(g).real()) - 1.0) < 1e-15);
  CHECK(hausdorff_distance(characters_numerical(k4), brute) <= 1e-10);
  CHECK(hausdorff_distance(group_characters({2, 2}), brute) <= 1e-12);
}

TEST_CASE("numerical and closed-form group characters agree on mixed groups") {
  for (const std::vector<int>& orders : std::vector<std::vector<int>>{{2, 3}, {4}, {2, 2, 2}, {5}}) {
    const Algebra g = finite_abelian_group_algebra(orders);
    const CharacterSet brute = as_set(support::brute_force_group_characters(g, orders));
    const CharacterSet numerical = characters_numerical(g);
    CHECK(numerical.size() == g.dim());
    CHECK(hausdorff_distance(numerical, brute) <= 1e-10);
    CHECK(match_characters(numerical, group_characters(orders), 1e-10).complete);
  }
}

TEST_CASE("psi on the pointwise semidirect fixture") {
  const ProductDescriptor d = support::pointwise_semidirect();
  const CVector phi = vec({1.0});  // alpha -> alpha on I
  const PsiResult psi = psi_of(phi, d);
  CHECK_FALSE(psi.zero);
  // phi((beta, beta)(1, 0)) = phi((beta, 0)) = beta.
  CHECK(std::abs(psi.values(0) - 1.0) < 1e-14);
  CHECK(psi.normalizer_discrepancy <= 1e-12);
}

TEST_CASE("psi vanishes under direct-sum actions") {
  const ProductDescriptor d = semidirect({support::c2(), support::c1("I"), {}});
  const PsiResult psi = psi_of(vec({1.0}), d);
  CHECK(psi.zero);
  CHECK(psi.values.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("psi is independent of the normalizer and satisfies phi(ab) = phi(a) psi(b)") {
  // C3 split as B = span{(1,1,1)} and the ideal I = {(x, y, 0)}, so each
  // character of I has a one-parameter family of normalizers.
  AlgebraSpec c3s;
  c3s.name = "C3";
  c3s.dim = 3;
  c3s.weights = {1.0, 1.0, 1.0};
  c3s.structure = {{0, 0, 0, 1.0}, {1, 1, 1, 1.0}, {2, 2, 2, 1.0}};
  c3s.unit = CVector::Ones(3);
  CMatrix b_basis(3, 1), i_basis(3, 2);
  b_basis << 1.0, 1.0, 1.0;
  i_basis << 1.0, 0.0, 0.0, 1.0, 0.0, 0.0;
  const ProductDescriptor d = semidirect(split_algebra(Algebra::create(c3s), b_basis, i_basis, {3.0}, {1.0, 1.0}));
  const CharacterSet di = characters_numerical(d.second);
  REQUIRE(di.size() == 2);
  const auto acts = i_times_b_actions(d);
  for (const auto& phi : di.items) {
    const PsiResult psi = psi_of(phi.values, d);
    CHECK_FALSE(psi.zero);
    CHECK(psi.normalizer_discrepancy <= 1e-12);
    CHECK(std::abs(psi.values(0) - 1.0) < 1e-12);
    double worst = 0.0;
    for (std::size_t i = 0; i < d.first.dim(); ++i)
      for (Eigen::Index j = 0; j < Eigen::Index(d.second.dim()); ++j) {
        const Complex lhs = (phi.values.transpose() * acts[i].col(j))(0);
        worst = std::max(worst, std::abs(lhs - phi.values(j) * psi.values(Eigen::Index(i))));
      }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("closed-form semidirect characters match numerical ones") {
  const ProductDescriptor d = support::pointwise_semidirect();
  const CharacterSet db = characters_numerical(d.first);
  const CharacterSet di = characters_numerical(d.second);
  const CharacterSet closed = characters_semidirect(d, db, di);
  CHECK(closed.provenance == Provenance::closed_form);
  REQUIRE(closed.size() == 2);
  CHECK(hausdorff_distance(closed, characters_numerical(d.algebra)) <= 1e-12);
  // Transport the projections of C2 through (b, a) -> (b + a, b).
  CMatrix iso(2, 2);
  iso << 1.0, 1.0, 1.0, 0.0;
  const CharacterSet pulled = as_set({CVector(iso.transpose() * vec({1.0, 0.0})), CVector(iso.transpose() * vec({0.0, 1.0}))});
  CHECK(hausdorff_distance(closed, pulled) < 1e-14);
  // E = (psi, phi) first, then F = (psi, 0).
  CHECK(std::abs(closed[0].values(1) - 1.0) < 1e-14);
  CHECK(std::abs(closed[1].values(1)) < 1e-14);
}

TEST_CASE("a nilpotent ideal contributes only F") {
  const ProductDescriptor d = semidirect({support::c2(), support::zero_product(2), {}});
  const CharacterSet closed =
      characters_semidirect(d, characters_numerical(d.first), characters_numerical(d.second));
  CHECK(closed.size() == 2);
  for (const auto& c : closed.items) CHECK(c.values.tail(2).isZero());
  CHECK(hausdorff_distance(closed, characters_numerical(d.algebra)) <= 1e-12);
}

TEST_CASE("Lau characters: (id, pi1), (0, pi1), (0, pi2)") {
  const ProductDescriptor d = support::lau_fixture();
  const CharacterSet closed =
      characters_lau(d, characters_numerical(d.first), characters_numerical(d.second));
  const CharacterSet numerical = characters_numerical(d.algebra);
  REQUIRE(closed.size() == 3);
  REQUIRE(numerical.size() == 3);
  const CharacterSet expected = as_set({vec({1.0, 1.0, 0.0}), vec({0.0, 1.0, 0.0}), vec({0.0, 0.0, 1.0})});
  CHECK(hausdorff_distance(closed, expected) < 1e-14);
  CHECK(hausdorff_distance(numerical, expected) <= 1e-10);
  CHECK((closed[0].values - expected[0].values).norm() < 1e-14);
}

TEST_CASE("Lau characters with phi = 0 are the direct-sum decomposition") {
  const ProductDescriptor d = lau_product(support::c1("A"), support::c2(), CMatrix::Zero(1, 2));
  const CharacterSet closed =
      characters_lau(d, characters_numerical(d.first), characters_numerical(d.second));
  const CharacterSet expected = as_set({vec({1.0, 0.0, 0.0}), vec({0.0, 1.0, 0.0}), vec({0.0, 0.0, 1.0})});
  CHECK(hausdorff_distance(closed, expected) < 1e-14);
  CHECK(closed[0].values.tail(2).isZero());
}

TEST_CASE("matching and lookup helpers") {
  const CharacterSet a = as_set({vec({1.0, 0.0}), vec({0.0, 1.0})});
  const CharacterSet b = as_set({vec({0.0, 1.0}), vec({1.0, 1e-9})});
  const CharacterMatch m = match_characters(a, b);
  CHECK(m.complete);
  CHECK(*m.a_to_b[0] == 1);
  CHECK(*m.a_to_b[1] == 0);
  CHECK(m.hausdorff == doctest::Approx(1e-9));
  CHECK(find_character(a, vec({0.0, 1.0})) == std::optional<std::size_t>(1));
  CHECK_FALSE(find_character(a, vec({0.5, 0.5})).has_value());
  CHECK(character_residual(support::c2(), vec({1.0, 0.0})) == 0.0);
  CHECK(character_residual(support::c2(), vec({2.0, 0.0})) == doctest::Approx(2.0));
}

TEST_CASE("character solver is deterministic for a fixed seed") {
  const Algebra g = finite_abelian_group_algebra({2, 3});
  const CharacterSet s1 = characters_numerical(g, {kAlgebraicTol, 3});
  const CharacterSet s2 = characters_numerical(g, {kAlgebraicTol, 3});
  REQUIRE(s1.size() == s2.size());
  CHECK(s1.matrix() == s2.matrix());
}
