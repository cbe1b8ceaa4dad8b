#pragma once

// Character spaces of finite-dimensional commutative algebras: a numerical
// solver plus closed-form assembly for semidirect and Lau products.

#include <cstdint>
#include <optional>
#include <vector>

#include "banalg/algebra.hpp"
#include "banalg/constructions.hpp"

namespace banalg {

enum class Provenance { numerical, closed_form };

std::string_view to_string(Provenance p);

/// A nonzero multiplicative functional stored by its values on the basis.
struct Character {
  CVector values;
  double residual = 0.0;  // max_{i,j} |chi(e_i e_j) - chi(e_i) chi(e_j)|
};

struct CharacterSet {
  std::vector<Character> items;
  Provenance provenance = Provenance::numerical;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  const Character& operator[](std::size_t i) const { return items[i]; }
  /// |S| x n matrix, row j holding the values of character j.
  CMatrix matrix() const;
  double max_residual() const;
};

double character_residual(const Algebra& algebra, const CVector& values);

struct CharacterOptions {
  double tol = kAlgebraicTol;
  std::uint64_t seed = 0;
  int retries = 5;
  double separation = 1e-6;  // minimal relative eigenvalue gap of the generic element
};

/// All characters of a commutative algebra.
///
/// The trace form (x, y) -> tr(L_{xy}) equals sum_chi d_chi chi(x) chi(y)
/// with positive multiplicities, so its column space is exactly the span of
/// the characters. The transposed left-multiplication operators leave that
/// span invariant and are simultaneously diagonal on it with the characters as
/// eigenvectors; a random generic combination separates them. Each candidate
/// is rescaled, polished by Gauss-Newton on the multiplicativity equations and
/// verified. Throws ILL_CONDITIONED after `retries` fresh generic elements fail
/// the separation test.
CharacterSet characters_numerical(const Algebra& algebra, const CharacterOptions& options = {});

/// Closed-form characters of l1(Z_{n_1} x ... ) in the basis order used by
/// finite_abelian_group_algebra.
CharacterSet group_characters(const std::vector<int>& orders);

struct PsiResult {
  CVector values;          // psi_phi on the B-basis
  bool zero = false;       // psi_phi vanishes identically
  double normalizer_discrepancy = 0.0;  // between two independent choices of a0
};

/// psi_phi(b) = phi(b a0) for any a0 in I with phi(a0) = 1.
PsiResult psi_of(const CVector& phi_on_i, const ProductDescriptor& semidirect_desc, double tol = kAlgebraicTol);

/// E = {(psi_phi, phi) : phi in Delta(I)}, F = {(psi, 0) : psi in Delta(B)},
/// returned as E followed by F.
CharacterSet characters_semidirect(const ProductDescriptor& desc, const CharacterSet& delta_b,
                                   const CharacterSet& delta_i, double tol = kAlgebraicTol);

/// E = {(phi, phi o phi_map) : phi in Delta(A)}, F = {(0, psi) : psi in Delta(B)},
/// returned as E followed by F.
CharacterSet characters_lau(const ProductDescriptor& desc, const CharacterSet& delta_a, const CharacterSet& delta_b);

bool is_semisimple(const Algebra& algebra, const CharacterSet& characters);
CVector gelfand(const CVector& a, const CharacterSet& characters);

struct CharacterMatch {
  std::vector<std::optional<std::size_t>> a_to_b;  // greedy nearest neighbour in sup norm
  double hausdorff = 0.0;
  bool complete = false;  // equal sizes and every element matched within threshold
};

/// Greedy nearest-neighbour matching; pairs farther apart than `threshold` stay
/// unmatched. Ties resolve to the lower index.
CharacterMatch match_characters(const CharacterSet& a, const CharacterSet& b, double threshold = 1e-6);

double hausdorff_distance(const CharacterSet& a, const CharacterSet& b);

/// Index of the character in `set` closest to `values` in sup norm, if within threshold.
std::optional<std::size_t> find_character(const CharacterSet& set, const CVector& values, double threshold = 1e-6);

}  // namespace banalg
