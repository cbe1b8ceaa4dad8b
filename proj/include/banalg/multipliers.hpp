#pragma once

// Multiplier algebras and module-homomorphism spaces as null spaces of linear
// constraint systems, plus the four-block form of left multipliers on a
// semidirect product B (+) I.

#include <array>
#include <vector>

#include "banalg/algebra.hpp"
#include "banalg/constructions.hpp"
#include "banalg/linalg.hpp"
#include "banalg/spectra.hpp"

namespace banalg {

enum class MultiplierKind { left, two_sided, module_hom };

std::string_view to_string(MultiplierKind kind);

/// Orthonormal (Frobenius) basis of a solution space of linear maps.
struct MultiplierBasis {
  MultiplierKind kind = MultiplierKind::left;
  std::vector<CMatrix> basis;  // each target-dim x source-dim
  double max_residual = 0.0;   // of the defining constraints over the basis
  RVector singular_values;     // of the constraint matrix, for diagnostics

  std::size_t dim() const { return basis.size(); }
  /// Basis matrices stacked as columns of vec(T).
  CMatrix as_columns() const;
};

/// LM(A): T(xy) = x T(y), i.e. T L_i = L_i T for every basis operator L_i.
MultiplierBasis left_multiplier_space(const Algebra& algebra, double cutoff = linalg::kRankCutoff);
/// M(A): T(x) y = x T(y) on basis pairs.
MultiplierBasis multiplier_space(const Algebra& algebra, double cutoff = linalg::kRankCutoff);
/// Hom_B(X, Y) for left B-modules X, Y given by the operators of the basis of
/// B on each module: T P_i = Q_i T.
MultiplierBasis module_hom_space(const std::vector<CMatrix>& x_actions, const std::vector<CMatrix>& y_actions,
                                 double cutoff = linalg::kRankCutoff);

/// Constraint residuals, each relative to max(1, max |T_kl|).
double left_multiplier_residual(const Algebra& algebra, const CMatrix& t);
double multiplier_residual(const Algebra& algebra, const CMatrix& t);
double module_hom_residual(const std::vector<CMatrix>& x_actions, const std::vector<CMatrix>& y_actions,
                           const CMatrix& t);

struct OrderReport {
  bool without_order = false;
  std::size_t annihilator_dim = 0;  // dim {c : c x = 0 for all x}
};

OrderReport without_order(const Algebra& algebra);

/// T((b, a)) = (S_B(a) + T_B(b), R_I(a) + S_I(b)).
struct BlockDecomposition {
  CMatrix t_b;  // m x m
  CMatrix s_b;  // m x p
  CMatrix s_i;  // p x m
  CMatrix r_i;  // p x p
  /// T_B in LM(B), S_B in Hom_B(I,B), S_I in Hom_B(B,I), R_I in Hom_B(I,I)
  std::array<double, 4> membership_residuals{};
  /// relations (ii), (iii), (iv)
  std::array<double, 3> relation_residuals{};

  double max_relation_residual() const;
  double max_membership_residual() const;
};

/// Evaluate memberships and relations for a block tuple.
BlockDecomposition evaluate_blocks(CMatrix t_b, CMatrix s_b, CMatrix s_i, CMatrix r_i, const ProductDescriptor& desc);

/// Throws NOT_A_MULTIPLIER if T is not a left multiplier of the product.
BlockDecomposition decompose_left_multiplier(const CMatrix& t, const ProductDescriptor& desc,
                                             double tol = kAlgebraicTol);

/// Throws RELATIONS_VIOLATED naming the first failing item: (i) for a
/// membership, (ii)-(iv) for the relations.
CMatrix recompose(const BlockDecomposition& blocks, const ProductDescriptor& desc, double tol = kAlgebraicTol);

/// Null space of memberships plus relations (ii)-(iv) over all four blocks.
std::vector<BlockDecomposition> block_space(const ProductDescriptor& desc, double cutoff = linalg::kRankCutoff);

struct HatResult {
  CVector values;             // T-hat per character
  double consistency = 0.0;   // max over admissible basis c of |phi(Tc) - That(phi) phi(c)|
};

/// T-hat(phi) = phi(T c) / phi(c) for the basis element c maximizing |phi(c)|.
/// Throws UNDEFINED_AT when some character is (numerically) zero on the basis.
HatResult hat(const CMatrix& t, const CharacterSet& characters, double threshold = 1e-12);

}  // namespace banalg
