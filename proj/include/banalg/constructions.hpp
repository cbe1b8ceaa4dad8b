#pragma once

// Product algebras built from smaller ones, each returned together with a
// descriptor that records where it came from.
//
// Basis order conventions:
//   semidirect B (+) I : B-block first, then I-block, matching pairs (b, a).
//   Lau / direct sum   : A-block first, then B-block, matching pairs (a, b).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "banalg/algebra.hpp"

namespace banalg {

enum class ProductKind { semidirect, lau, direct_sum };

std::string_view to_string(ProductKind kind);

/// Module actions between a subalgebra B (dim m) and an ideal I (dim p).
/// b_on_i entry (i, j, k, c): b_i . a_j contributes c a_k.
/// i_on_b entry (j, i, k, c): a_j . b_i contributes c a_k.
struct ActionTensors {
  std::vector<StructureEntry> b_on_i;
  std::vector<StructureEntry> i_on_b;
};

struct SemidirectSpec {
  Algebra b;
  Algebra i;
  ActionTensors actions;
};

struct ProductDescriptor {
  ProductKind kind = ProductKind::semidirect;
  Algebra algebra;  // assembled product
  /// semidirect: (B, I); Lau and direct sum: (A, B)
  Algebra first;
  Algebra second;
  std::optional<CMatrix> phi;     // Lau: dim A x dim B
  std::optional<ActionTensors> actions;  // semidirect only
  bool forced = false;            // Lau built from a non-contractive phi under --force

  std::size_t first_dim() const { return first.dim(); }
  std::size_t second_dim() const { return second.dim(); }
  /// Coordinate embeddings of the two factors (isometric for the l1-sum norm).
  CMatrix first_embedding() const;
  CMatrix second_embedding() const;
};

/// Operators attached to a semidirect descriptor.
/// left_action(i):  p x p matrix of a -> b_i . a
/// right_action(k): p x m matrix of b -> a_k . b
/// i_times_b(i):    p x p matrix of a -> a . b_i
std::vector<CMatrix> b_left_actions(const ProductDescriptor& desc);
std::vector<CMatrix> i_right_actions(const ProductDescriptor& desc);
std::vector<CMatrix> i_times_b_actions(const ProductDescriptor& desc);

ProductDescriptor semidirect(const SemidirectSpec& spec, double tol = kAlgebraicTol);

struct LauOptions {
  double tol = kAlgebraicTol;
  bool force = false;  // accept a non-contractive phi
};

ProductDescriptor lau_product(const Algebra& a, const Algebra& b, const CMatrix& phi, const LauOptions& options = {});
ProductDescriptor direct_sum(const Algebra& a, const Algebra& b);

/// A Lau product A x_phi B read as the semidirect product B (+) A (the
/// ideal A, the subalgebra B), with the basis reordered B-block first.
ProductDescriptor lau_as_semidirect(const ProductDescriptor& lau);

/// Splits `algebra` along a subalgebra basis and an ideal basis (columns in
/// the algebra's coordinates). Weights for the two pieces are supplied.
SemidirectSpec split_algebra(const Algebra& algebra, const CMatrix& b_basis, const CMatrix& i_basis,
                             std::vector<double> b_weights, std::vector<double> i_weights,
                             double tol = kAlgebraicTol);

struct PhiIsomorphism {
  LinearMap forward;  // A x_0 B -> A x_phi B, (a, b) -> (a - phi(b), b)
  LinearMap inverse;  // (a, b) -> (a + phi(b), b)
  double norm = 0.0;  // operator norm of forward
  double phi_norm = 0.0;
  double multiplicativity_residual = 0.0;  // both directions, basis pairs
  ProductDescriptor direct;
  ProductDescriptor lau;
};

PhiIsomorphism phi_isomorphism(const Algebra& a, const Algebra& b, const CMatrix& phi,
                               const LauOptions& options = {});

/// l1(Z_{n_1} x ... x Z_{n_r}) under convolution, all weights 1. Basis
/// element index g corresponds to the mixed-radix digits of g (first order
/// varies slowest).
Algebra finite_abelian_group_algebra(const std::vector<int>& orders);

struct HomomorphismReport {
  double residual = 0.0;  // max_{i,j} |phi(e_i e_j) - phi(e_i) phi(e_j)|
  double norm = 0.0;
  bool homomorphism = false;
  bool contractive = false;
};

HomomorphismReport check_homomorphism(const LinearMap& phi, double tol = kAlgebraicTol);

/// Rank of span{a . b : a in I, b in B} inside I; equal to dim I when the
/// span condition <IB> = I holds.
std::size_t ideal_module_span_rank(const ProductDescriptor& semidirect_desc);
/// Rank of span{a a'} inside I.
std::size_t ideal_square_span_rank(const ProductDescriptor& semidirect_desc);

}  // namespace banalg
