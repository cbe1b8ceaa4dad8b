#pragma once

// BSE norms of functions on a finite character set, the BSE-property verdict
// and the maps relating BSE functions on a Lau or semidirect product to those
// on its factors.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "banalg/algebra.hpp"
#include "banalg/conic.hpp"
#include "banalg/constructions.hpp"
#include "banalg/multipliers.hpp"
#include "banalg/spectra.hpp"

namespace banalg {

struct BSEOptions {
  double tol = kAlgebraicTol;
  double opt_tol = kOptimizationTol;  // relative primal/dual gap accepted as strong duality
  conic::SolverOptions solver;
};

/// A function on a character list with its BSE norm, realized as the least
/// weighted-l1 norm of an element whose Gelfand transform equals it.
struct BSEFunction {
  CVector values;
  double bse_norm = 0.0;
  CVector minimizer;
  CVector dual_certificate;
  double dual_value = 0.0;         // lower bound carried by the certificate
  double interpolation_residual = 0.0;
  bool unique_minimizer = true;
  bool semisimplicity_warning = false;  // character set smaller than dim
};

/// Throws RANK_DEFICIENT_CHARACTERS when the character matrix lacks full row rank.
BSEFunction bse_norm_primal(const CVector& values, const CharacterSet& characters, const Algebra& algebra,
                            const BSEOptions& options = {});

struct BSEDual {
  double value = 0.0;
  CVector c;
  double feasibility = 0.0;
};

/// Supremum of |sum_j c_j sigma_j| over dual_norm(sum_j c_j phi_j) <= 1,
/// computed without reference to interpolants.
BSEDual bse_norm_dual(const CVector& values, const CharacterSet& characters, const Algebra& algebra,
                      const BSEOptions& options = {});

struct BaiCertificate {
  CVector element;
  double norm = 0.0;
  double residual = 0.0;  // max_phi |phi(e) - 1|
};

/// Least-norm e with phi(e) = 1 on every character. Throws EMPTY_CHARACTER_SET.
BaiCertificate delta_weak_bai(const Algebra& algebra, const CharacterSet& characters, const BSEOptions& options = {});

struct BSEVerdict {
  bool bse = false;
  bool semisimple = false;
  std::size_t characters = 0;
  std::size_t multiplier_dim = 0;
  std::size_t hat_dim = 0;    // dim of the span of multiplier hats
  std::size_t c_bse_dim = 0;  // dim of the Gelfand image
  double hat_in_cbse = 0.0;   // gap from hats to the Gelfand image
  double cbse_in_hat = 0.0;   // gap from the Gelfand image to the hats
  double hat_consistency = 0.0;
  std::optional<CVector> witness;  // function in one space far from the other, when not BSE
};

/// Compares the Gelfand image with the span of multiplier hats. Throws
/// NOT_WITHOUT_ORDER when the algebra has a nonzero annihilator.
BSEVerdict check_bse_property(const Algebra& algebra, const CharacterSet& characters, double tol = kAlgebraicTol);

/// Character bookkeeping for a Lau product A x_phi B: the product's
/// characters are E (index j <-> delta_a[j]) followed by F (index j <-> delta_b[j]),
/// and gamma[j] is the index in delta_b of delta_a[j] o phi.
struct LauContext {
  ProductDescriptor desc;
  CharacterSet delta_a;
  CharacterSet delta_b;
  CharacterSet delta_product;
  std::vector<std::size_t> gamma;
  bool phi_surjective = false;
};

LauContext lau_context(const ProductDescriptor& desc, const CharacterSet& delta_a, const CharacterSet& delta_b,
                       double tol = kAlgebraicTol);

/// sigma on E then F -> (tau on delta_a, rho on delta_b). Throws PHI_NOT_SURJECTIVE.
std::pair<CVector, CVector> split_sigma(const CVector& sigma, const LauContext& ctx);
/// (tau, rho) -> sigma on E then F. Throws PHI_NOT_SURJECTIVE.
CVector join_tau_rho(const CVector& tau, const CVector& rho, const LauContext& ctx);
/// rho o Gamma on delta_a.
CVector phi_tilde(const CVector& rho, const LauContext& ctx);

struct ThetaReport {
  CVector sigma;
  double multiplicativity_residual = 0.0;
};

/// Theta(tau, rho) together with the homomorphism-law residual against a
/// second pair, using the product (t1 t2 + phi~(r1) t2 + t1 phi~(r2), r1 r2).
ThetaReport theta(const CVector& tau1, const CVector& rho1, const CVector& tau2, const CVector& rho2,
                  const LauContext& ctx);

struct SigmaExtension {
  CVector sigma;            // on characters_semidirect order (E then F)
  CVector witness;          // lifted interpolant (b, 0)
  double witness_norm = 0.0;
  double witness_residual = 0.0;
};

/// sigma(psi, 0) = rho(psi), sigma(psi_phi, phi) = rho(psi_phi). Throws
/// SPAN_CONDITION_FAILED when <IB> is a proper subspace of I.
SigmaExtension sigma_extension(const CVector& rho, const ProductDescriptor& desc, const CharacterSet& delta_b,
                               const CharacterSet& delta_i, const CVector& rho_minimizer, double tol = kAlgebraicTol);

struct TransportReport {
  std::size_t dim_lau = 0;
  std::size_t dim_direct = 0;
  std::size_t image_rank = 0;
  double membership_residual = 0.0;  // of Phi^-1 T Phi in M(A x_0 B)
  double hat_residual = 0.0;         // max |S-hat(gamma o Phi) - T-hat(gamma)|
  double character_map_residual = 0.0;  // Hausdorff distance of {gamma o Phi} to Delta(A x_0 B)
  double big_phi_norm = 0.0;
  double phi_norm = 0.0;
  bool bijection = false;
};

TransportReport phi_transport(const ProductDescriptor& lau, const CharacterSet& delta_a, const CharacterSet& delta_b,
                              double tol = kAlgebraicTol);

struct ProductBSEReport {
  ProductKind kind = ProductKind::direct_sum;
  // Empty when the algebra is not without order (outside the hypotheses).
  std::optional<BSEVerdict> first;
  std::optional<BSEVerdict> second;
  std::optional<BSEVerdict> product;
  std::optional<BSEVerdict> direct;  // A x_0 B, for Lau products
  bool consistent = false;
  bool hypotheses_hold = false;  // every relevant algebra is without order
  // M(A x_0 B) against M(A) x M(B); for semidirect descriptors these stay zero.
  std::size_t direct_multiplier_dim = 0;
  std::size_t split_multiplier_dim = 0;
  double off_diagonal = 0.0;
  double block_span_gap = 0.0;
  std::optional<TransportReport> transport;
};

/// Verdicts for both factors and the product and the consistency of the
/// product biconditionals. For semidirect products only the implication
/// "product BSE => B BSE" is checked.
ProductBSEReport verify_product_bse(const ProductDescriptor& desc, double tol = kAlgebraicTol);

}  // namespace banalg
