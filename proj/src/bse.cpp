#include "banalg/bse.hpp"

#include <algorithm>
#include <cmath>

#include "banalg/linalg.hpp"

namespace banalg {

namespace {

using Idx = Eigen::Index;

RVector weight_vector(const Algebra& algebra) {
  return Eigen::Map<const RVector>(algebra.weights().data(), Idx(algebra.dim()));
}

CMatrix checked_character_matrix(const CharacterSet& characters, const Algebra& algebra, const CVector& values) {
  if (values.size() != Idx(characters.size())) {
    throw Error(ErrorCode::shape_mismatch, "sigma has " + std::to_string(values.size()) + " values for " +
                                               std::to_string(characters.size()) + " characters");
  }
  if (characters.empty()) return CMatrix(0, Idx(algebra.dim()));
  CMatrix a = characters.matrix();
  if (a.cols() != Idx(algebra.dim())) throw Error(ErrorCode::shape_mismatch, "characters do not live on this algebra");
  if (linalg::rank(a) < characters.size()) {
    throw Error(ErrorCode::rank_deficient_characters, "character matrix has rank below " + std::to_string(characters.size()));
  }
  return a;
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::optional<BSEVerdict> verdict_if_without_order(const Algebra& algebra, const CharacterSet& characters, double tol) {
  if (!without_order(algebra).without_order) return std::nullopt;
  return check_bse_property(algebra, characters, tol);
}

void require_surjective(const LauContext& ctx) {
  if (!ctx.phi_surjective) throw Error(ErrorCode::phi_not_surjective, "phi does not map onto A");
}

}  // namespace

BSEFunction bse_norm_primal(const CVector& values, const CharacterSet& characters, const Algebra& algebra,
                            const BSEOptions& options) {
  const CMatrix a = checked_character_matrix(characters, algebra, values);
  const RVector w = weight_vector(algebra);
  BSEFunction out;
  out.values = values;
  out.semisimplicity_warning = characters.size() < algebra.dim();
  const conic::PrimalResult r = conic::minimize_weighted_l1(a, values, w, options.solver);
  out.bse_norm = r.value;
  out.minimizer = r.x;
  out.dual_certificate = r.certificate;
  out.dual_value = r.certificate_value;
  out.interpolation_residual = r.interpolation_residual;
  out.unique_minimizer = characters.empty() || conic::unique_minimizer(a, r.certificate, w);
  return out;
}

BSEDual bse_norm_dual(const CVector& values, const CharacterSet& characters, const Algebra& algebra,
                      const BSEOptions& options) {
  const CMatrix a = checked_character_matrix(characters, algebra, values);
  const conic::DualResult r = conic::maximize_dual(a, values, weight_vector(algebra), options.solver);
  return {r.value, r.c, r.feasibility};
}

BaiCertificate delta_weak_bai(const Algebra& algebra, const CharacterSet& characters, const BSEOptions& options) {
  if (characters.empty()) throw Error(ErrorCode::empty_character_set, "no characters to interpolate");
  const CVector ones = CVector::Ones(Idx(characters.size()));
  const BSEFunction f = bse_norm_primal(ones, characters, algebra, options);
  BaiCertificate out;
  out.element = f.minimizer;
  out.norm = f.bse_norm;
  out.residual = (gelfand(f.minimizer, characters) - ones).cwiseAbs().maxCoeff();
  return out;
}

BSEVerdict check_bse_property(const Algebra& algebra, const CharacterSet& characters, double tol) {
  const OrderReport order = without_order(algebra);
  if (!order.without_order) {
    throw Error(ErrorCode::not_without_order, "annihilator has dimension " + std::to_string(order.annihilator_dim));
  }
  BSEVerdict out;
  out.characters = characters.size();
  out.semisimple = is_semisimple(algebra, characters);
  const MultiplierBasis m = multiplier_space(algebra);
  out.multiplier_dim = m.dim();
  if (characters.empty()) {
    out.bse = true;
    return out;
  }
  const Idx k = Idx(characters.size());
  CMatrix hats(k, Idx(m.dim()));
  for (std::size_t j = 0; j < m.dim(); ++j) {
    const HatResult h = hat(m.basis[j], characters);
    hats.col(Idx(j)) = h.values;
    out.hat_consistency = std::max(out.hat_consistency, h.consistency);
  }
  const CMatrix hat_space = linalg::column_space(hats);
  const CMatrix gelfand_image = linalg::column_space(characters.matrix());
  out.hat_dim = std::size_t(hat_space.cols());
  out.c_bse_dim = std::size_t(gelfand_image.cols());
  out.hat_in_cbse = linalg::subspace_gap(hat_space, gelfand_image);
  out.cbse_in_hat = linalg::subspace_gap(gelfand_image, hat_space);
  out.bse = out.hat_in_cbse <= tol && out.cbse_in_hat <= tol;
  if (!out.bse) {
    const bool from_hats = out.hat_in_cbse > out.cbse_in_hat;
    const CMatrix& src = from_hats ? hat_space : gelfand_image;
    const CMatrix& dst = from_hats ? gelfand_image : hat_space;
    double worst = -1.0;
    for (Idx c = 0; c < src.cols(); ++c) {
      const double d = linalg::distance_to_span(src.col(c), dst);
      if (d > worst) {
        worst = d;
        out.witness = CVector(src.col(c));
      }
    }
  }
  return out;
}

LauContext lau_context(const ProductDescriptor& desc, const CharacterSet& delta_a, const CharacterSet& delta_b,
                       double tol) {
  if (!desc.phi) throw Error(ErrorCode::shape_mismatch, "lau_context needs a Lau or direct-sum descriptor");
  LauContext ctx{desc, delta_a, delta_b, characters_lau(desc, delta_a, delta_b), {}, false};
  const CMatrix& phi = *desc.phi;
  if (linalg::rank(phi) < desc.first.dim()) return ctx;
  for (std::size_t j = 0; j < delta_a.size(); ++j) {
    const CVector composed = phi.transpose() * delta_a[j].values;
    const auto hit = find_character(delta_b, composed, std::max(1e-6, tol));
    if (!hit) throw Error(ErrorCode::ill_conditioned, "phi_A o phi not found among the characters of B");
    ctx.gamma.push_back(*hit);
  }
  ctx.phi_surjective = true;
  return ctx;
}

std::pair<CVector, CVector> split_sigma(const CVector& sigma, const LauContext& ctx) {
  require_surjective(ctx);
  const Idx na = Idx(ctx.delta_a.size()), nb = Idx(ctx.delta_b.size());
  if (sigma.size() != na + nb) throw Error(ErrorCode::shape_mismatch, "sigma must be given on E followed by F");
  CVector rho = sigma.tail(nb);
  CVector tau(na);
  for (Idx j = 0; j < na; ++j) tau(j) = sigma(j) - rho(Idx(ctx.gamma[std::size_t(j)]));
  return {tau, rho};
}

CVector join_tau_rho(const CVector& tau, const CVector& rho, const LauContext& ctx) {
  require_surjective(ctx);
  const Idx na = Idx(ctx.delta_a.size()), nb = Idx(ctx.delta_b.size());
  if (tau.size() != na || rho.size() != nb) throw Error(ErrorCode::shape_mismatch, "tau/rho lengths do not match the factors");
  CVector sigma(na + nb);
  for (Idx j = 0; j < na; ++j) sigma(j) = tau(j) + rho(Idx(ctx.gamma[std::size_t(j)]));
  sigma.tail(nb) = rho;
  return sigma;
}

CVector phi_tilde(const CVector& rho, const LauContext& ctx) {
  require_surjective(ctx);
  if (rho.size() != Idx(ctx.delta_b.size())) throw Error(ErrorCode::shape_mismatch, "rho length does not match Delta(B)");
  CVector out(Idx(ctx.delta_a.size()));
  for (std::size_t j = 0; j < ctx.gamma.size(); ++j) out(Idx(j)) = rho(Idx(ctx.gamma[j]));
  return out;
}

ThetaReport theta(const CVector& tau1, const CVector& rho1, const CVector& tau2, const CVector& rho2,
                  const LauContext& ctx) {
  ThetaReport out;
  out.sigma = join_tau_rho(tau1, rho1, ctx);
  const CVector sigma2 = join_tau_rho(tau2, rho2, ctx);
  const CVector ft1 = phi_tilde(rho1, ctx), ft2 = phi_tilde(rho2, ctx);
  const CVector tau12 = tau1.cwiseProduct(tau2) + ft1.cwiseProduct(tau2) + tau1.cwiseProduct(ft2);
  const CVector rho12 = rho1.cwiseProduct(rho2);
  const CVector lhs = join_tau_rho(tau12, rho12, ctx);
  const CVector rhs = out.sigma.cwiseProduct(sigma2);
  out.multiplicativity_residual = lhs.size() ? (lhs - rhs).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

SigmaExtension sigma_extension(const CVector& rho, const ProductDescriptor& desc, const CharacterSet& delta_b,
                               const CharacterSet& delta_i, const CVector& rho_minimizer, double tol) {
  if (desc.kind != ProductKind::semidirect) throw Error(ErrorCode::shape_mismatch, "sigma_extension needs a semidirect descriptor");
  const std::size_t p = desc.second.dim();
  const std::size_t span = ideal_module_span_rank(desc);
  if (span < p) {
    throw Error(ErrorCode::span_condition_failed, "<IB> has rank " + std::to_string(span) + " < dim I = " + std::to_string(p));
  }
  if (rho.size() != Idx(delta_b.size()) || rho_minimizer.size() != Idx(desc.first.dim())) {
    throw Error(ErrorCode::shape_mismatch, "rho or its interpolant has the wrong length");
  }
  SigmaExtension out;
  const Idx ne = Idx(delta_i.size()), nf = Idx(delta_b.size());
  out.sigma.resize(ne + nf);
  for (Idx j = 0; j < ne; ++j) {
    const PsiResult psi = psi_of(delta_i[std::size_t(j)].values, desc, tol);
    const auto hit = find_character(delta_b, psi.values);
    if (!hit) throw Error(ErrorCode::ill_conditioned, "psi_phi not found among the characters of B");
    out.sigma(j) = rho(Idx(*hit));
  }
  out.sigma.tail(nf) = rho;
  out.witness = CVector::Zero(Idx(desc.algebra.dim()));
  out.witness.head(rho_minimizer.size()) = rho_minimizer;
  out.witness_norm = desc.algebra.norm(out.witness);
  const CharacterSet product = characters_semidirect(desc, delta_b, delta_i, tol);
  const CVector image = gelfand(out.witness, product);
  out.witness_residual = image.size() ? (image - out.sigma).cwiseAbs().maxCoeff() : 0.0;
  return out;
}

TransportReport phi_transport(const ProductDescriptor& lau, const CharacterSet& delta_a, const CharacterSet& delta_b,
                              double tol) {
  if (!lau.phi) throw Error(ErrorCode::shape_mismatch, "phi_transport needs a Lau descriptor");
  const PhiIsomorphism iso = phi_isomorphism(lau.first, lau.second, *lau.phi, {tol, lau.forced});
  TransportReport out;
  out.big_phi_norm = iso.norm;
  out.phi_norm = iso.phi_norm;

  const MultiplierBasis m_lau = multiplier_space(lau.algebra);
  const MultiplierBasis m_dir = multiplier_space(iso.direct.algebra);
  out.dim_lau = m_lau.dim();
  out.dim_direct = m_dir.dim();

  const CharacterSet chars_lau = characters_lau(lau, delta_a, delta_b);
  CharacterSet pulled;
  pulled.provenance = Provenance::closed_form;
  for (const auto& gamma : chars_lau.items) {
    const CVector v = iso.forward.matrix.transpose() * gamma.values;
    pulled.items.push_back({v, character_residual(iso.direct.algebra, v)});
  }
  out.character_map_residual = hausdorff_distance(pulled, characters_lau(iso.direct, delta_a, delta_b));

  std::vector<CMatrix> transported;
  for (const auto& t : m_lau.basis) {
    const CMatrix s = iso.inverse.matrix * t * iso.forward.matrix;
    out.membership_residual = std::max(out.membership_residual, multiplier_residual(iso.direct.algebra, s));
    if (!chars_lau.empty()) {
      const CVector diff = hat(s, pulled).values - hat(t, chars_lau).values;
      out.hat_residual = std::max(out.hat_residual, diff.cwiseAbs().maxCoeff());
    }
    transported.push_back(s);
  }
  if (!transported.empty()) {
    CMatrix cols(transported.front().size(), Idx(transported.size()));
    for (std::size_t j = 0; j < transported.size(); ++j) cols.col(Idx(j)) = linalg::vec(transported[j]);
    out.image_rank = linalg::rank(cols);
  }
  out.bijection = out.image_rank == out.dim_lau && out.dim_lau == out.dim_direct;
  return out;
}

ProductBSEReport verify_product_bse(const ProductDescriptor& desc, double tol) {
  ProductBSEReport out;
  out.kind = desc.kind;
  CharacterOptions copts;
  copts.tol = tol;
  const CharacterSet d1 = characters_numerical(desc.first, copts);
  const CharacterSet d2 = characters_numerical(desc.second, copts);

  if (desc.kind == ProductKind::semidirect) {
    const CharacterSet dp = characters_semidirect(desc, d1, d2, tol);
    out.first = verdict_if_without_order(desc.first, d1, tol);
    out.second = verdict_if_without_order(desc.second, d2, tol);
    out.product = verdict_if_without_order(desc.algebra, dp, tol);
    out.hypotheses_hold = out.first && out.product;
    out.consistent = out.hypotheses_hold && (!out.product->bse || out.first->bse);
    return out;
  }

  const CharacterSet dp = characters_lau(desc, d1, d2);
  out.first = verdict_if_without_order(desc.first, d1, tol);
  out.second = verdict_if_without_order(desc.second, d2, tol);
  out.product = verdict_if_without_order(desc.algebra, dp, tol);
  const ProductDescriptor dsum = direct_sum(desc.first, desc.second);
  if (desc.kind == ProductKind::lau) {
    out.direct = verdict_if_without_order(dsum.algebra, characters_lau(dsum, d1, d2), tol);
  }
  out.hypotheses_hold = out.first && out.second && out.product && (desc.kind != ProductKind::lau || out.direct);
  if (out.hypotheses_hold) {
    const bool both = out.first->bse && out.second->bse;
    out.consistent = out.product->bse == both && (!out.direct || out.direct->bse == both);
  }

  // M(A x_0 B) against M(A) x M(B).
  const MultiplierBasis m_sum = multiplier_space(dsum.algebra);
  const MultiplierBasis m_a = multiplier_space(desc.first);
  const MultiplierBasis m_b = multiplier_space(desc.second);
  const Idx p = Idx(desc.first.dim()), q = Idx(desc.second.dim());
  out.direct_multiplier_dim = m_sum.dim();
  out.split_multiplier_dim = m_a.dim() + m_b.dim();
  for (const auto& t : m_sum.basis) {
    out.off_diagonal = std::max({out.off_diagonal, max_abs(t.topRightCorner(p, q)), max_abs(t.bottomLeftCorner(q, p))});
  }
  std::vector<CMatrix> split;
  for (const auto& t : m_a.basis) {
    CMatrix z = CMatrix::Zero(p + q, p + q);
    z.topLeftCorner(p, p) = t;
    split.push_back(z);
  }
  for (const auto& t : m_b.basis) {
    CMatrix z = CMatrix::Zero(p + q, p + q);
    z.bottomRightCorner(q, q) = t;
    split.push_back(z);
  }
  MultiplierBasis split_basis;
  split_basis.basis = split;
  const CMatrix s1 = linalg::column_space(m_sum.as_columns());
  const CMatrix s2 = linalg::column_space(split_basis.as_columns());
  out.block_span_gap = std::max(linalg::subspace_gap(s1, s2), linalg::subspace_gap(s2, s1));

  if (desc.kind == ProductKind::lau) out.transport = phi_transport(desc, d1, d2, tol);
  return out;
}

}  // namespace banalg
