#include "banalg/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

#include "banalg/bse.hpp"
#include "banalg/multipliers.hpp"
#include "banalg/spectra.hpp"

namespace banalg::verify {

using fixtures::Family;
using fixtures::Fixture;
using fixtures::Rng;

namespace {

using Idx = Eigen::Index;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Thresholds fixed by the checks themselves rather than by --tol.
constexpr double kHausdorffTol = 1e-8;
constexpr double kNormalizerTol = 1e-12;
constexpr double kPsiIdentityTol = 1e-10;
constexpr double kThetaMultTol = 1e-10;
constexpr double kHatTol = 1e-9;
constexpr double kGroupOracleTol = 1e-10;
constexpr double kDisjointTol = 1e-6;

enum CheckId : std::uint64_t { kDualityStream = 1, kThetaStream, kLemma41Stream, kSigmaStream };

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

CVector random_function(std::size_t n, Rng& rng) {
  CVector v = CVector::Zero(Idx(n));
  for (Idx i = 0; i < v.size(); ++i) v(i) = rng.complex_unit_box();
  return v;
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

bool outside_hypotheses(ErrorCode code) {
  return code == ErrorCode::not_without_order || code == ErrorCode::phi_not_surjective ||
         code == ErrorCode::span_condition_failed;
}

class Checker {
 public:
  Checker(const Fixture& fx, std::size_t index, const RunConfig& cfg, std::vector<Record>& out)
      : fx_(fx), index_(index), cfg_(cfg), out_(out), bopts_{cfg.tol, cfg.opt_tol, {}} {
    if (cfg.theorem) anchors_ = anchors_for_theorem(*cfg.theorem);
    copts_.tol = cfg.tol;
    copts_.seed = cfg.seed;
  }

  void run();

 private:
  bool wanted(const std::string& anchor) const {
    return anchor == "plumbing" || !cfg_.theorem || anchors_.count(anchor) > 0;
  }

  void add(const std::string& check, const std::string& anchor, double residual, bool pass, std::size_t samples,
           std::string detail) {
    out_.push_back({fx_.name + "/" + check, anchor, residual, pass ? Verdict::pass : Verdict::fail, samples,
                    std::move(detail)});
  }

  void skip(const std::string& check, const std::string& anchor, std::string detail) {
    out_.push_back({fx_.name + "/" + check, anchor, 0.0, Verdict::skipped, 0, std::move(detail)});
  }

  // Runs a check body; library errors that signal unmet hypotheses become
  // SKIPPED records, anything else a FAIL record.
  void guarded(const std::string& check, const std::string& anchor, const std::function<void()>& body) {
    if (!wanted(anchor)) return;
    try {
      body();
    } catch (const Error& e) {
      if (outside_hypotheses(e.code())) {
        skip(check, anchor, "outside hypotheses: " + std::string(e.what()));
      } else {
        add(check, anchor, kInf, false, 0, e.what());
      }
    } catch (const std::exception& e) {
      add(check, anchor, kInf, false, 0, e.what());
    }
  }

  Rng stream(std::uint64_t check) const {
    return Rng(cfg_.seed, 100 + static_cast<std::uint64_t>(fx_.family), index_, check);
  }

  CharacterSet chars(const Algebra& a) const { return characters_numerical(a, copts_); }

  void check_validate();
  void check_oracles();
  void check_bse_property_of(const Algebra& a, const CharacterSet& delta);
  void check_duality(const Algebra& a, const CharacterSet& delta);
  void semidirect_view(const ProductDescriptor& desc, const std::string& prop24_name);
  void check_sub(const ProductDescriptor& desc);
  void check_sigma_extension(const ProductDescriptor& desc);
  void lau_checks(const ProductDescriptor& desc);

  const Fixture& fx_;
  std::size_t index_;
  const RunConfig& cfg_;
  std::vector<Record>& out_;
  BSEOptions bopts_;
  CharacterOptions copts_;
  std::set<std::string> anchors_;
};

void Checker::run() {
  check_validate();
  const CharacterSet delta = chars(fx_.algebra);
  switch (fx_.family) {
    case Family::diagonal:
    case Family::group:
      check_oracles();
      check_bse_property_of(fx_.algebra, delta);
      break;
    case Family::semidirect:
    case Family::radical:
      if (!fx_.desc) break;
      semidirect_view(*fx_.desc, "prop24");
      check_sub(*fx_.desc);
      check_sigma_extension(*fx_.desc);
      break;
    case Family::lau:
      if (!fx_.desc) break;
      lau_checks(*fx_.desc);
      semidirect_view(lau_as_semidirect(*fx_.desc), "prop24-view");
      break;
  }
  check_duality(fx_.algebra, delta);
}

void Checker::check_validate() {
  guarded("validate", "plumbing", [&] {
    const ValidationReport rep = validate(fx_.algebra.spec(), {cfg_.tol, true});
    double residual = std::max({rep.associativity_residual, rep.commutativity_residual,
                                std::max(0.0, rep.submultiplicativity_excess), rep.unit_residual.value_or(0.0)});
    bool pass = rep.accepted;
    std::string detail = "dim " + std::to_string(fx_.algebra.dim());
    if (fx_.desc && fx_.desc->phi) {
      const double norm = operator_norm(*fx_.desc->phi, fx_.desc->second.weights(), fx_.desc->first.weights());
      const LinearMap phi(fx_.desc->second, fx_.desc->first, *fx_.desc->phi);
      const HomomorphismReport hom = check_homomorphism(phi, cfg_.tol);
      residual = std::max(residual, hom.residual);
      pass = pass && hom.homomorphism && norm <= 1.0 + cfg_.tol;
      detail += ", |phi| " + fmt(norm) + (fx_.phi_surjective ? ", phi onto" : ", phi not onto");
    }
    if (fx_.desc && fx_.desc->kind == ProductKind::semidirect) {
      const bool span = ideal_module_span_rank(*fx_.desc) == fx_.desc->second.dim();
      pass = pass && span == fx_.span_condition;
      detail += span ? ", <IB> = I" : ", <IB> proper";
    }
    for (const auto& v : rep.violations) detail += "; " + v;
    add("validate", "plumbing", residual, pass, 1, detail);
  });
}

// Independent oracles: closed-form group characters, and multiplier spaces of
// unital commutative algebras, which coincide with the algebra itself.
void Checker::check_oracles() {
  guarded("characters-oracle", "plumbing", [&] {
    const CharacterSet numerical = chars(fx_.algebra);
    if (fx_.family == Family::group) {
      const CharacterSet closed = group_characters(fx_.orders);
      const double h = hausdorff_distance(numerical, closed);
      add("characters-oracle", "plumbing", h, h <= kGroupOracleTol && numerical.size() == closed.size(),
          numerical.size(), std::to_string(numerical.size()) + " characters against the dual group");
    } else {
      const double r = numerical.max_residual();
      add("characters-oracle", "plumbing", r, r <= cfg_.tol && numerical.size() == fx_.algebra.dim(),
          numerical.size(), std::to_string(numerical.size()) + " characters, dim " + std::to_string(fx_.algebra.dim()));
    }
  });
  guarded("multipliers-oracle", "plumbing", [&] {
    const MultiplierBasis lm = left_multiplier_space(fx_.algebra);
    const MultiplierBasis m = multiplier_space(fx_.algebra);
    const double r = std::max(lm.max_residual, m.max_residual);
    const std::size_t n = fx_.algebra.dim();
    add("multipliers-oracle", "plumbing", r, r <= cfg_.tol && lm.dim() == n && m.dim() == n, lm.dim(),
        "dim LM " + std::to_string(lm.dim()) + ", dim M " + std::to_string(m.dim()) + ", expected " + std::to_string(n));
  });
}

void Checker::check_bse_property_of(const Algebra& a, const CharacterSet& delta) {
  guarded("bse-property", "bse-property", [&] {
    const BSEVerdict v = check_bse_property(a, delta, cfg_.tol);
    if (!v.semisimple) {
      skip("bse-property", "bse-property", "outside hypotheses: not semisimple");
      return;
    }
    add("bse-property", "bse-property", std::max(v.hat_in_cbse, v.cbse_in_hat), v.bse, 1,
        "dim M " + std::to_string(v.multiplier_dim) + ", hat span " + std::to_string(v.hat_dim) + ", Gelfand image " +
            std::to_string(v.c_bse_dim));
  });
}

void Checker::check_duality(const Algebra& a, const CharacterSet& delta) {
  guarded("bse-duality", "bse-duality", [&] {
    if (delta.empty()) {
      skip("bse-duality", "bse-duality", "outside hypotheses: no characters");
      return;
    }
    Rng rng = stream(kDualityStream);
    double worst = 0.0, sup_violation = 0.0, interp = 0.0;
    for (std::size_t s = 0; s < cfg_.sigma_samples; ++s) {
      const CVector sigma = random_function(delta.size(), rng);
      const BSEFunction primal = bse_norm_primal(sigma, delta, a, bopts_);
      const BSEDual dual = bse_norm_dual(sigma, delta, a, bopts_);
      worst = std::max(worst, relative_gap(primal.bse_norm, dual.value));
      sup_violation = std::max(sup_violation, sigma.cwiseAbs().maxCoeff() - primal.bse_norm);
      interp = std::max(interp, primal.interpolation_residual);
    }
    const bool pass = worst <= cfg_.opt_tol && sup_violation <= cfg_.opt_tol && interp <= cfg_.tol;
    add("bse-duality", "bse-duality", worst, pass, cfg_.sigma_samples,
        "max relative gap " + fmt(worst) + ", interpolation " + fmt(interp));
  });
}

void Checker::semidirect_view(const ProductDescriptor& desc, const std::string& prop24_name) {
  const std::size_t p = desc.second.dim();
  const Algebra& alg = desc.algebra;

  guarded("lemma21", "lemma21", [&] {
    const MultiplierBasis lm = left_multiplier_space(alg);
    const std::vector<BlockDecomposition> blocks = block_space(desc);
    double res = lm.max_residual;
    for (const auto& t : lm.basis) {
      const BlockDecomposition b = decompose_left_multiplier(t, desc, cfg_.tol);
      res = std::max({res, b.max_relation_residual(), b.max_membership_residual()});
    }
    for (const auto& b : blocks) {
      const CMatrix t = recompose(b, desc, cfg_.tol);
      res = std::max(res, left_multiplier_residual(alg, t));
    }
    const bool pass = res <= cfg_.tol && lm.dim() == blocks.size();
    add("lemma21", "lemma21", res, pass, lm.dim() + blocks.size(),
        "dim LM " + std::to_string(lm.dim()) + ", block space " + std::to_string(blocks.size()));
  });

  guarded("cor-prod", "cor-prod", [&] {
    const MultiplierBasis m = multiplier_space(alg);
    const bool b_without_order = without_order(desc.first).without_order;
    const bool generated = ideal_module_span_rank(desc) == p || ideal_square_span_rank(desc) == p;
    const bool s_b_vanishes = b_without_order || generated;
    double res = m.max_residual;
    for (const auto& t : m.basis) {
      const BlockDecomposition b = decompose_left_multiplier(t, desc, cfg_.tol);
      const double scale = std::max(1.0, max_abs(t));
      res = std::max({res, b.max_relation_residual(), b.max_membership_residual(),
                      multiplier_residual(desc.first, b.t_b)});
      if (s_b_vanishes) {
        res = std::max({res, max_abs(b.s_b) / scale, multiplier_residual(desc.second, b.r_i)});
      }
    }
    const std::size_t lm_dim = left_multiplier_space(alg).dim();
    add("cor-prod", "cor-prod", res, res <= cfg_.tol && m.dim() == lm_dim, m.dim(),
        "dim M " + std::to_string(m.dim()) + (s_b_vanishes ? ", S_B = 0 enforced" : ", S_B unconstrained"));
  });

  guarded("remark-psi", "remark-psi", [&] {
    const CharacterSet di = chars(desc.second);
    const std::vector<CMatrix> right = i_right_actions(desc);
    double discrepancy = 0.0, identity = 0.0;
    for (const auto& phi : di.items) {
      const PsiResult psi = psi_of(phi.values, desc, cfg_.tol);
      discrepancy = std::max(discrepancy, psi.normalizer_discrepancy);
      for (std::size_t k = 0; k < p; ++k) {
        const CVector ab = right[k].transpose() * phi.values;  // phi(a_k b_i) over i
        const CVector expected = phi.values(Idx(k)) * psi.values;
        identity = std::max(identity, (ab - expected).cwiseAbs().maxCoeff());
      }
    }
    const bool pass = discrepancy <= kNormalizerTol && identity <= kPsiIdentityTol;
    add("remark-psi", "remark-psi", std::max(discrepancy, identity), pass, di.size(),
        di.empty() ? "Delta(I) empty" : "normalizer discrepancy " + fmt(discrepancy) + ", identity " + fmt(identity));
  });

  guarded(prop24_name, "prop24", [&] {
    const CharacterSet num = chars(alg);
    const CharacterSet db = chars(desc.first), di = chars(desc.second);
    const CharacterSet cf = characters_semidirect(desc, db, di, cfg_.tol);
    const double h = hausdorff_distance(num, cf);
    double separation = kInf;
    for (std::size_t e = 0; e < di.size() && e < cf.size(); ++e) {
      for (std::size_t f = di.size(); f < cf.size(); ++f) {
        separation = std::min(separation, (cf[e].values - cf[f].values).cwiseAbs().maxCoeff());
      }
    }
    const bool card = cf.size() == num.size() && cf.size() == db.size() + di.size();
    const bool pass = h <= kHausdorffTol && card && separation > kDisjointTol;
    add(prop24_name, "prop24", h, pass, cf.size(),
        "|E| " + std::to_string(di.size()) + ", |F| " + std::to_string(db.size()) + ", numerical " +
            std::to_string(num.size()));
  });
}

void Checker::check_sub(const ProductDescriptor& desc) {
  guarded("sub", "sub", [&] {
    if (!fx_.span_condition) {
      skip("sub", "sub", "outside hypotheses: <IB> is a proper subspace of I");
      return;
    }
    const ProductBSEReport rep = verify_product_bse(desc, cfg_.tol);
    if (!rep.hypotheses_hold) {
      skip("sub", "sub", "outside hypotheses: an algebra has nonzero annihilator");
      return;
    }
    if (!rep.product->semisimple || !rep.first->semisimple) {
      skip("sub", "sub", "outside hypotheses: not semisimple");
      return;
    }
    const double res = std::max({rep.product->hat_in_cbse, rep.product->cbse_in_hat, rep.first->hat_in_cbse,
                                 rep.first->cbse_in_hat});
    add("sub", "sub", res, rep.consistent && rep.product->bse && rep.first->bse, 1,
        std::string("product BSE ") + (rep.product->bse ? "yes" : "no") + ", B BSE " + (rep.first->bse ? "yes" : "no"));
  });
}

void Checker::check_sigma_extension(const ProductDescriptor& desc) {
  guarded("sigma-extension", "sub", [&] {
    const CharacterSet db = chars(desc.first), di = chars(desc.second);
    if (db.empty()) {
      skip("sigma-extension", "sub", "outside hypotheses: Delta(B) empty");
      return;
    }
    const CharacterSet product = characters_semidirect(desc, db, di, cfg_.tol);
    Rng rng = stream(kSigmaStream);
    double excess = -kInf, witness = 0.0;
    const std::size_t samples = std::max<std::size_t>(1, cfg_.sigma_samples / 2);
    for (std::size_t s = 0; s < samples; ++s) {
      const CVector rho = random_function(db.size(), rng);
      const BSEFunction rho_norm = bse_norm_primal(rho, db, desc.first, bopts_);
      const SigmaExtension ext = sigma_extension(rho, desc, db, di, rho_norm.minimizer, cfg_.tol);
      const BSEFunction sigma_norm = bse_norm_primal(ext.sigma, product, desc.algebra, bopts_);
      excess = std::max(excess, sigma_norm.bse_norm - rho_norm.bse_norm);
      witness = std::max({witness, ext.witness_residual, std::abs(ext.witness_norm - rho_norm.bse_norm) / std::max(1.0, rho_norm.bse_norm)});
    }
    const bool pass = excess <= cfg_.opt_tol && witness <= cfg_.opt_tol;
    add("sigma-extension", "sub", std::max(excess, 0.0), pass, samples,
        "max |sigma| - |rho| " + fmt(excess) + ", witness " + fmt(witness));
  });
}

void Checker::lau_checks(const ProductDescriptor& desc) {
  const Algebra& a = desc.first;
  const Algebra& b = desc.second;
  const CharacterSet da = chars(a), db = chars(b);

  guarded("prop24", "prop24", [&] {
    const CharacterSet num = chars(desc.algebra);
    const CharacterSet cf = characters_lau(desc, da, db);
    const double h = hausdorff_distance(num, cf);
    double separation = kInf;
    for (std::size_t e = 0; e < da.size(); ++e) {
      for (std::size_t f = da.size(); f < cf.size(); ++f) {
        separation = std::min(separation, (cf[e].values - cf[f].values).cwiseAbs().maxCoeff());
      }
    }
    const bool card = cf.size() == num.size() && cf.size() == da.size() + db.size();
    add("prop24", "prop24", h, h <= kHausdorffTol && card && separation > kDisjointTol, cf.size(),
        "|E| " + std::to_string(da.size()) + ", |F| " + std::to_string(db.size()) + ", numerical " +
            std::to_string(num.size()));
  });

  const bool lau = desc.kind == ProductKind::lau;
  if (lau) {
    guarded("lemma41", "lemma41", [&] {
      const LauContext ctx = lau_context(desc, da, db, cfg_.tol);
      if (!ctx.phi_surjective) throw Error(ErrorCode::phi_not_surjective, "phi does not map onto A");
      Rng rng = stream(kLemma41Stream);
      double lower = -kInf, upper = -kInf, roundtrip = 0.0;
      for (std::size_t s = 0; s < cfg_.sigma_samples; ++s) {
        const CVector sigma = random_function(ctx.delta_product.size(), rng);
        const auto [tau, rho] = split_sigma(sigma, ctx);
        const double ns = bse_norm_primal(sigma, ctx.delta_product, desc.algebra, bopts_).bse_norm;
        const double nt = bse_norm_primal(tau, da, a, bopts_).bse_norm;
        const double nr = bse_norm_primal(rho, db, b, bopts_).bse_norm;
        const double scale = std::max(1.0, ns);
        lower = std::max(lower, (nt + nr - ns) / scale);  // part (i): |tau| + |rho| <= |sigma|
        upper = std::max(upper, (ns - nt - nr) / scale);  // part (ii): |sigma| <= |tau| + |rho|
        roundtrip = std::max(roundtrip, (join_tau_rho(tau, rho, ctx) - sigma).cwiseAbs().maxCoeff());
      }
      const double res = std::max({lower, upper, 0.0});
      add("lemma41", "lemma41", res, res <= cfg_.opt_tol && roundtrip <= cfg_.tol, cfg_.sigma_samples,
          "(i) " + fmt(lower) + ", (ii) " + fmt(upper) + ", round trip " + fmt(roundtrip));
    });

    guarded("theta", "theta", [&] {
      const LauContext ctx = lau_context(desc, da, db, cfg_.tol);
      if (!ctx.phi_surjective) throw Error(ErrorCode::phi_not_surjective, "phi does not map onto A");
      Rng rng = stream(kThetaStream);
      double isometry = 0.0, mult = 0.0;
      for (std::size_t s = 0; s < cfg_.theta_samples; ++s) {
        const CVector t1 = random_function(da.size(), rng), r1 = random_function(db.size(), rng);
        const CVector t2 = random_function(da.size(), rng), r2 = random_function(db.size(), rng);
        const ThetaReport th = theta(t1, r1, t2, r2, ctx);
        const double ns = bse_norm_primal(th.sigma, ctx.delta_product, desc.algebra, bopts_).bse_norm;
        const double nt = bse_norm_primal(t1, da, a, bopts_).bse_norm;
        const double nr = bse_norm_primal(r1, db, b, bopts_).bse_norm;
        isometry = std::max(isometry, relative_gap(ns, nt + nr));
        mult = std::max(mult, th.multiplicativity_residual);
      }
      add("theta", "theta", std::max(isometry, mult), isometry <= cfg_.opt_tol && mult <= kThetaMultTol,
          cfg_.theta_samples, "isometry " + fmt(isometry) + ", multiplicativity " + fmt(mult));
    });

    guarded("phi-transport", "phi-transport", [&] {
      const TransportReport tr = phi_transport(desc, da, db, cfg_.tol);
      const bool norm_ok = tr.big_phi_norm <= tr.phi_norm + 1.0 + 1e-12 * (1.0 + tr.phi_norm);
      const double res = std::max({tr.hat_residual, tr.membership_residual, tr.character_map_residual});
      const bool pass = norm_ok && tr.bijection && tr.hat_residual <= kHatTol && tr.membership_residual <= cfg_.tol &&
                        tr.character_map_residual <= kHausdorffTol;
      add("phi-transport", "phi-transport", res, pass, tr.dim_lau,
          "|Phi| " + fmt(tr.big_phi_norm) + ", |phi| " + fmt(tr.phi_norm) + ", dims " + std::to_string(tr.dim_lau) + "/" +
              std::to_string(tr.dim_direct) + ", image rank " + std::to_string(tr.image_rank));
    });
  }

  // The product biconditional for A x_phi B and for A x_0 B.
  std::optional<ProductBSEReport> rep;
  auto biconditional = [&](const std::string& check, bool use_direct) {
    guarded(check, check, [&] {
      if (!rep) rep = verify_product_bse(desc, cfg_.tol);
      const ProductBSEReport& r = *rep;
      if (!r.hypotheses_hold) {
        skip(check, check, "outside hypotheses: an algebra has nonzero annihilator");
        return;
      }
      const BSEVerdict& whole = use_direct ? *r.direct : *r.product;
      const bool all = r.first->bse && r.second->bse && whole.bse;
      const bool split = r.direct_multiplier_dim == r.split_multiplier_dim && r.off_diagonal <= cfg_.tol &&
                         r.block_span_gap <= cfg_.tol;
      const double res = std::max({r.first->hat_in_cbse, r.first->cbse_in_hat, r.second->hat_in_cbse,
                                   r.second->cbse_in_hat, whole.hat_in_cbse, whole.cbse_in_hat, r.off_diagonal,
                                   r.block_span_gap});
      add(check, check, res, r.consistent && all && split, 1,
          "dim M(A x0 B) " + std::to_string(r.direct_multiplier_dim) + ", dim M(A) + dim M(B) " +
              std::to_string(r.split_multiplier_dim) + ", BSE A/B/product " + (r.first->bse ? "y" : "n") +
              (r.second->bse ? "y" : "n") + (whole.bse ? "y" : "n"));
    });
  };
  if (lau) {
    biconditional("lau-bse", false);
    biconditional("tim2", true);
  } else {
    biconditional("tim2", false);
  }
}

std::string residual_text(double x) { return std::isfinite(x) ? fmt(x) : "inf"; }

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::skipped: return "SKIPPED";
  }
  return "?";
}

std::set<std::string> anchors_for_theorem(const std::string& theorem) {
  if (theorem == "lemma21") return {"lemma21", "cor-prod"};
  if (theorem == "prop24") return {"prop24", "remark-psi"};
  if (theorem == "lemma41") return {"lemma41"};
  if (theorem == "theta") return {"theta"};
  if (theorem == "tim2") return {"tim2"};
  if (theorem == "lau-bse") return {"lau-bse", "phi-transport"};
  if (theorem == "sub") return {"sub"};
  throw Error(ErrorCode::schema_error,
              "theorem: unknown value '" + theorem + "' (expected lemma21, prop24, lemma41, theta, tim2, lau-bse, sub)");
}

void validate_config(const RunConfig& config) {
  if (!(config.tol > 0.0)) throw Error(ErrorCode::schema_error, "tol: must be > 0");
  if (!(config.opt_tol > 0.0)) throw Error(ErrorCode::schema_error, "opt_tol: must be > 0");
  if (config.count == 0) throw Error(ErrorCode::schema_error, "count: must be >= 1");
  if (config.max_dim < 2 || config.max_dim > 16) throw Error(ErrorCode::schema_error, "max_dim: must lie in [2, 16]");
  if (config.theorem) anchors_for_theorem(*config.theorem);
}

Summary Report::summary() const {
  Summary s;
  for (const auto& r : records) {
    switch (r.verdict) {
      case Verdict::pass: ++s.pass; break;
      case Verdict::fail: ++s.fail; break;
      case Verdict::skipped: ++s.skipped; break;
    }
  }
  return s;
}

std::vector<Record> check_fixture(const Fixture& fixture, std::size_t index, const RunConfig& config) {
  std::vector<Record> out;
  Checker(fixture, index, config, out).run();
  return out;
}

Fixture fixture_from_document(const io::ProductDocument& doc, const std::string& name) {
  Fixture fx{name, Family::diagonal, doc.descriptor ? doc.descriptor->algebra : Algebra::create(doc.algebra),
             doc.descriptor, doc.orders, true, false, false};
  if (doc.kind == "group") {
    fx.family = Family::group;
  } else if (doc.descriptor && doc.descriptor->kind == ProductKind::semidirect) {
    fx.family = Family::semidirect;
    fx.span_condition = ideal_module_span_rank(*doc.descriptor) == doc.descriptor->second.dim();
  } else if (doc.descriptor) {
    fx.family = Family::lau;
    fx.phi_surjective = linalg::rank(*doc.descriptor->phi) == doc.descriptor->first.dim();
  }
  fx.semisimple = is_semisimple(fx.algebra, characters_numerical(fx.algebra));
  return fx;
}

Report single_report(std::vector<Record> records, const RunConfig& config) {
  Report report{config.seed, config.tol, config.opt_tol, std::move(records)};
  std::sort(report.records.begin(), report.records.end(),
            [](const Record& x, const Record& y) { return x.name < y.name; });
  return report;
}

Report run_verify(const RunConfig& config) {
  validate_config(config);
  struct Job {
    Family family;
    std::size_t index;
  };
  std::vector<Job> jobs;
  for (Family f : config.families) {
    for (std::size_t i = 0; i < config.count; ++i) jobs.push_back({f, i});
  }
  std::vector<std::vector<Record>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      try {
        const Fixture fx = fixtures::make_fixture(job.family, job.index, config.seed, config.max_dim);
        results[j] = check_fixture(fx, job.index, config);
      } catch (const std::exception& e) {
        char name[64];
        std::snprintf(name, sizeof name, "%s-%03zu/generate", std::string(fixtures::to_string(job.family)).c_str(),
                      job.index);
        results[j] = {{name, "plumbing", kInf, Verdict::fail, 0, e.what()}};
      }
    }
  };
  const unsigned n_workers = std::max(1u, std::min<unsigned>(config.jobs, unsigned(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<Record> all;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(all));
  return single_report(std::move(all), config);
}

io::Json report_to_json(const Report& report) {
  io::Json j;
  j["seed"] = report.seed;
  j["tol"] = report.tol;
  j["opt_tol"] = report.opt_tol;
  const Summary s = report.summary();
  j["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"skipped", s.skipped}};
  io::Json records = io::Json::array();
  for (const auto& r : report.records) {
    io::Json rec;
    rec["name"] = r.name;
    rec["anchor"] = r.anchor;
    rec["verdict"] = std::string(to_string(r.verdict));
    if (std::isfinite(r.residual)) {
      rec["residual"] = r.residual;
    } else {
      rec["residual"] = nullptr;
    }
    rec["samples"] = r.samples;
    rec["detail"] = r.detail;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  return j;
}

std::string render_text(const Report& report, bool color) {
  auto paint = [&](Verdict v) {
    const std::string word(to_string(v));
    if (!color) return word;
    const char* code = v == Verdict::pass ? "\x1b[32m" : v == Verdict::fail ? "\x1b[31m" : "\x1b[33m";
    return std::string(code) + word + "\x1b[0m";
  };
  std::ostringstream os;
  for (const auto& r : report.records) {
    os << paint(r.verdict) << "  " << r.name << "  [" << r.anchor << "]  residual " << residual_text(r.residual);
    if (!r.detail.empty()) os << "  " << r.detail;
    os << '\n';
  }
  const Summary s = report.summary();
  os << "seed " << report.seed << ": " << s.pass << " passed, " << s.fail << " failed, " << s.skipped << " skipped\n";
  return os.str();
}

}  // namespace banalg::verify
