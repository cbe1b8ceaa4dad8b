#include "banalg/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "banalg/linalg.hpp"

namespace banalg {

namespace {

using Idx = Eigen::Index;
Idx idx(std::size_t i) { return static_cast<Idx>(i); }

double sup_distance(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool lex_less(const CVector& a, const CVector& b) {
  constexpr double eps = 1e-9;
  for (Idx i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (std::abs(a(i).real() - b(i).real()) > eps) return a(i).real() < b(i).real();
    if (std::abs(a(i).imag() - b(i).imag()) > eps) return a(i).imag() < b(i).imag();
  }
  return a.size() < b.size();
}

// Gauss-Newton on chi(e_i e_j) = chi_i chi_j; keeps the iterate only while the
// residual improves.
CVector polish(const Algebra& algebra, const std::vector<CMatrix>& left, CVector chi) {
  const std::size_t n = algebra.dim();
  const Idx rows = idx(n * (n + 1) / 2);
  double best = character_residual(algebra, chi);
  for (int iter = 0; iter < 4 && best > 0.0; ++iter) {
    CMatrix jac = CMatrix::Zero(rows, idx(n));
    CVector f(rows);
    Idx r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j, ++r) {
        const auto col = left[i].col(idx(j));
        f(r) = (col.transpose() * chi)(0) - chi(idx(i)) * chi(idx(j));
        jac.row(r) = col.transpose();
        jac(r, idx(i)) -= chi(idx(j));
        jac(r, idx(j)) -= chi(idx(i));
      }
    }
    const CVector step = jac.colPivHouseholderQr().solve(-f);
    const CVector next = chi + step;
    const double res = character_residual(algebra, next);
    if (!(res < best)) break;
    chi = next;
    best = res;
  }
  return chi;
}

// Clears real and imaginary parts far below the working precision of the
// vector; leftover noise of order 1e-80 otherwise underflows in later
// rotations.
CVector snap_negligible(CVector chi) {
  const double scale = std::max(1.0, chi.size() ? chi.cwiseAbs().maxCoeff() : 0.0);
  const double floor = 1e-15 * scale;
  for (Idx i = 0; i < chi.size(); ++i) {
    const double re = std::abs(chi(i).real()) < floor ? 0.0 : chi(i).real();
    const double im = std::abs(chi(i).imag()) < floor ? 0.0 : chi(i).imag();
    chi(i) = Complex(re, im);
  }
  return chi;
}

}  // namespace

std::string_view to_string(Provenance p) { return p == Provenance::numerical ? "numerical" : "closed_form"; }

CMatrix CharacterSet::matrix() const {
  if (items.empty()) return CMatrix(0, 0);
  CMatrix m(idx(items.size()), items.front().values.size());
  for (std::size_t j = 0; j < items.size(); ++j) m.row(idx(j)) = items[j].values.transpose();
  return m;
}

double CharacterSet::max_residual() const {
  double r = 0.0;
  for (const auto& c : items) r = std::max(r, c.residual);
  return r;
}

double character_residual(const Algebra& algebra, const CVector& values) {
  const std::size_t n = algebra.dim();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex lhs = (algebra.basis_product(i, j).transpose() * values)(0);
      r = std::max(r, std::abs(lhs - values(idx(i)) * values(idx(j))));
    }
  }
  return r;
}

CharacterSet characters_numerical(const Algebra& algebra, const CharacterOptions& options) {
  if (!algebra.commutative(options.tol)) {
    throw Error(ErrorCode::rejected, "characters_numerical requires a commutative algebra");
  }
  const std::size_t n = algebra.dim();
  CharacterSet out;
  out.provenance = Provenance::numerical;

  std::vector<CMatrix> left(n);
  CVector traces(idx(n));
  double cmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    left[i] = algebra.basis_left_operator(i);
    traces(idx(i)) = left[i].trace();
    if (left[i].size()) cmax = std::max(cmax, left[i].cwiseAbs().maxCoeff());
  }
  if (cmax == 0.0) return out;

  // Trace form G(i, j) = tr(L_{e_i e_j}); row i equals traces^T L_i.
  CMatrix gram(idx(n), idx(n));
  for (std::size_t i = 0; i < n; ++i) gram.row(idx(i)) = traces.transpose() * left[i];

  Eigen::JacobiSVD<CMatrix> svd(gram, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  const double floor = 1e-12 * static_cast<double>(n) * (1.0 + cmax) * (1.0 + cmax);
  if (s.size() == 0 || s(0) <= floor) return out;
  Idx r = 0;
  while (r < s.size() && s(r) > linalg::kRankCutoff * s(0)) ++r;
  const CMatrix w = svd.matrixU().leftCols(r);

  std::vector<CMatrix> restricted(n);
  for (std::size_t i = 0; i < n; ++i) restricted[i] = w.adjoint() * left[i].transpose() * w;

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  for (int attempt = 0; attempt <= options.retries; ++attempt) {
    CMatrix h = CMatrix::Zero(r, r);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex coeff(normal(rng), normal(rng));
      h += coeff * restricted[i];
    }
    Eigen::ComplexEigenSolver<CMatrix> ces(h, true);
    if (ces.info() != Eigen::Success) continue;
    const CVector& lambda = ces.eigenvalues();
    double scale = 0.0, gap = std::numeric_limits<double>::infinity();
    for (Idx a = 0; a < r; ++a) scale = std::max(scale, std::abs(lambda(a)));
    for (Idx a = 0; a < r; ++a) {
      for (Idx b = a + 1; b < r; ++b) gap = std::min(gap, std::abs(lambda(a) - lambda(b)));
    }
    if (scale == 0.0 || gap < options.separation * scale) continue;

    std::vector<Character> found;
    bool ok = true;
    for (Idx a = 0; a < r && ok; ++a) {
      const CVector f = w * ces.eigenvectors().col(a);
      const double ff = f.squaredNorm();
      CVector chi(idx(n));
      // Eigenvalue of L_i^T on f; these values already form the character.
      for (std::size_t i = 0; i < n; ++i) chi(idx(i)) = f.dot(left[i].transpose() * f) / ff;
      chi = snap_negligible(polish(algebra, left, chi));
      const double res = character_residual(algebra, chi);
      if (res > options.tol || chi.cwiseAbs().maxCoeff() == 0.0) ok = false;
      found.push_back({chi, res});
    }
    if (!ok) continue;
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return lex_less(x.values, y.values); });
    out.items = std::move(found);
    return out;
  }
  throw Error(ErrorCode::ill_conditioned, "could not separate the characters after " +
                                              std::to_string(options.retries + 1) + " generic elements");
}

CharacterSet group_characters(const std::vector<int>& orders) {
  std::size_t n = 1;
  for (int o : orders) n *= static_cast<std::size_t>(o);
  auto digits = [&](std::size_t g) {
    std::vector<int> d(orders.size());
    for (std::size_t r = orders.size(); r-- > 0;) {
      d[r] = static_cast<int>(g % static_cast<std::size_t>(orders[r]));
      g /= static_cast<std::size_t>(orders[r]);
    }
    return d;
  };
  CharacterSet out;
  out.provenance = Provenance::closed_form;
  for (std::size_t k = 0; k < n; ++k) {
    const auto dk = digits(k);
    CVector v(idx(n));
    for (std::size_t g = 0; g < n; ++g) {
      const auto dg = digits(g);
      double phase = 0.0;
      for (std::size_t r = 0; r < orders.size(); ++r) {
        // reduce the integer product first so the angle stays in [0, 2 pi)
        const int num = (dk[r] * dg[r]) % orders[r];
        phase += 2.0 * std::numbers::pi * num / orders[r];
      }
      v(idx(g)) = std::polar(1.0, phase);
    }
    out.items.push_back({snap_negligible(v), 0.0});
  }
  return out;
}

PsiResult psi_of(const CVector& phi, const ProductDescriptor& desc, double tol) {
  if (desc.kind != ProductKind::semidirect) throw Error(ErrorCode::shape_mismatch, "psi_of needs a semidirect descriptor");
  const std::size_t m = desc.first.dim(), p = desc.second.dim();
  if (phi.size() != idx(p)) throw Error(ErrorCode::shape_mismatch, "character length does not match dim I");
  Idx k = 0;
  const double top = phi.cwiseAbs().maxCoeff(&k);
  if (top == 0.0) throw Error(ErrorCode::no_normalizer, "phi vanishes on I");

  const auto act = b_left_actions(desc);
  auto evaluate = [&](const CVector& a0) {
    CVector psi(idx(m));
    for (std::size_t i = 0; i < m; ++i) psi(idx(i)) = (phi.transpose() * (act[i] * a0))(0);
    return psi;
  };

  CVector a0 = CVector::Zero(idx(p));
  a0(k) = 1.0 / phi(k);

  // Second normalizer: conj(phi)/|phi|^2 plus a kernel direction of phi.
  CVector a1 = phi.conjugate() / phi.squaredNorm();
  if (p >= 2) {
    const Idx j = (k == 0) ? 1 : 0;
    CVector z = CVector::Zero(idx(p));
    z(j) = 1.0;
    z(k) = -phi(j) / phi(k);
    a1 += z;
  }

  PsiResult out;
  out.values = evaluate(a0);
  out.normalizer_discrepancy = m ? (out.values - evaluate(a1)).cwiseAbs().maxCoeff() : 0.0;
  out.zero = m == 0 || out.values.cwiseAbs().maxCoeff() <= tol;
  if (out.zero) out.values.setZero();
  return out;
}

CharacterSet characters_semidirect(const ProductDescriptor& desc, const CharacterSet& delta_b,
                                   const CharacterSet& delta_i, double tol) {
  if (desc.kind != ProductKind::semidirect) throw Error(ErrorCode::shape_mismatch, "characters_semidirect needs a semidirect descriptor");
  const Idx m = idx(desc.first.dim()), p = idx(desc.second.dim());
  CharacterSet out;
  out.provenance = Provenance::closed_form;
  for (const auto& phi : delta_i.items) {
    const PsiResult psi = psi_of(phi.values, desc, tol);
    CVector v(m + p);
    v << psi.values, phi.values;
    out.items.push_back({v, character_residual(desc.algebra, v)});
  }
  for (const auto& psi : delta_b.items) {
    CVector v(m + p);
    v << psi.values, CVector::Zero(p);
    out.items.push_back({v, character_residual(desc.algebra, v)});
  }
  return out;
}

CharacterSet characters_lau(const ProductDescriptor& desc, const CharacterSet& delta_a, const CharacterSet& delta_b) {
  if (!desc.phi) throw Error(ErrorCode::shape_mismatch, "characters_lau needs a Lau or direct-sum descriptor");
  const Idx p = idx(desc.first.dim()), m = idx(desc.second.dim());
  CharacterSet out;
  out.provenance = Provenance::closed_form;
  for (const auto& phi : delta_a.items) {
    CVector v(p + m);
    v << phi.values, desc.phi->transpose() * phi.values;
    out.items.push_back({v, character_residual(desc.algebra, v)});
  }
  for (const auto& psi : delta_b.items) {
    CVector v(p + m);
    v << CVector::Zero(p), psi.values;
    out.items.push_back({v, character_residual(desc.algebra, v)});
  }
  return out;
}

bool is_semisimple(const Algebra& algebra, const CharacterSet& characters) {
  if (characters.empty()) return false;
  return linalg::rank(characters.matrix()) == algebra.dim();
}

CVector gelfand(const CVector& a, const CharacterSet& characters) {
  CVector out(idx(characters.size()));
  for (std::size_t j = 0; j < characters.size(); ++j) {
    if (characters[j].values.size() != a.size()) throw Error(ErrorCode::shape_mismatch, "gelfand: length mismatch");
    out(idx(j)) = (characters[j].values.transpose() * a)(0);
  }
  return out;
}

CharacterMatch match_characters(const CharacterSet& a, const CharacterSet& b, double threshold) {
  CharacterMatch out;
  out.a_to_b.assign(a.size(), std::nullopt);
  std::vector<bool> used(b.size(), false);
  std::size_t matched = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> pick;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = sup_distance(a[i].values, b[j].values);
      if (d < best) {
        best = d;
        pick = j;
      }
    }
    if (pick && best <= threshold) {
      used[*pick] = true;
      out.a_to_b[i] = pick;
      ++matched;
    }
  }
  out.hausdorff = hausdorff_distance(a, b);
  out.complete = a.size() == b.size() && matched == a.size();
  return out;
}

double hausdorff_distance(const CharacterSet& a, const CharacterSet& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const CharacterSet& x, const CharacterSet& y) {
    double worst = 0.0;
    for (const auto& cx : x.items) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& cy : y.items) best = std::min(best, sup_distance(cx.values, cy.values));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

std::optional<std::size_t> find_character(const CharacterSet& set, const CVector& values, double threshold) {
  std::optional<std::size_t> pick;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < set.size(); ++j) {
    const double d = sup_distance(set[j].values, values);
    if (d < best) {
      best = d;
      pick = j;
    }
  }
  if (pick && best <= threshold) return pick;
  return std::nullopt;
}

}  // namespace banalg
