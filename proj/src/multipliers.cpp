#include "banalg/multipliers.hpp"

#include <algorithm>
#include <cmath>

namespace banalg {

namespace {

using Idx = Eigen::Index;
using linalg::ConstraintSystem;

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double scale_of(const CMatrix& m) { return std::max(1.0, max_abs(m)); }

std::vector<CMatrix> left_ops(const Algebra& a) {
  std::vector<CMatrix> ops(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) ops[i] = a.basis_left_operator(i);
  return ops;
}

MultiplierBasis from_null_space(MultiplierKind kind, const linalg::NullSpace& ns, Idx rows, Idx cols) {
  MultiplierBasis out;
  out.kind = kind;
  out.singular_values = ns.singular_values;
  for (Idx c = 0; c < ns.basis.cols(); ++c) out.basis.push_back(linalg::unvec(ns.basis.col(c), rows, cols));
  return out;
}

double commutator_residual(const std::vector<CMatrix>& p, const std::vector<CMatrix>& q, const CMatrix& t) {
  double r = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) r = std::max(r, max_abs(t * p[i] - q[i] * t));
  return r;
}

}  // namespace

std::string_view to_string(MultiplierKind kind) {
  switch (kind) {
    case MultiplierKind::left: return "LM";
    case MultiplierKind::two_sided: return "M";
    case MultiplierKind::module_hom: return "Hom";
  }
  return "?";
}

CMatrix MultiplierBasis::as_columns() const {
  if (basis.empty()) return CMatrix(0, 0);
  CMatrix out(basis.front().size(), Idx(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) out.col(Idx(j)) = linalg::vec(basis[j]);
  return out;
}

double left_multiplier_residual(const Algebra& algebra, const CMatrix& t) {
  const auto ops = left_ops(algebra);
  return commutator_residual(ops, ops, t) / scale_of(t);
}

double multiplier_residual(const Algebra& algebra, const CMatrix& t) {
  const std::size_t n = algebra.dim();
  std::vector<CMatrix> right(n);
  for (std::size_t j = 0; j < n; ++j) right[j] = algebra.basis_right_operator(j);
  const auto left = left_ops(algebra);
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const CVector lhs = right[j] * t.col(Idx(i));
      const CVector rhs = left[i] * t.col(Idx(j));
      r = std::max(r, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return r / scale_of(t);
}

double module_hom_residual(const std::vector<CMatrix>& x_actions, const std::vector<CMatrix>& y_actions,
                           const CMatrix& t) {
  return commutator_residual(x_actions, y_actions, t) / scale_of(t);
}

MultiplierBasis left_multiplier_space(const Algebra& algebra, double cutoff) {
  const Idx n = Idx(algebra.dim());
  const auto ops = left_ops(algebra);
  const CMatrix id = CMatrix::Identity(n, n);
  ConstraintSystem sys;
  const auto t = sys.add_block(n, n);
  for (const auto& l : ops) sys.add_equation({{t, id, l, 1.0}, {t, l, id, -1.0}});
  MultiplierBasis out = from_null_space(MultiplierKind::left, sys.solve(cutoff), n, n);
  for (const auto& b : out.basis) out.max_residual = std::max(out.max_residual, left_multiplier_residual(algebra, b));
  return out;
}

MultiplierBasis multiplier_space(const Algebra& algebra, double cutoff) {
  const Idx n = Idx(algebra.dim());
  const auto left = left_ops(algebra);
  auto right = std::vector<CMatrix>(std::size_t(n));
  for (Idx j = 0; j < n; ++j) right[std::size_t(j)] = algebra.basis_right_operator(std::size_t(j));
  // Row (i, j, k): sum_l R_j[k][l] T[l][i] - sum_l L_i[k][l] T[l][j] with
  // T[l][c] stored at l + c n.
  CMatrix rows = CMatrix::Zero(n * n * n, n * n);
  Idx r = 0;
  for (Idx i = 0; i < n; ++i) {
    for (Idx j = 0; j < n; ++j) {
      for (Idx k = 0; k < n; ++k, ++r) {
        for (Idx l = 0; l < n; ++l) {
          rows(r, l + i * n) += right[std::size_t(j)](k, l);
          rows(r, l + j * n) -= left[std::size_t(i)](k, l);
        }
      }
    }
  }
  ConstraintSystem sys;
  sys.add_block(n, n);
  sys.add_rows(rows);
  MultiplierBasis out = from_null_space(MultiplierKind::two_sided, sys.solve(cutoff), n, n);
  for (const auto& b : out.basis) out.max_residual = std::max(out.max_residual, multiplier_residual(algebra, b));
  return out;
}

MultiplierBasis module_hom_space(const std::vector<CMatrix>& x_actions, const std::vector<CMatrix>& y_actions,
                                 double cutoff) {
  if (x_actions.size() != y_actions.size() || x_actions.empty()) {
    throw Error(ErrorCode::shape_mismatch, "module actions must be given for the same nonempty basis");
  }
  const Idx dx = x_actions.front().rows(), dy = y_actions.front().rows();
  ConstraintSystem sys;
  const auto t = sys.add_block(dy, dx);
  const CMatrix ix = CMatrix::Identity(dx, dx), iy = CMatrix::Identity(dy, dy);
  for (std::size_t i = 0; i < x_actions.size(); ++i) {
    sys.add_equation({{t, iy, x_actions[i], 1.0}, {t, y_actions[i], ix, -1.0}});
  }
  MultiplierBasis out = from_null_space(MultiplierKind::module_hom, sys.solve(cutoff), dy, dx);
  for (const auto& b : out.basis) {
    out.max_residual = std::max(out.max_residual, module_hom_residual(x_actions, y_actions, b));
  }
  return out;
}

OrderReport without_order(const Algebra& algebra) {
  const Idx n = Idx(algebra.dim());
  CMatrix stacked(n * n, n);
  for (Idx j = 0; j < n; ++j) stacked.middleRows(j * n, n) = algebra.basis_right_operator(std::size_t(j));
  OrderReport out;
  // A zero algebra has the whole space as annihilator; null_space handles that.
  out.annihilator_dim = std::size_t(linalg::null_space(stacked).basis.cols());
  out.without_order = out.annihilator_dim == 0;
  return out;
}

double BlockDecomposition::max_relation_residual() const {
  return *std::max_element(relation_residuals.begin(), relation_residuals.end());
}

double BlockDecomposition::max_membership_residual() const {
  return *std::max_element(membership_residuals.begin(), membership_residuals.end());
}

BlockDecomposition evaluate_blocks(CMatrix t_b, CMatrix s_b, CMatrix s_i, CMatrix r_i, const ProductDescriptor& desc) {
  if (desc.kind != ProductKind::semidirect) throw Error(ErrorCode::shape_mismatch, "block form needs a semidirect descriptor");
  const Idx m = Idx(desc.first.dim()), p = Idx(desc.second.dim());
  if (t_b.rows() != m || t_b.cols() != m || s_b.rows() != m || s_b.cols() != p || s_i.rows() != p ||
      s_i.cols() != m || r_i.rows() != p || r_i.cols() != p) {
    throw Error(ErrorCode::shape_mismatch, "block shapes do not match dim B and dim I");
  }
  const auto lb = left_ops(desc.first);
  const auto li = left_ops(desc.second);
  const auto act_bi = b_left_actions(desc);   // a -> b_i a
  const auto act_ib = i_right_actions(desc);  // b -> a_k b
  const double sc = std::max({1.0, max_abs(t_b), max_abs(s_b), max_abs(s_i), max_abs(r_i)});

  BlockDecomposition out;
  out.membership_residuals = {commutator_residual(lb, lb, t_b) / sc, commutator_residual(act_bi, lb, s_b) / sc,
                              commutator_residual(lb, act_bi, s_i) / sc, commutator_residual(act_bi, act_bi, r_i) / sc};
  double r2 = 0.0, r3 = 0.0, r4 = 0.0;
  for (Idx k = 0; k < p; ++k) {
    const auto& lk = li[std::size_t(k)];
    const auto& ak = act_ib[std::size_t(k)];
    r2 = std::max(r2, max_abs(r_i * lk - lk * r_i - ak * s_b));
    r3 = std::max(r3, max_abs(r_i * ak - lk * s_i - ak * t_b));
    r4 = std::max({r4, max_abs(s_b * lk), max_abs(s_b * ak)});
  }
  out.relation_residuals = {r2 / sc, r3 / sc, r4 / sc};
  out.t_b = std::move(t_b);
  out.s_b = std::move(s_b);
  out.s_i = std::move(s_i);
  out.r_i = std::move(r_i);
  return out;
}

BlockDecomposition decompose_left_multiplier(const CMatrix& t, const ProductDescriptor& desc, double tol) {
  const Idx m = Idx(desc.first.dim()), p = Idx(desc.second.dim());
  if (t.rows() != m + p || t.cols() != m + p) throw Error(ErrorCode::shape_mismatch, "T must be square of size dim B + dim I");
  const double res = left_multiplier_residual(desc.algebra, t);
  if (res > tol) throw Error(ErrorCode::not_a_multiplier, "left multiplier residual " + std::to_string(res));
  return evaluate_blocks(t.topLeftCorner(m, m), t.topRightCorner(m, p), t.bottomLeftCorner(p, m),
                         t.bottomRightCorner(p, p), desc);
}

CMatrix recompose(const BlockDecomposition& blocks, const ProductDescriptor& desc, double tol) {
  const BlockDecomposition checked = evaluate_blocks(blocks.t_b, blocks.s_b, blocks.s_i, blocks.r_i, desc);
  static constexpr const char* kItems[] = {"(ii)", "(iii)", "(iv)"};
  if (checked.max_membership_residual() > tol) {
    throw Error(ErrorCode::relations_violated, "item (i): membership residual " +
                                                   std::to_string(checked.max_membership_residual()));
  }
  for (std::size_t r = 0; r < 3; ++r) {
    if (checked.relation_residuals[r] > tol) {
      throw Error(ErrorCode::relations_violated, std::string("item ") + kItems[r] + ": residual " +
                                                     std::to_string(checked.relation_residuals[r]));
    }
  }
  const Idx m = blocks.t_b.rows(), p = blocks.r_i.rows();
  CMatrix t(m + p, m + p);
  t << blocks.t_b, blocks.s_b, blocks.s_i, blocks.r_i;
  return t;
}

std::vector<BlockDecomposition> block_space(const ProductDescriptor& desc, double cutoff) {
  if (desc.kind != ProductKind::semidirect) throw Error(ErrorCode::shape_mismatch, "block form needs a semidirect descriptor");
  const Idx m = Idx(desc.first.dim()), p = Idx(desc.second.dim());
  const auto lb = left_ops(desc.first);
  const auto li = left_ops(desc.second);
  const auto act_bi = b_left_actions(desc);
  const auto act_ib = i_right_actions(desc);
  const CMatrix im = CMatrix::Identity(m, m), ip = CMatrix::Identity(p, p);

  ConstraintSystem sys;
  const auto tb = sys.add_block(m, m);
  const auto sb = sys.add_block(m, p);
  const auto si = sys.add_block(p, m);
  const auto ri = sys.add_block(p, p);
  for (Idx i = 0; i < m; ++i) {
    const auto& l = lb[std::size_t(i)];
    const auto& a = act_bi[std::size_t(i)];
    sys.add_equation({{tb, im, l, 1.0}, {tb, l, im, -1.0}});
    sys.add_equation({{sb, im, a, 1.0}, {sb, l, ip, -1.0}});
    sys.add_equation({{si, ip, l, 1.0}, {si, a, im, -1.0}});
    sys.add_equation({{ri, ip, a, 1.0}, {ri, a, ip, -1.0}});
  }
  for (Idx k = 0; k < p; ++k) {
    const auto& lk = li[std::size_t(k)];
    const auto& ak = act_ib[std::size_t(k)];
    sys.add_equation({{ri, ip, lk, 1.0}, {ri, lk, ip, -1.0}, {sb, ak, ip, -1.0}});
    sys.add_equation({{ri, ip, ak, 1.0}, {si, lk, im, -1.0}, {tb, ak, im, -1.0}});
    sys.add_equation({{sb, im, lk, 1.0}});
    sys.add_equation({{sb, im, ak, 1.0}});
  }
  const auto ns = sys.solve(cutoff);
  std::vector<BlockDecomposition> out;
  for (Idx c = 0; c < ns.basis.cols(); ++c) {
    const CVector x = ns.basis.col(c);
    out.push_back(evaluate_blocks(sys.block_of(x, tb), sys.block_of(x, sb), sys.block_of(x, si), sys.block_of(x, ri), desc));
  }
  return out;
}

HatResult hat(const CMatrix& t, const CharacterSet& characters, double threshold) {
  HatResult out;
  out.values.resize(Idx(characters.size()));
  for (std::size_t j = 0; j < characters.size(); ++j) {
    const CVector& phi = characters[j].values;
    if (phi.size() != t.cols() || t.rows() != t.cols()) throw Error(ErrorCode::shape_mismatch, "hat: shape mismatch");
    Idx c = 0;
    const double top = phi.cwiseAbs().maxCoeff(&c);
    if (!(top > threshold)) throw Error(ErrorCode::undefined_at, "character " + std::to_string(j));
    const CVector phi_t = t.transpose() * phi;  // phi(T e_c) for every c
    const Complex value = phi_t(c) / phi(c);
    out.values(Idx(j)) = value;
    out.consistency = std::max(out.consistency, (phi_t - value * phi).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace banalg
