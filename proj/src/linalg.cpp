#include "banalg/linalg.hpp"

#include <algorithm>

namespace banalg::linalg {

namespace {

// Reduce a tall matrix to its square triangular factor; singular values and
// right singular vectors are unchanged.
CMatrix compress_rows(const CMatrix& k) {
  if (k.rows() <= k.cols()) return k;
  Eigen::HouseholderQR<CMatrix> qr(k);
  return qr.matrixQR().topRows(k.cols()).triangularView<Eigen::Upper>();
}

}  // namespace

NullSpace null_space(const CMatrix& k, double cutoff) {
  const Eigen::Index n = k.cols();
  NullSpace out;
  if (n == 0) {
    out.basis = CMatrix(0, 0);
    return out;
  }
  if (k.rows() == 0) {
    out.basis = CMatrix::Identity(n, n);
    out.singular_values = RVector::Zero(n);
    return out;
  }
  const CMatrix r = compress_rows(k);
  Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeFullV);
  RVector sv = RVector::Zero(n);
  const RVector& s = svd.singularValues();
  sv.head(s.size()) = s;
  out.singular_values = sv;
  const double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index kept = 0;
  if (smax > 0.0) {
    while (kept < sv.size() && sv(kept) > cutoff * smax) ++kept;
  }
  out.basis = svd.matrixV().rightCols(n - kept);
  return out;
}

std::size_t rank(const CMatrix& m, double cutoff) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(compress_rows(m));
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff * s(0)) ++r;
  }
  return r;
}

CMatrix column_space(const CMatrix& m, double cutoff) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  Eigen::Index r = 0;
  if (s.size() && s(0) > 0.0) {
    while (r < s.size() && s(r) > cutoff * s(0)) ++r;
  }
  // Jacobi rotations can lose orthogonality on badly scaled input; a
  // Householder pass restores it without changing the span.
  const CMatrix u = svd.matrixU().leftCols(r);
  Eigen::HouseholderQR<CMatrix> qr(u);
  return qr.householderQ() * CMatrix::Identity(u.rows(), r);
}

double distance_to_span(const CVector& v, const CMatrix& b) {
  if (b.cols() == 0) return v.norm();
  return (v - b * (b.adjoint() * v)).norm();
}

double subspace_gap(const CMatrix& a, const CMatrix& b) {
  double gap = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) gap = std::max(gap, distance_to_span(a.col(j), b));
  return gap;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::size_t ConstraintSystem::add_block(Eigen::Index rows, Eigen::Index cols) {
  blocks_.push_back({rows, cols, total_});
  total_ += rows * cols;
  for (auto& chunk : row_chunks_) chunk.conservativeResize(chunk.rows(), total_);
  return blocks_.size() - 1;
}

void ConstraintSystem::add_equation(const std::vector<Term>& terms) {
  if (terms.empty()) return;
  const Eigen::Index out_rows = terms.front().left.rows() * terms.front().right.cols();
  CMatrix rows = CMatrix::Zero(out_rows, total_);
  for (const auto& t : terms) {
    const Block& b = blocks_.at(t.block);
    if (t.left.cols() != b.rows || t.right.rows() != b.cols ||
        t.left.rows() * t.right.cols() != out_rows) {
      throw Error(ErrorCode::shape_mismatch, "constraint term has inconsistent shape");
    }
    rows.middleCols(b.offset, b.rows * b.cols) += t.coeff * kron(t.right.transpose(), t.left);
  }
  row_chunks_.push_back(std::move(rows));
}

void ConstraintSystem::add_rows(const CMatrix& rows) {
  if (rows.cols() != total_) throw Error(ErrorCode::shape_mismatch, "raw constraint rows have wrong width");
  row_chunks_.push_back(rows);
}

CMatrix ConstraintSystem::matrix() const {
  Eigen::Index total_rows = 0;
  for (const auto& c : row_chunks_) total_rows += c.rows();
  CMatrix m(total_rows, total_);
  Eigen::Index at = 0;
  for (const auto& c : row_chunks_) {
    m.middleRows(at, c.rows()) = c;
    at += c.rows();
  }
  return m;
}

CMatrix ConstraintSystem::block_of(const CVector& x, std::size_t block) const {
  const Block& b = blocks_.at(block);
  return unvec(x.segment(b.offset, b.rows * b.cols), b.rows, b.cols);
}

CVector ConstraintSystem::pack(const std::vector<CMatrix>& blocks) const {
  CVector x = CVector::Zero(total_);
  for (std::size_t i = 0; i < blocks.size() && i < blocks_.size(); ++i) {
    const Block& b = blocks_[i];
    x.segment(b.offset, b.rows * b.cols) = vec(blocks[i]);
  }
  return x;
}

}  // namespace banalg::linalg
