#pragma once

// Small dense linear-algebra helpers built on SVD null spaces.

#include <cstddef>
#include <vector>

#include "banalg/algebra.hpp"

namespace banalg::linalg {

/// Relative singular-value cutoff used for every null-space and rank decision.
inline constexpr double kRankCutoff = 1e-10;

struct NullSpace {
  CMatrix basis;            // orthonormal columns spanning the null space
  RVector singular_values;  // of the constraint matrix, descending
};

/// Null space of K via SVD; singular values <= cutoff * sigma_max count as zero.
/// A zero matrix (or one with no rows) has the full space as null space.
NullSpace null_space(const CMatrix& k, double cutoff = kRankCutoff);

std::size_t rank(const CMatrix& m, double cutoff = kRankCutoff);

/// Orthonormal basis of the column space.
CMatrix column_space(const CMatrix& m, double cutoff = kRankCutoff);

/// Largest distance from a unit vector of span(a) to span(b), where both
/// arguments hold orthonormal columns.
double subspace_gap(const CMatrix& a_orthonormal, const CMatrix& b_orthonormal);

/// Distance from v to the span of the orthonormal columns of b.
double distance_to_span(const CVector& v, const CMatrix& b_orthonormal);

/// vec(P X Q) = kron(Q^T, P) vec(X) for column-major vec.
CMatrix kron(const CMatrix& a, const CMatrix& b);

inline CVector vec(const CMatrix& m) { return Eigen::Map<const CVector>(m.data(), m.size()); }
inline CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

/// Homogeneous linear system over a collection of matrix-valued unknowns.
/// Each equation is sum_t coeff_t * P_t * X_{b_t} * Q_t = 0.
class ConstraintSystem {
 public:
  struct Term {
    std::size_t block;
    CMatrix left;
    CMatrix right;
    Complex coeff{1.0, 0.0};
  };

  std::size_t add_block(Eigen::Index rows, Eigen::Index cols);
  void add_equation(const std::vector<Term>& terms);
  /// Raw rows over the full unknown vector.
  void add_rows(const CMatrix& rows);

  Eigen::Index unknowns() const { return total_; }
  CMatrix matrix() const;
  NullSpace solve(double cutoff = kRankCutoff) const { return null_space(matrix(), cutoff); }

  CMatrix block_of(const CVector& x, std::size_t block) const;
  CVector pack(const std::vector<CMatrix>& blocks) const;
  Eigen::Index offset(std::size_t block) const { return blocks_[block].offset; }

 private:
  struct Block {
    Eigen::Index rows, cols, offset;
  };
  std::vector<Block> blocks_;
  std::vector<CMatrix> row_chunks_;
  Eigen::Index total_ = 0;
};

}  // namespace banalg::linalg
