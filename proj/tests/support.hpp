#pragma once

// Micro fixtures and brute-force oracles shared by the unit tests. None of
// the oracles call the library's solvers; each one below says what it uses.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "banalg/algebra.hpp"
#include "banalg/constructions.hpp"

namespace support {

using banalg::Algebra;
using banalg::AlgebraSpec;
using banalg::CMatrix;
using banalg::Complex;
using banalg::CVector;

inline AlgebraSpec c2_spec(std::vector<double> w = {1.0, 1.0}) {
  AlgebraSpec s;
  s.name = "C2";
  s.dim = 2;
  s.weights = std::move(w);
  s.structure = {{0, 0, 0, 1.0}, {1, 1, 1, 1.0}};
  s.unit = CVector::Ones(2);
  return s;
}

inline Algebra c2() { return Algebra::create(c2_spec()); }

inline Algebra c1(const std::string& name = "C") {
  AlgebraSpec s;
  s.name = name;
  s.dim = 1;
  s.weights = {1.0};
  s.structure = {{0, 0, 0, 1.0}};
  s.unit = CVector::Ones(1);
  return Algebra::create(s);
}

/// e0 e0 = e1, every other product zero.
inline AlgebraSpec nilpotent_spec() {
  AlgebraSpec s;
  s.name = "nil2";
  s.dim = 2;
  s.weights = {1.0, 1.0};
  s.structure = {{0, 0, 1, 1.0}};
  return s;
}

inline Algebra zero_product(std::size_t n) {
  AlgebraSpec s;
  s.name = "zero" + std::to_string(n);
  s.dim = n;
  s.weights.assign(n, 1.0);
  return Algebra::create(s);
}

/// The full matrix algebra M_2 (non-commutative), basis e11, e12, e21, e22.
inline Algebra matrix_algebra_m2() {
  AlgebraSpec s;
  s.name = "M2";
  s.dim = 4;
  s.weights.assign(4, 1.0);
  auto id = [](int r, int c) { return std::size_t(2 * r + c); };
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) s.structure.push_back({id(a, b), id(b, c), id(a, c), 1.0});
  return Algebra::create(s, {banalg::kAlgebraicTol, false});
}

/// Upper triangular 2x2 matrices, basis e11, e12, e22.
inline Algebra triangular_t2() {
  AlgebraSpec s;
  s.name = "T2";
  s.dim = 3;
  s.weights.assign(3, 1.0);
  s.structure = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}, {1, 2, 1, 1.0}, {2, 2, 2, 1.0}};
  return Algebra::create(s, {banalg::kAlgebraicTol, false});
}

/// B = span{(1,1)}, I = span{(1,0)} inside C^2.
inline banalg::ProductDescriptor pointwise_semidirect() {
  CMatrix bb(2, 1), ib(2, 1);
  bb << 1.0, 1.0;
  ib << 1.0, 0.0;
  return banalg::semidirect(banalg::split_algebra(c2(), bb, ib, {1.0}, {1.0}));
}

/// A = C, B = C^2, phi(b) = b_1.
inline banalg::ProductDescriptor lau_fixture() {
  CMatrix phi(1, 2);
  phi << 1.0, 0.0;
  return banalg::lau_product(c1(), c2(), phi);
}

/// max |(e_i e_j) e_k - e_i (e_j e_k)| by explicit contraction of a dense tensor.
inline double associativity_by_contraction(const AlgebraSpec& s) {
  const std::size_t n = s.dim;
  std::vector<Complex> c(n * n * n, 0.0);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> Complex& { return c[(i * n + j) * n + k]; };
  for (const auto& e : s.structure) at(e.i, e.j, e.k) += e.value;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r) {
          Complex lhs = 0.0, rhs = 0.0;
          for (std::size_t l = 0; l < n; ++l) {
            lhs += at(i, j, l) * at(l, k, r);
            rhs += at(j, k, l) * at(i, l, r);
          }
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

/// Lower bound for an operator norm by sampling random sparse and dense vectors.
inline double sampled_operator_norm(const CMatrix& m, const std::vector<double>& src, const std::vector<double>& tgt,
                                    int samples = 4000, unsigned seed = 7) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    CVector x = CVector::Zero(m.cols());
    if (s < m.cols()) {
      x(s) = 1.0;
    } else {
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(nd(gen), nd(gen));
    }
    const double num = banalg::weighted_l1(m * x, tgt);
    const double den = banalg::weighted_l1(x, src);
    if (den > 0.0) best = std::max(best, num / den);
  }
  return best;
}

/// Dimension of the null space of a dense matrix via full-pivot LU.
inline std::size_t lu_nullity(const CMatrix& k, double threshold = 1e-10) {
  Eigen::FullPivLU<CMatrix> lu(k);
  lu.setThreshold(threshold);
  return std::size_t(k.cols() - lu.rank());
}

/// Left-multiplier constraint matrix written out entrywise:
/// T(e_i e_j) - e_i T(e_j) = 0 with T stored column-major.
inline CMatrix left_multiplier_constraints(const Algebra& a) {
  const Eigen::Index n = Eigen::Index(a.dim());
  CMatrix rows = CMatrix::Zero(n * n * n, n * n);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const CVector eij = a.basis_product(std::size_t(i), std::size_t(j));
      for (Eigen::Index k = 0; k < n; ++k, ++r) {
        for (Eigen::Index l = 0; l < n; ++l) rows(r, k + l * n) += eij(l);  // T(e_i e_j)_k
        for (Eigen::Index l = 0; l < n; ++l) {
          // (e_i T(e_j))_k = sum_l T_{l j} (e_i e_l)_k
          rows(r, l + j * n) -= a.basis_product(std::size_t(i), std::size_t(l))(k);
        }
      }
    }
  return rows;
}

/// Two-sided: T(e_i) e_j - e_i T(e_j) = 0.
inline CMatrix multiplier_constraints(const Algebra& a) {
  const Eigen::Index n = Eigen::Index(a.dim());
  CMatrix rows = CMatrix::Zero(n * n * n, n * n);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k, ++r)
        for (Eigen::Index l = 0; l < n; ++l) {
          rows(r, l + i * n) += a.basis_product(std::size_t(l), std::size_t(j))(k);
          rows(r, l + j * n) -= a.basis_product(std::size_t(i), std::size_t(l))(k);
        }
  return rows;
}

/// Brute-force characters of l1(Z_n1 x ... ) : try every assignment of
/// n_r-th roots of unity to the generators and keep the multiplicative ones.
inline std::vector<CVector> brute_force_group_characters(const Algebra& a, const std::vector<int>& orders) {
  const std::size_t r = orders.size();
  std::size_t total = 1;
  for (int o : orders) total *= std::size_t(o);
  std::vector<CVector> out;
  std::vector<int> choice(r, 0);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t q = r; q-- > 0;) {
      choice[q] = int(c % std::size_t(orders[q]));
      c /= std::size_t(orders[q]);
    }
    CVector chi(a.dim());
    for (std::size_t g = 0; g < a.dim(); ++g) {
      std::size_t rest = g;
      Complex v = 1.0;
      for (std::size_t q = r; q-- > 0;) {
        const int digit = int(rest % std::size_t(orders[q]));
        rest /= std::size_t(orders[q]);
        v *= std::polar(1.0, 2.0 * std::numbers::pi * choice[q] * digit / orders[q]);
      }
      chi(g) = v;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j)
        worst = std::max(worst, std::abs((a.basis_product(i, j).transpose() * chi)(0) - chi(i) * chi(j)));
    if (worst < 1e-12) out.push_back(chi);
  }
  return out;
}

/// min sum w_i |x_i| subject to A x = b for real A, b by enumerating basic
/// solutions (supports of size rank A). Exponential; for tiny instances only.
inline double real_l1_min_by_vertices(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const std::vector<double>& w) {
  const int k = int(a.rows()), n = int(a.cols());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(n, 0);
  std::fill(pick.begin(), pick.begin() + std::min(k, n), 1);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<int> cols;
    for (int i = 0; i < n; ++i)
      if (pick[i]) cols.push_back(i);
    Eigen::MatrixXd sub(k, int(cols.size()));
    for (int c = 0; c < int(cols.size()); ++c) sub.col(c) = a.col(cols[c]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (lu.rank() < int(cols.size())) continue;
    const Eigen::VectorXd x = lu.solve(b);
    if ((sub * x - b).norm() > 1e-9) continue;
    double v = 0.0;
    for (int c = 0; c < int(cols.size()); ++c) v += w[cols[c]] * std::abs(x(c));
    best = std::min(best, v);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace support
