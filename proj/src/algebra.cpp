#include "banalg/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace banalg {

struct Algebra::Impl {
  AlgebraSpec spec;
  // Left operators of the basis elements; only populated below kDenseDimLimit.
  std::vector<CMatrix> dense_left;
};

namespace {

void check_shape(const AlgebraSpec& spec) {
  if (spec.dim == 0) throw Error(ErrorCode::rejected, "dim must be at least 1");
  if (spec.weights.size() != spec.dim) {
    throw Error(ErrorCode::shape_mismatch, "weights has " + std::to_string(spec.weights.size()) +
                                               " entries, expected " + std::to_string(spec.dim));
  }
  for (std::size_t i = 0; i < spec.dim; ++i) {
    if (!(spec.weights[i] > 0.0) || !std::isfinite(spec.weights[i])) {
      throw Error(ErrorCode::rejected, "weight " + std::to_string(i) + " is not strictly positive");
    }
  }
  for (const auto& e : spec.structure) {
    if (e.i >= spec.dim || e.j >= spec.dim || e.k >= spec.dim) {
      throw Error(ErrorCode::shape_mismatch, "structure index out of range");
    }
  }
  if (spec.unit && static_cast<std::size_t>(spec.unit->size()) != spec.dim) {
    throw Error(ErrorCode::shape_mismatch, "unit has wrong length");
  }
}

std::vector<CMatrix> build_left_operators(const AlgebraSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.dim);
  std::vector<CMatrix> ops(spec.dim, CMatrix::Zero(n, n));
  for (const auto& e : spec.structure) ops[e.i](e.k, e.j) += e.value;
  return ops;
}

}  // namespace

ValidationReport validate(const AlgebraSpec& spec, const ValidationOptions& options) {
  check_shape(spec);
  ValidationReport report;
  const std::size_t n = spec.dim;
  const auto left = build_left_operators(spec);

  // (e_i e_j) e_k = e_i (e_j e_k)  <=>  L_{e_i e_j} = L_i L_j
  double assoc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      CMatrix lhs = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      const auto col = left[i].col(static_cast<Eigen::Index>(j));
      for (std::size_t l = 0; l < n; ++l) {
        const Complex c = col(static_cast<Eigen::Index>(l));
        if (c != Complex(0.0)) lhs += c * left[l];
      }
      assoc = std::max(assoc, (lhs - left[i] * left[j]).cwiseAbs().maxCoeff());
    }
  }
  report.associativity_residual = assoc;
  if (assoc > options.tol) {
    report.violations.push_back("associativity residual " + std::to_string(assoc));
  }

  double comm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      comm = std::max(comm, (left[i].col(b) - left[j].col(a)).cwiseAbs().maxCoeff());
    }
  }
  report.commutativity_residual = comm;
  if (options.require_commutative && comm > options.tol) {
    report.violations.push_back("commutativity residual " + std::to_string(comm));
  }

  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double lhs = weighted_l1(left[i].col(static_cast<Eigen::Index>(j)), spec.weights);
      const double rhs = spec.weights[i] * spec.weights[j];
      excess = std::max(excess, lhs - rhs);
      if (lhs > rhs + options.tol * std::max(1.0, rhs)) ++report.submultiplicativity_violations;
    }
  }
  report.submultiplicativity_excess = excess;
  if (report.submultiplicativity_violations > 0) {
    report.violations.push_back("submultiplicativity fails on " +
                                std::to_string(report.submultiplicativity_violations) + " basis pairs");
  }

  if (spec.unit) {
    double unit_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CVector ui = CVector::Zero(static_cast<Eigen::Index>(n));
      for (std::size_t l = 0; l < n; ++l) ui += (*spec.unit)(static_cast<Eigen::Index>(l)) * left[l].col(static_cast<Eigen::Index>(i));
      ui(static_cast<Eigen::Index>(i)) -= 1.0;
      unit_res = std::max(unit_res, ui.cwiseAbs().maxCoeff());
    }
    report.unit_residual = unit_res;
    if (unit_res > options.tol) report.violations.push_back("unit residual " + std::to_string(unit_res));
  }

  report.accepted = report.violations.empty();
  return report;
}

Algebra Algebra::create(AlgebraSpec spec, const ValidationOptions& options) {
  const auto report = validate(spec, options);
  if (!report.accepted) {
    std::ostringstream os;
    for (std::size_t i = 0; i < report.violations.size(); ++i) {
      if (i) os << "; ";
      os << report.violations[i];
    }
    throw Error(ErrorCode::rejected, os.str());
  }
  return unchecked(std::move(spec));
}

Algebra Algebra::unchecked(AlgebraSpec spec) {
  check_shape(spec);
  auto impl = std::make_shared<Impl>();
  std::sort(spec.structure.begin(), spec.structure.end(), [](const auto& a, const auto& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  if (spec.dim < kDenseDimLimit) impl->dense_left = build_left_operators(spec);
  impl->spec = std::move(spec);
  return Algebra(std::move(impl));
}

const AlgebraSpec& Algebra::spec() const { return impl_->spec; }

CMatrix Algebra::basis_left_operator(std::size_t i) const {
  if (!impl_->dense_left.empty()) return impl_->dense_left[i];
  const auto n = static_cast<Eigen::Index>(dim());
  CMatrix m = CMatrix::Zero(n, n);
  for (const auto& e : spec().structure) {
    if (e.i == i) m(static_cast<Eigen::Index>(e.k), static_cast<Eigen::Index>(e.j)) += e.value;
  }
  return m;
}

CMatrix Algebra::basis_right_operator(std::size_t i) const {
  const auto n = static_cast<Eigen::Index>(dim());
  CMatrix m = CMatrix::Zero(n, n);
  for (const auto& e : spec().structure) {
    if (e.j == i) m(static_cast<Eigen::Index>(e.k), static_cast<Eigen::Index>(e.i)) += e.value;
  }
  return m;
}

CVector Algebra::basis_product(std::size_t i, std::size_t j) const {
  if (!impl_->dense_left.empty()) return impl_->dense_left[i].col(static_cast<Eigen::Index>(j));
  CVector v = CVector::Zero(static_cast<Eigen::Index>(dim()));
  for (const auto& e : spec().structure) {
    if (e.i == i && e.j == j) v(static_cast<Eigen::Index>(e.k)) += e.value;
  }
  return v;
}

CVector Algebra::product(const CVector& a, const CVector& b) const {
  if (a.size() != static_cast<Eigen::Index>(dim()) || b.size() != static_cast<Eigen::Index>(dim())) {
    throw Error(ErrorCode::shape_mismatch, "operand length does not match algebra dimension");
  }
  CVector out = CVector::Zero(static_cast<Eigen::Index>(dim()));
  for (const auto& e : spec().structure) {
    out(static_cast<Eigen::Index>(e.k)) +=
        a(static_cast<Eigen::Index>(e.i)) * b(static_cast<Eigen::Index>(e.j)) * e.value;
  }
  return out;
}

CMatrix Algebra::left_matrix(const CVector& a) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (a.size() != n) throw Error(ErrorCode::shape_mismatch, "element length does not match algebra dimension");
  CMatrix m = CMatrix::Zero(n, n);
  for (const auto& e : spec().structure) {
    m(static_cast<Eigen::Index>(e.k), static_cast<Eigen::Index>(e.j)) += a(static_cast<Eigen::Index>(e.i)) * e.value;
  }
  return m;
}

CMatrix Algebra::right_matrix(const CVector& a) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (a.size() != n) throw Error(ErrorCode::shape_mismatch, "element length does not match algebra dimension");
  CMatrix m = CMatrix::Zero(n, n);
  for (const auto& e : spec().structure) {
    m(static_cast<Eigen::Index>(e.k), static_cast<Eigen::Index>(e.i)) += a(static_cast<Eigen::Index>(e.j)) * e.value;
  }
  return m;
}

double Algebra::norm(const CVector& a) const {
  if (a.size() != static_cast<Eigen::Index>(dim())) throw Error(ErrorCode::shape_mismatch, "norm: wrong length");
  return weighted_l1(a, weights());
}

double Algebra::dual_norm(const CVector& f) const {
  if (f.size() != static_cast<Eigen::Index>(dim())) throw Error(ErrorCode::shape_mismatch, "dual_norm: wrong length");
  double best = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) best = std::max(best, std::abs(f(static_cast<Eigen::Index>(i))) / weights()[i]);
  return best;
}

bool Algebra::commutative(double tol) const {
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = i + 1; j < dim(); ++j) {
      if ((basis_product(i, j) - basis_product(j, i)).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

bool Algebra::same_as(const Algebra& other) const {
  if (impl_ == other.impl_) return true;
  const auto& a = spec();
  const auto& b = other.spec();
  return a.dim == b.dim && a.weights == b.weights && a.structure == b.structure;
}

Element::Element(Algebra alg, CVector c) : algebra(std::move(alg)), coeffs(std::move(c)) {
  if (coeffs.size() != static_cast<Eigen::Index>(algebra.dim())) {
    throw Error(ErrorCode::shape_mismatch, "element length does not match algebra dimension");
  }
}

Element Element::basis(const Algebra& alg, std::size_t i) {
  CVector c = CVector::Zero(static_cast<Eigen::Index>(alg.dim()));
  c(static_cast<Eigen::Index>(i)) = 1.0;
  return Element(alg, std::move(c));
}

Element Element::zero(const Algebra& alg) { return Element(alg, CVector::Zero(static_cast<Eigen::Index>(alg.dim()))); }

LinearMap::LinearMap(Algebra src, Algebra tgt, CMatrix m)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (matrix.rows() != static_cast<Eigen::Index>(target.dim()) ||
      matrix.cols() != static_cast<Eigen::Index>(source.dim())) {
    throw Error(ErrorCode::shape_mismatch, "linear map matrix must be target.dim x source.dim");
  }
}

Element multiply(const Element& a, const Element& b) {
  if (!a.algebra.same_as(b.algebra)) throw Error(ErrorCode::algebra_mismatch, "multiply: operands live in different algebras");
  return Element(a.algebra, a.algebra.product(a.coeffs, b.coeffs));
}

Element add(const Element& a, const Element& b) {
  if (!a.algebra.same_as(b.algebra)) throw Error(ErrorCode::algebra_mismatch, "add: operands live in different algebras");
  return Element(a.algebra, a.coeffs + b.coeffs);
}

Element scale(Complex s, const Element& a) { return Element(a.algebra, s * a.coeffs); }

double norm(const Element& a) { return a.algebra.norm(a.coeffs); }

double dual_norm(const CVector& f, const Algebra& algebra) { return algebra.dual_norm(f); }

double weighted_l1(const CVector& v, const std::vector<double>& weights) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += weights[static_cast<std::size_t>(i)] * std::abs(v(i));
  return s;
}

double operator_norm(const CMatrix& matrix, const std::vector<double>& source_weights,
                     const std::vector<double>& target_weights) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    best = std::max(best, weighted_l1(matrix.col(j), target_weights) / source_weights[static_cast<std::size_t>(j)]);
  }
  return best;
}

double operator_norm(const LinearMap& map) {
  return operator_norm(map.matrix, map.source.weights(), map.target.weights());
}

LinearMap left_mult_operator(const Element& a) {
  return LinearMap(a.algebra, a.algebra, a.algebra.left_matrix(a.coeffs));
}

double submultiplicative_weight_scale(const AlgebraSpec& spec) {
  const auto left = build_left_operators(spec);
  double s = 1.0;
  for (std::size_t i = 0; i < spec.dim; ++i) {
    for (std::size_t j = 0; j < spec.dim; ++j) {
      const double lhs = weighted_l1(left[i].col(static_cast<Eigen::Index>(j)), spec.weights);
      s = std::max(s, lhs / (spec.weights[i] * spec.weights[j]));
    }
  }
  return s;
}

std::vector<StructureEntry> structure_from_products(const std::vector<std::vector<CVector>>& products, double drop) {
  std::vector<StructureEntry> out;
  for (std::size_t i = 0; i < products.size(); ++i) {
    for (std::size_t j = 0; j < products[i].size(); ++j) {
      const CVector& v = products[i][j];
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > drop) out.push_back({i, j, static_cast<std::size_t>(k), v(k)});
      }
    }
  }
  return out;
}

}  // namespace banalg
