#pragma once

// Finite-dimensional complex algebras given by structure constants over a
// fixed basis, normed by a weighted l1 norm ||a|| = sum_i w_i |a_i|.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "banalg/error.hpp"

namespace banalg {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kAlgebraicTol = 1e-9;
inline constexpr double kOptimizationTol = 1e-6;

/// Dense storage is used for basis operators below this dimension.
inline constexpr std::size_t kDenseDimLimit = 32;

/// One nonzero structure constant: e_i * e_j contributes value * e_k.
struct StructureEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  Complex value;

  friend bool operator==(const StructureEntry&, const StructureEntry&) = default;
};

struct AlgebraSpec {
  std::string name;
  std::size_t dim = 0;
  std::vector<double> weights;
  std::vector<StructureEntry> structure;
  std::optional<CVector> unit;
};

struct ValidationOptions {
  double tol = kAlgebraicTol;
  bool require_commutative = true;
};

struct ValidationReport {
  double associativity_residual = 0.0;
  double commutativity_residual = 0.0;
  /// max over basis pairs of ||e_i e_j|| - w_i w_j (nonpositive when submultiplicative)
  double submultiplicativity_excess = 0.0;
  std::size_t submultiplicativity_violations = 0;
  std::optional<double> unit_residual;
  std::vector<std::string> violations;
  bool accepted = true;
};

/// Checks shape, associativity, commutativity, norm submultiplicativity and
/// the unit (if given). Never throws on axiom failures; inspect `accepted`.
/// Throws SHAPE_MISMATCH / REJECTED only for malformed specs (dim 0,
/// nonpositive weights, out-of-range indices).
ValidationReport validate(const AlgebraSpec& spec, const ValidationOptions& options = {});

/// Immutable algebra. Copies share state, so passing by value is cheap.
class Algebra {
 public:
  /// Validates and throws REJECTED(reason) when an axiom fails beyond tolerance.
  static Algebra create(AlgebraSpec spec, const ValidationOptions& options = {});
  /// Skips the axiom checks (shape is still enforced). Used for deliberately
  /// broken inputs in tests and for intermediate assembly.
  static Algebra unchecked(AlgebraSpec spec);

  const AlgebraSpec& spec() const;
  const std::string& name() const { return spec().name; }
  std::size_t dim() const { return spec().dim; }
  const std::vector<double>& weights() const { return spec().weights; }
  const std::optional<CVector>& unit() const { return spec().unit; }

  /// Matrix of x -> e_i x, i.e. column j holds the coordinates of e_i e_j.
  CMatrix basis_left_operator(std::size_t i) const;
  /// Matrix of x -> x e_i.
  CMatrix basis_right_operator(std::size_t i) const;
  /// Coordinates of e_i e_j.
  CVector basis_product(std::size_t i, std::size_t j) const;

  CVector product(const CVector& a, const CVector& b) const;
  CMatrix left_matrix(const CVector& a) const;
  CMatrix right_matrix(const CVector& a) const;

  double norm(const CVector& a) const;
  double dual_norm(const CVector& f) const;

  bool commutative(double tol = kAlgebraicTol) const;
  bool same_as(const Algebra& other) const;

 private:
  struct Impl;
  explicit Algebra(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

struct Element {
  Algebra algebra;
  CVector coeffs;

  Element(Algebra alg, CVector c);
  static Element basis(const Algebra& alg, std::size_t i);
  static Element zero(const Algebra& alg);
};

struct LinearMap {
  Algebra source;
  Algebra target;
  CMatrix matrix;  // target.dim() x source.dim()

  LinearMap(Algebra src, Algebra tgt, CMatrix m);
  CVector operator()(const CVector& x) const { return matrix * x; }
};

Element multiply(const Element& a, const Element& b);
Element add(const Element& a, const Element& b);
Element scale(Complex s, const Element& a);

double norm(const Element& a);
double dual_norm(const CVector& f, const Algebra& algebra);

/// Exact operator norm between weighted l1 spaces: max_j ||L e_j|| / w_j.
double operator_norm(const LinearMap& map);
double operator_norm(const CMatrix& matrix, const std::vector<double>& source_weights,
                     const std::vector<double>& target_weights);

LinearMap left_mult_operator(const Element& a);

/// Weighted l1 norm of a coordinate vector.
double weighted_l1(const CVector& v, const std::vector<double>& weights);

/// Smallest s >= 1 such that scaling every weight by s makes the structure
/// submultiplicative.
double submultiplicative_weight_scale(const AlgebraSpec& spec);

/// Dense structure entries from a list of basis products (column k of
/// products[i][j] gives e_i e_j). Entries with |value| <= drop are skipped.
std::vector<StructureEntry> structure_from_products(const std::vector<std::vector<CVector>>& products,
                                                    double drop = 0.0);

}  // namespace banalg
