#include "banalg/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "banalg/linalg.hpp"

namespace banalg {

std::string_view to_string(ProductKind kind) {
  switch (kind) {
    case ProductKind::semidirect: return "semidirect";
    case ProductKind::lau: return "lau";
    case ProductKind::direct_sum: return "direct_sum";
  }
  return "unknown";
}

namespace {

using Idx = Eigen::Index;

Idx idx(std::size_t i) { return static_cast<Idx>(i); }

std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void append_block(std::vector<StructureEntry>& out, const CVector& v, std::size_t i, std::size_t j,
                  std::size_t k_offset) {
  for (Idx k = 0; k < v.size(); ++k) {
    if (v(k) != Complex(0.0)) out.push_back({i, j, k_offset + static_cast<std::size_t>(k), v(k)});
  }
}

Algebra finish_product(AlgebraSpec spec, bool commutative_inputs, double tol, ErrorCode assoc_code) {
  ValidationOptions opts{tol, commutative_inputs};
  const auto report = validate(spec, opts);
  if (report.associativity_residual > tol) {
    throw Error(assoc_code, "assembled product fails associativity (residual " +
                                std::to_string(report.associativity_residual) + ")");
  }
  if (!report.accepted) {
    std::ostringstream os;
    for (const auto& v : report.violations) os << v << "; ";
    throw Error(ErrorCode::rejected, os.str());
  }
  return Algebra::unchecked(std::move(spec));
}

}  // namespace

CMatrix ProductDescriptor::first_embedding() const {
  CMatrix e = CMatrix::Zero(idx(algebra.dim()), idx(first.dim()));
  e.topRows(idx(first.dim())).setIdentity();
  return e;
}

CMatrix ProductDescriptor::second_embedding() const {
  CMatrix e = CMatrix::Zero(idx(algebra.dim()), idx(second.dim()));
  e.bottomRows(idx(second.dim())).setIdentity();
  return e;
}

std::vector<CMatrix> b_left_actions(const ProductDescriptor& desc) {
  const std::size_t m = desc.first.dim(), p = desc.second.dim();
  std::vector<CMatrix> out(m, CMatrix::Zero(idx(p), idx(p)));
  if (!desc.actions) throw Error(ErrorCode::shape_mismatch, "descriptor carries no module actions");
  for (const auto& e : desc.actions->b_on_i) out[e.i](idx(e.k), idx(e.j)) += e.value;
  return out;
}

std::vector<CMatrix> i_right_actions(const ProductDescriptor& desc) {
  const std::size_t m = desc.first.dim(), p = desc.second.dim();
  std::vector<CMatrix> out(p, CMatrix::Zero(idx(p), idx(m)));
  if (!desc.actions) throw Error(ErrorCode::shape_mismatch, "descriptor carries no module actions");
  for (const auto& e : desc.actions->i_on_b) out[e.i](idx(e.k), idx(e.j)) += e.value;
  return out;
}

std::vector<CMatrix> i_times_b_actions(const ProductDescriptor& desc) {
  const std::size_t m = desc.first.dim(), p = desc.second.dim();
  std::vector<CMatrix> out(m, CMatrix::Zero(idx(p), idx(p)));
  if (!desc.actions) throw Error(ErrorCode::shape_mismatch, "descriptor carries no module actions");
  for (const auto& e : desc.actions->i_on_b) out[e.j](idx(e.k), idx(e.i)) += e.value;
  return out;
}

ProductDescriptor semidirect(const SemidirectSpec& spec, double tol) {
  const std::size_t m = spec.b.dim(), p = spec.i.dim();
  for (const auto& e : spec.actions.b_on_i) {
    if (e.i >= m || e.j >= p || e.k >= p) throw Error(ErrorCode::shape_mismatch, "b_on_i index out of range");
  }
  for (const auto& e : spec.actions.i_on_b) {
    if (e.i >= p || e.j >= m || e.k >= p) throw Error(ErrorCode::shape_mismatch, "i_on_b index out of range");
  }
  AlgebraSpec out;
  out.name = spec.b.name() + "(+)" + spec.i.name();
  out.dim = m + p;
  out.weights = concat(spec.b.weights(), spec.i.weights());
  for (const auto& e : spec.b.spec().structure) out.structure.push_back(e);
  for (const auto& e : spec.actions.b_on_i) out.structure.push_back({e.i, m + e.j, m + e.k, e.value});
  for (const auto& e : spec.actions.i_on_b) out.structure.push_back({m + e.i, e.j, m + e.k, e.value});
  for (const auto& e : spec.i.spec().structure) out.structure.push_back({m + e.i, m + e.j, m + e.k, e.value});
  const bool comm = spec.b.commutative() && spec.i.commutative();
  Algebra assembled = finish_product(std::move(out), comm, tol, ErrorCode::invalid_action);
  return ProductDescriptor{ProductKind::semidirect, assembled, spec.b, spec.i, std::nullopt, spec.actions, false};
}

HomomorphismReport check_homomorphism(const LinearMap& phi, double tol) {
  HomomorphismReport r;
  const Algebra& b = phi.source;
  const Algebra& a = phi.target;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      const CVector lhs = phi.matrix * b.basis_product(i, j);
      const CVector rhs = a.product(phi.matrix.col(idx(i)), phi.matrix.col(idx(j)));
      r.residual = std::max(r.residual, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  r.norm = operator_norm(phi);
  r.homomorphism = r.residual <= tol;
  r.contractive = r.norm <= 1.0 + tol;
  return r;
}

ProductDescriptor lau_product(const Algebra& a, const Algebra& b, const CMatrix& phi, const LauOptions& options) {
  const std::size_t p = a.dim(), m = b.dim();
  const LinearMap map(b, a, phi);
  const auto hom = check_homomorphism(map, options.tol);
  if (!hom.homomorphism) {
    throw Error(ErrorCode::not_homomorphism, "phi(bb') - phi(b)phi(b') residual " + std::to_string(hom.residual));
  }
  if (!hom.contractive && !options.force) {
    std::ostringstream os;
    os.precision(17);
    os << "operator norm of phi is " << hom.norm;
    throw Error(ErrorCode::not_contractive, os.str());
  }
  AlgebraSpec out;
  out.name = a.name() + "x_phi" + b.name();
  out.dim = p + m;
  out.weights = concat(a.weights(), b.weights());
  for (const auto& e : a.spec().structure) out.structure.push_back(e);
  for (std::size_t i = 0; i < p; ++i) {
    const CMatrix li = a.basis_left_operator(i);
    const CMatrix ri = a.basis_right_operator(i);
    for (std::size_t j = 0; j < m; ++j) {
      append_block(out.structure, li * phi.col(idx(j)), i, p + j, 0);  // a phi(b')
      append_block(out.structure, ri * phi.col(idx(j)), p + j, i, 0);  // phi(b) a'
    }
  }
  for (const auto& e : b.spec().structure) out.structure.push_back({p + e.i, p + e.j, p + e.k, e.value});
  if (a.unit() && b.unit()) {
    // (e_A - phi(e_B), e_B) is the identity of the product.
    CVector u(idx(p + m));
    u << *a.unit() - phi * *b.unit(), *b.unit();
    out.unit = u;
  }
  const bool comm = a.commutative() && b.commutative();
  // A contractive homomorphism keeps the l1-sum norm submultiplicative; a
  // forced non-contractive phi may not, so the norm axiom is then not enforced.
  Algebra assembled = [&] {
    if (!options.force || hom.contractive) return finish_product(std::move(out), comm, options.tol, ErrorCode::rejected);
    const auto report = validate(out, {options.tol, comm});
    if (report.associativity_residual > options.tol || (comm && report.commutativity_residual > options.tol)) {
      throw Error(ErrorCode::rejected, "forced Lau product fails the algebra axioms");
    }
    return Algebra::unchecked(std::move(out));
  }();
  const bool is_zero = phi.cwiseAbs().maxCoeff() == 0.0;
  return ProductDescriptor{is_zero ? ProductKind::direct_sum : ProductKind::lau,
                           assembled,
                           a,
                           b,
                           phi,
                           std::nullopt,
                           options.force && !hom.contractive};
}

ProductDescriptor direct_sum(const Algebra& a, const Algebra& b) {
  auto desc = lau_product(a, b, CMatrix::Zero(idx(a.dim()), idx(b.dim())));
  desc.kind = ProductKind::direct_sum;
  return desc;
}

ProductDescriptor lau_as_semidirect(const ProductDescriptor& lau) {
  if (!lau.phi) throw Error(ErrorCode::shape_mismatch, "lau_as_semidirect needs a Lau or direct-sum descriptor");
  const Algebra& a = lau.first;
  const Algebra& b = lau.second;
  const CMatrix& phi = *lau.phi;
  ActionTensors act;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    const CMatrix left = a.left_matrix(phi.col(idx(i)));
    const CMatrix right = a.right_matrix(phi.col(idx(i)));
    for (std::size_t j = 0; j < a.dim(); ++j) {
      for (std::size_t k = 0; k < a.dim(); ++k) {
        if (left(idx(k), idx(j)) != Complex(0.0)) act.b_on_i.push_back({i, j, k, left(idx(k), idx(j))});
        if (right(idx(k), idx(j)) != Complex(0.0)) act.i_on_b.push_back({j, i, k, right(idx(k), idx(j))});
      }
    }
  }
  return semidirect(SemidirectSpec{b, a, act});
}

SemidirectSpec split_algebra(const Algebra& algebra, const CMatrix& b_basis, const CMatrix& i_basis,
                             std::vector<double> b_weights, std::vector<double> i_weights, double tol) {
  const Idx n = idx(algebra.dim());
  const Idx m = b_basis.cols(), p = i_basis.cols();
  if (b_basis.rows() != n || i_basis.rows() != n || m + p != n || m == 0 || p == 0) {
    throw Error(ErrorCode::shape_mismatch, "split bases must be n x m and n x p with m + p = n, m, p >= 1");
  }
  CMatrix q(n, n);
  q << b_basis, i_basis;
  Eigen::FullPivLU<CMatrix> lu(q);
  if (!lu.isInvertible()) throw Error(ErrorCode::invalid_action, "subalgebra and ideal bases do not span the algebra");
  auto coords = [&](const CVector& x) -> CVector { return lu.solve(x); };

  auto b_products = std::vector<std::vector<CVector>>(std::size_t(m), std::vector<CVector>(std::size_t(m)));
  for (Idx i = 0; i < m; ++i) {
    for (Idx j = 0; j < m; ++j) {
      const CVector c = coords(algebra.product(b_basis.col(i), b_basis.col(j)));
      if (c.tail(p).cwiseAbs().maxCoeff() > tol) throw Error(ErrorCode::invalid_action, "B is not closed under the product");
      b_products[std::size_t(i)][std::size_t(j)] = c.head(m);
    }
  }
  auto i_products = std::vector<std::vector<CVector>>(std::size_t(p), std::vector<CVector>(std::size_t(p)));
  for (Idx i = 0; i < p; ++i) {
    for (Idx j = 0; j < p; ++j) {
      const CVector c = coords(algebra.product(i_basis.col(i), i_basis.col(j)));
      if (c.head(m).cwiseAbs().maxCoeff() > tol) throw Error(ErrorCode::invalid_action, "I is not closed under the product");
      i_products[std::size_t(i)][std::size_t(j)] = c.tail(p);
    }
  }
  ActionTensors act;
  for (Idx i = 0; i < m; ++i) {
    for (Idx j = 0; j < p; ++j) {
      const CVector ba = coords(algebra.product(b_basis.col(i), i_basis.col(j)));
      const CVector ab = coords(algebra.product(i_basis.col(j), b_basis.col(i)));
      if (ba.head(m).cwiseAbs().maxCoeff() > tol || ab.head(m).cwiseAbs().maxCoeff() > tol) {
        throw Error(ErrorCode::invalid_action, "I is not an ideal");
      }
      append_block(act.b_on_i, ba.tail(p), std::size_t(i), std::size_t(j), 0);
      for (Idx k = 0; k < p; ++k) {
        if (ab(m + k) != Complex(0.0)) act.i_on_b.push_back({std::size_t(j), std::size_t(i), std::size_t(k), ab(m + k)});
      }
    }
  }
  auto make = [&](const std::string& suffix, std::size_t dim, const std::vector<std::vector<CVector>>& products,
                  std::vector<double> weights) {
    AlgebraSpec s;
    s.name = algebra.name() + suffix;
    s.dim = dim;
    s.structure = structure_from_products(products);
    if (weights.empty()) {
      s.weights.assign(dim, 1.0);
      const double scale = submultiplicative_weight_scale(s);
      for (auto& w : s.weights) w *= scale;
    } else {
      s.weights = std::move(weights);
    }
    return Algebra::create(std::move(s), {tol, algebra.commutative(tol)});
  };
  Algebra b = make("/B", std::size_t(m), b_products, std::move(b_weights));
  Algebra i = make("/I", std::size_t(p), i_products, std::move(i_weights));
  return SemidirectSpec{b, i, act};
}

PhiIsomorphism phi_isomorphism(const Algebra& a, const Algebra& b, const CMatrix& phi, const LauOptions& options) {
  ProductDescriptor lau = lau_product(a, b, phi, options);
  ProductDescriptor dsum = direct_sum(a, b);
  const Idx p = idx(a.dim()), m = idx(b.dim());
  CMatrix fwd = CMatrix::Identity(p + m, p + m);
  CMatrix inv = CMatrix::Identity(p + m, p + m);
  fwd.topRightCorner(p, m) = -phi;
  inv.topRightCorner(p, m) = phi;
  PhiIsomorphism out{LinearMap(dsum.algebra, lau.algebra, fwd), LinearMap(lau.algebra, dsum.algebra, inv), 0.0, 0.0,
                     0.0, dsum, lau};
  out.norm = operator_norm(out.forward);
  out.phi_norm = operator_norm(phi, b.weights(), a.weights());
  double res = 0.0;
  const std::size_t n = dsum.algebra.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const CVector lhs = fwd * dsum.algebra.basis_product(i, j);
      const CVector rhs = lau.algebra.product(fwd.col(idx(i)), fwd.col(idx(j)));
      res = std::max(res, (lhs - rhs).cwiseAbs().maxCoeff());
      const CVector lhs2 = inv * lau.algebra.basis_product(i, j);
      const CVector rhs2 = dsum.algebra.product(inv.col(idx(i)), inv.col(idx(j)));
      res = std::max(res, (lhs2 - rhs2).cwiseAbs().maxCoeff());
    }
  }
  out.multiplicativity_residual = res;
  return out;
}

Algebra finite_abelian_group_algebra(const std::vector<int>& orders) {
  if (orders.empty()) throw Error(ErrorCode::rejected, "group orders must be nonempty");
  std::size_t n = 1;
  std::ostringstream name;
  name << "l1(";
  for (std::size_t r = 0; r < orders.size(); ++r) {
    if (orders[r] < 1) throw Error(ErrorCode::rejected, "group orders must be positive");
    n *= static_cast<std::size_t>(orders[r]);
    name << (r ? "x" : "") << "Z" << orders[r];
  }
  name << ")";
  auto digits = [&](std::size_t g) {
    std::vector<int> d(orders.size());
    for (std::size_t r = orders.size(); r-- > 0;) {
      d[r] = static_cast<int>(g % static_cast<std::size_t>(orders[r]));
      g /= static_cast<std::size_t>(orders[r]);
    }
    return d;
  };
  auto index = [&](const std::vector<int>& d) {
    std::size_t g = 0;
    for (std::size_t r = 0; r < orders.size(); ++r) g = g * static_cast<std::size_t>(orders[r]) + static_cast<std::size_t>(d[r]);
    return g;
  };
  AlgebraSpec s;
  s.name = name.str();
  s.dim = n;
  s.weights.assign(n, 1.0);
  for (std::size_t g = 0; g < n; ++g) {
    const auto dg = digits(g);
    for (std::size_t h = 0; h < n; ++h) {
      const auto dh = digits(h);
      std::vector<int> sum(orders.size());
      for (std::size_t r = 0; r < orders.size(); ++r) sum[r] = (dg[r] + dh[r]) % orders[r];
      s.structure.push_back({g, h, index(sum), Complex(1.0)});
    }
  }
  CVector unit = CVector::Zero(idx(n));
  unit(0) = 1.0;
  s.unit = unit;
  return Algebra::create(std::move(s));
}

std::size_t ideal_module_span_rank(const ProductDescriptor& desc) {
  const auto ops = i_right_actions(desc);
  const Idx p = idx(desc.second.dim()), m = idx(desc.first.dim());
  CMatrix all(p, p * m);
  for (Idx k = 0; k < p; ++k) all.middleCols(k * m, m) = ops[std::size_t(k)];
  return linalg::rank(all);
}

std::size_t ideal_square_span_rank(const ProductDescriptor& desc) {
  const Algebra& i = desc.second;
  const Idx p = idx(i.dim());
  CMatrix all(p, p * p);
  for (Idx k = 0; k < p; ++k) all.middleCols(k * p, p) = i.basis_left_operator(std::size_t(k));
  return linalg::rank(all);
}

}  // namespace banalg
