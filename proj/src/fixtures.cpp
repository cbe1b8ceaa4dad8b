#include "banalg/fixtures.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

namespace banalg::fixtures {

namespace {

using Idx = Eigen::Index;

std::uint64_t family_tag(Family f) { return static_cast<std::uint64_t>(f) + 1; }

std::string fixture_name(Family f, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", index);
  return std::string(to_string(f)) + "-" + buf;
}

// Unipotent upper-triangular matrix with dyadic (exactly invertible) entries,
// followed by a random column permutation.
CMatrix random_basis(std::size_t n, Rng& rng) {
  static const Complex kSkews[] = {{0.5, 0.0}, {-0.5, 0.0}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, 0.5}, {0.0, -0.5}};
  CMatrix u = CMatrix::Identity(Idx(n), Idx(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      if (rng.below(2) == 0) u(Idx(r), Idx(c)) = kSkews[rng.below(std::size(kSkews))];
    }
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  CMatrix p = CMatrix::Zero(Idx(n), Idx(n));
  for (std::size_t c = 0; c < n; ++c) p.col(Idx(c)) = u.col(Idx(perm[c]));
  return p;
}

std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (auto& x : w) x = rng.uniform(1.0, 2.0);
  return w;
}

Algebra with_weights(const Algebra& a, std::vector<double> weights, double scale = 1.0) {
  AlgebraSpec spec = a.spec();
  spec.weights = std::move(weights);
  for (auto& w : spec.weights) w *= scale;
  return Algebra::create(std::move(spec));
}

Algebra zero_algebra(std::size_t p, std::vector<double> weights, const std::string& name) {
  AlgebraSpec spec;
  spec.name = name;
  spec.dim = p;
  spec.weights = std::move(weights);
  return Algebra::create(std::move(spec));
}

ProductDescriptor rescaled_semidirect(const Algebra& b, const Algebra& i, const ActionTensors& act) {
  const double s = semidirect_weight_scale(b.spec(), i.spec(), act);
  return semidirect({with_weights(b, b.weights(), s), with_weights(i, i.weights(), s), act});
}

Fixture diagonal_fixture(std::size_t index, Rng& rng, std::size_t max_dim, Fixture fx) {
  if (index == 0) {
    fx.algebra = diagonal_algebra(CMatrix::Identity(2, 2), {1.0, 1.0}, "C2");
    return fx;
  }
  const std::size_t n = 1 + rng.below(std::min<std::size_t>(max_dim, 6));
  fx.algebra = diagonal_algebra(random_basis(n, rng), random_weights(n, rng), fx.name);
  return fx;
}

Fixture group_fixture(std::size_t index, std::size_t max_dim, Fixture fx) {
  static const std::vector<std::vector<int>> kOrders = {{2}, {3}, {2, 2}, {4}, {2, 3}, {5}, {6}, {2, 2, 2}, {7}, {8}, {3, 3}};
  std::vector<std::vector<int>> allowed;
  for (const auto& o : kOrders) {
    const int size = std::accumulate(o.begin(), o.end(), 1, std::multiplies<>());
    if (std::size_t(size) <= std::max<std::size_t>(max_dim, 8)) allowed.push_back(o);
  }
  fx.orders = allowed[index % allowed.size()];
  fx.algebra = finite_abelian_group_algebra(fx.orders);
  return fx;
}

Fixture lau_fixture(std::size_t index, Rng& rng, std::size_t max_dim, Fixture fx) {
  if (index == 0) {
    const Algebra a = diagonal_algebra(CMatrix::Identity(1, 1), {1.0}, "C");
    const Algebra b = diagonal_algebra(CMatrix::Identity(2, 2), {1.0, 1.0}, "C2");
    CMatrix phi(1, 2);
    phi << 1.0, 0.0;
    fx.desc = lau_product(a, b, phi);
  } else {
    const std::size_t p = 1 + rng.below(std::min<std::size_t>(3, max_dim / 2));
    const std::size_t m = p + rng.below(std::min<std::size_t>(4, max_dim - p) - p + 1);
    const CMatrix pa = random_basis(p, rng), pb = random_basis(m, rng);
    const Algebra a = diagonal_algebra(pa, random_weights(p, rng), fx.name + "/A");
    Algebra b = diagonal_algebra(pb, random_weights(m, rng), fx.name + "/B");
    CMatrix phi = CMatrix::Zero(Idx(p), Idx(m));
    if (index % 5 != 4) {
      std::vector<std::size_t> targets(m);
      std::iota(targets.begin(), targets.end(), 0);
      for (std::size_t i = m; i > 1; --i) std::swap(targets[i - 1], targets[rng.below(i)]);
      CMatrix standard = CMatrix::Zero(Idx(p), Idx(m));
      for (std::size_t k = 0; k < p; ++k) standard(Idx(k), Idx(targets[k])) = 1.0;
      phi = pa.fullPivLu().solve(standard * pb);
      const double norm = operator_norm(phi, b.weights(), a.weights());
      if (norm > 1.0) b = with_weights(b, b.weights(), norm);
    }
    fx.desc = lau_product(a, b, phi);
  }
  fx.algebra = fx.desc->algebra;
  fx.phi_surjective = fx.desc->phi && fx.desc->phi->fullPivLu().rank() == Idx(fx.desc->first.dim());
  return fx;
}

Fixture semidirect_fixture(std::size_t index, Rng& rng, std::size_t max_dim, Fixture fx) {
  if (index == 0) {
    const Algebra c2 = diagonal_algebra(CMatrix::Identity(2, 2), {1.0, 1.0}, "C2");
    CMatrix bb(2, 1), ib(2, 1);
    bb << 1.0, 1.0;
    ib << 1.0, 0.0;
    const SemidirectSpec s = split_algebra(c2, bb, ib, {1.0}, {1.0});
    fx.desc = semidirect(s);
  } else {
    const std::size_t m = 1 + rng.below(3);
    const std::size_t p = 1 + rng.below(std::min<std::size_t>(3, max_dim - m));
    const std::size_t n = m + p;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    // order[0..m) index B, order[m..n) index the ideal I.
    CMatrix f = CMatrix::Zero(Idx(n), Idx(m));
    for (std::size_t j = 0; j < m; ++j) f(Idx(order[j]), Idx(j)) = 1.0;
    const bool partial = index % 4 == 3;
    CMatrix e = CMatrix::Zero(Idx(n), Idx(p));
    for (std::size_t k = 0; k < p; ++k) {
      e(Idx(order[m + k]), Idx(k)) = 1.0;
      if (partial && k == 0) continue;  // this idempotent of I is annihilated by B
      f(Idx(order[m + k]), Idx(rng.below(m))) = 1.0;
    }
    const CMatrix b_basis = f * random_basis(m, rng);
    const CMatrix i_basis = e * random_basis(p, rng);
    const Algebra cn = diagonal_algebra(CMatrix::Identity(Idx(n), Idx(n)), std::vector<double>(n, 1.0), "C" + std::to_string(n));
    const SemidirectSpec s = split_algebra(cn, b_basis, i_basis, {}, {});
    AlgebraSpec bs = s.b.spec(), is = s.i.spec();
    bs.name = fx.name + "/B";
    is.name = fx.name + "/I";
    bs.weights = random_weights(m, rng);
    is.weights = random_weights(p, rng);
    const double sb = submultiplicative_weight_scale(bs), si = submultiplicative_weight_scale(is);
    for (auto& w : bs.weights) w *= sb;
    for (auto& w : is.weights) w *= si;
    fx.desc = rescaled_semidirect(Algebra::create(bs), Algebra::create(is), s.actions);
  }
  fx.algebra = fx.desc->algebra;
  fx.span_condition = ideal_module_span_rank(*fx.desc) == fx.desc->second.dim();
  return fx;
}

Fixture radical_fixture(std::size_t index, Rng& rng, std::size_t max_dim, Fixture fx) {
  Algebra b = diagonal_algebra(CMatrix::Identity(1, 1), {1.0}, "C");
  std::size_t p = 1;
  CVector psi = CVector::Ones(1);
  std::vector<double> iw{1.0};
  if (index != 0) {
    const std::size_t m = 1 + rng.below(3);
    p = 1 + rng.below(std::min<std::size_t>(3, max_dim - m));
    const CMatrix pb = random_basis(m, rng);
    b = diagonal_algebra(pb, random_weights(m, rng), fx.name + "/B");
    psi = pb.row(Idx(rng.below(m))).transpose();  // an idempotent-coordinate character
    iw = random_weights(p, rng);
  }
  const Algebra i = zero_algebra(p, iw, fx.name + "/I");
  ActionTensors act;
  for (std::size_t bi = 0; bi < b.dim(); ++bi) {
    if (psi(Idx(bi)) == Complex(0.0)) continue;
    for (std::size_t j = 0; j < p; ++j) {
      act.b_on_i.push_back({bi, j, j, psi(Idx(bi))});
      act.i_on_b.push_back({j, bi, j, psi(Idx(bi))});
    }
  }
  fx.desc = rescaled_semidirect(b, i, act);
  fx.algebra = fx.desc->algebra;
  fx.semisimple = false;
  fx.span_condition = ideal_module_span_rank(*fx.desc) == p;
  return fx;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b, std::uint64_t stream_c) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_a), static_cast<std::uint32_t>(stream_b),
                    static_cast<std::uint32_t>(stream_c)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
std::size_t Rng::below(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(engine_() % n); }
Complex Rng::complex_unit_box() {
  const double re = uniform(-1.0, 1.0);
  return {re, uniform(-1.0, 1.0)};
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::diagonal: return "diagonal";
    case Family::group: return "group";
    case Family::lau: return "lau";
    case Family::semidirect: return "semidirect";
    case Family::radical: return "radical";
  }
  return "?";
}

std::optional<Family> family_from_string(std::string_view name) {
  for (Family f : kAllFamilies) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

Algebra diagonal_algebra(const CMatrix& basis, std::vector<double> weights, const std::string& name) {
  const std::size_t n = std::size_t(basis.cols());
  const CMatrix inv = basis.fullPivLu().inverse();
  std::vector<std::vector<CVector>> products(n, std::vector<CVector>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      products[i][j] = inv * basis.col(Idx(i)).cwiseProduct(basis.col(Idx(j)));
    }
  }
  AlgebraSpec spec;
  spec.name = name;
  spec.dim = n;
  spec.structure = structure_from_products(products, 1e-14);
  spec.weights = std::move(weights);
  const double s = submultiplicative_weight_scale(spec);
  for (auto& w : spec.weights) w *= s;
  CVector unit = inv * CVector::Ones(Idx(n));
  for (Idx k = 0; k < unit.size(); ++k) {
    if (std::abs(unit(k)) < 1e-14) unit(k) = 0.0;
  }
  spec.unit = unit;
  return Algebra::create(std::move(spec));
}

double semidirect_weight_scale(const AlgebraSpec& b, const AlgebraSpec& i, const ActionTensors& actions) {
  const std::size_t m = b.dim, p = i.dim;
  double s = std::max(submultiplicative_weight_scale(b), submultiplicative_weight_scale(i));
  auto scan = [&](const std::vector<StructureEntry>& entries, std::size_t rows, std::size_t cols,
                  const std::vector<double>& wl, const std::vector<double>& wr, const std::vector<double>& wt) {
    std::vector<double> acc(rows * cols, 0.0);
    for (const auto& e : entries) acc[e.i * cols + e.j] += std::abs(e.value) * wt[e.k];
    for (std::size_t x = 0; x < rows; ++x) {
      for (std::size_t y = 0; y < cols; ++y) s = std::max(s, acc[x * cols + y] / (wl[x] * wr[y]));
    }
  };
  scan(actions.b_on_i, m, p, b.weights, i.weights, i.weights);
  scan(actions.i_on_b, p, m, i.weights, b.weights, i.weights);
  return std::max(1.0, s);
}

Fixture make_fixture(Family family, std::size_t index, std::uint64_t seed, std::size_t max_dim) {
  max_dim = std::clamp<std::size_t>(max_dim, 2, 16);
  Rng rng(seed, family_tag(family), index);
  Fixture fx{fixture_name(family, index), family, Algebra::unchecked({"placeholder", 1, {1.0}, {}, std::nullopt}),
             std::nullopt, {}, true, false, false};
  switch (family) {
    case Family::diagonal: return diagonal_fixture(index, rng, max_dim, std::move(fx));
    case Family::group: return group_fixture(index, max_dim, std::move(fx));
    case Family::lau: return lau_fixture(index, rng, max_dim, std::move(fx));
    case Family::semidirect: return semidirect_fixture(index, rng, max_dim, std::move(fx));
    case Family::radical: return radical_fixture(index, rng, max_dim, std::move(fx));
  }
  return fx;
}

std::vector<Fixture> fixture_generators(Family family, std::uint64_t seed, std::size_t count, std::size_t max_dim) {
  std::vector<Fixture> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(make_fixture(family, i, seed, max_dim));
  return out;
}

}  // namespace banalg::fixtures
