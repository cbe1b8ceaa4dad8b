#include "banalg/conic.hpp"

#include <algorithm>
#include <cmath>

#include "banalg/linalg.hpp"

namespace banalg::conic {

namespace {

using Idx = Eigen::Index;
using RMatrix = Eigen::MatrixXd;

void check_shapes(const CMatrix& a, const CVector& b, const RVector& w) {
  if (a.rows() != b.size() || a.cols() != w.size()) throw Error(ErrorCode::shape_mismatch, "conic: A, b, w shapes disagree");
  if (w.size() && w.minCoeff() <= 0.0) throw Error(ErrorCode::shape_mismatch, "conic: weights must be positive");
}

// Real form of (u, v) -> (Re(A x), Im(A x)) placed on the (u_i, v_i) slots of
// the cone-stacked variable (t_i, u_i, v_i).
RMatrix lifted_constraints(const CMatrix& a) {
  const Idx k = a.rows(), n = a.cols();
  RMatrix e = RMatrix::Zero(2 * k, 3 * n);
  for (Idx i = 0; i < n; ++i) {
    e.block(0, 3 * i + 1, k, 1) = a.col(i).real();
    e.block(0, 3 * i + 2, k, 1) = -a.col(i).imag();
    e.block(k, 3 * i + 1, k, 1) = a.col(i).imag();
    e.block(k, 3 * i + 2, k, 1) = a.col(i).real();
  }
  return e;
}

double cone_slack(double t, double u, double v) {
  const double r = std::hypot(u, v);
  return (t - r) * (t + r);
}

bool interior(const RVector& z) {
  for (Idx i = 0; i < z.size() / 3; ++i) {
    if (!(z(3 * i) > std::hypot(z(3 * i + 1), z(3 * i + 2)))) return false;
  }
  return true;
}

// Change of tau w^T t - sum log d between two iterates, accumulated termwise
// so that it stays accurate when both merits are large.
double primal_merit_change(const RVector& from, const RVector& to, const RVector& w, double tau) {
  double f = 0.0;
  for (Idx i = 0; i < w.size(); ++i) {
    const double d0 = cone_slack(from(3 * i), from(3 * i + 1), from(3 * i + 2));
    const double d1 = cone_slack(to(3 * i), to(3 * i + 1), to(3 * i + 2));
    f += tau * w(i) * (to(3 * i) - from(3 * i)) - std::log(d1 / d0);
  }
  return f;
}

CVector least_squares_interpolant(const CMatrix& a, const CVector& b) {
  const CMatrix gram = a * a.adjoint();
  return a.adjoint() * gram.ldlt().solve(b);
}

}  // namespace

CVector make_dual_feasible(const CMatrix& a, const CVector& c, const RVector& w) {
  if (c.size() == 0) return c;
  const CVector f = a.transpose() * c;
  double worst = 0.0;
  for (Idx i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(f(i)) / w(i));
  return worst > 1.0 ? CVector(c / worst) : c;
}

PrimalResult minimize_weighted_l1(const CMatrix& a, const CVector& b, const RVector& w, const SolverOptions& options) {
  check_shapes(a, b, w);
  const Idx k = a.rows(), n = a.cols();
  PrimalResult out;
  if (k == 0 || b.cwiseAbs().maxCoeff() == 0.0) {
    out.x = CVector::Zero(n);
    out.certificate = CVector::Zero(k);
    out.converged = true;
    return out;
  }
  const RMatrix e = lifted_constraints(a);
  RVector f(2 * k);
  f << b.real(), b.imag();

  const CVector x0 = least_squares_interpolant(a, b);
  RVector z(3 * n);
  for (Idx i = 0; i < n; ++i) {
    z(3 * i) = std::abs(x0(i)) + 1.0;
    z(3 * i + 1) = x0(i).real();
    z(3 * i + 2) = x0(i).imag();
  }
  const double cones = static_cast<double>(n);
  double tau = 2.0 * cones / std::max(1e-12, w.dot(z(Eigen::seqN(0, n, 3))));

  // Equality constraints are eliminated: z = z0 + N xi with N an orthonormal
  // basis of ker E, so every iterate interpolates exactly.
  const Eigen::HouseholderQR<RMatrix> qr(e.transpose());
  const RMatrix q_full = qr.householderQ() * RMatrix::Identity(3 * n, 3 * n);
  const RMatrix null_basis = q_full.rightCols(3 * n - 2 * k);
  const Eigen::LDLT<RMatrix> eet(e * e.transpose());

  RVector g(3 * n);
  RMatrix hess = RMatrix::Zero(3 * n, 3 * n);
  for (int outer = 0; outer < options.max_outer; ++outer) {
    for (int it = 0; it < options.max_newton; ++it) {
      for (Idx i = 0; i < n; ++i) {
        const double t = z(3 * i), u = z(3 * i + 1), v = z(3 * i + 2);
        const double d = cone_slack(t, u, v);
        g(3 * i) = tau * w(i) - 2.0 * t / d;
        g(3 * i + 1) = 2.0 * u / d;
        g(3 * i + 2) = 2.0 * v / d;
        const Eigen::Vector3d jx(t, -u, -v);
        Eigen::Matrix3d blk = 4.0 * jx * jx.transpose() / (d * d);
        blk(0, 0) -= 2.0 / d;
        blk(1, 1) += 2.0 / d;
        blk(2, 2) += 2.0 / d;
        hess.block<3, 3>(3 * i, 3 * i) = blk;
      }
      const RVector gr = null_basis.transpose() * g;
      const RMatrix hr = null_basis.transpose() * hess * null_basis;
      const RVector dxi = hr.ldlt().solve(-gr);
      const RVector dz = null_basis * dxi;
      ++out.newton_steps;
      const double decrement = -gr.dot(dxi);
      if (!(decrement > 1e-12)) break;

      double alpha = 1.0;
      RVector trial = z + dz;
      int halvings = 0;
      while (halvings < 60 &&
             (!interior(trial) || primal_merit_change(z, trial, w, tau) > 0.25 * alpha * g.dot(dz))) {
        alpha *= 0.5;
        trial = z + alpha * dz;
        ++halvings;
      }
      if (halvings == 60) break;
      z = trial;
    }
    double value = 0.0;
    for (Idx i = 0; i < n; ++i) value += w(i) * std::hypot(z(3 * i + 1), z(3 * i + 2));
    if (2.0 * cones / tau <= options.gap_tol * (1.0 + value)) {
      out.converged = true;
      break;
    }
    tau *= options.growth;
  }
  // Multipliers of the centering problem. At the central point the t-gradient
  // vanishes, tau w_i = 2 t_i / d_i, so the (u, v)-gradient divided by tau is
  // w_i (u_i, v_i) / t_i; this form avoids the cancellation in d_i.
  RVector h = RVector::Zero(3 * n);
  for (Idx i = 0; i < n; ++i) {
    h(3 * i + 1) = w(i) * z(3 * i + 1) / z(3 * i);
    h(3 * i + 2) = w(i) * z(3 * i + 2) / z(3 * i);
  }
  const RVector y = -eet.solve(e * h);

  out.x.resize(n);
  for (Idx i = 0; i < n; ++i) out.x(i) = Complex(z(3 * i + 1), z(3 * i + 2));
  out.value = weighted_l1(out.x, std::vector<double>(w.data(), w.data() + n));
  out.interpolation_residual = (a * out.x - b).cwiseAbs().maxCoeff();

  CVector c(k);
  for (Idx j = 0; j < k; ++j) c(j) = Complex(-y(j), y(k + j));
  out.certificate = make_dual_feasible(a, c, w);
  out.certificate_value = (out.certificate.transpose() * b)(0).real();
  return out;
}

DualResult maximize_dual(const CMatrix& a, const CVector& b, const RVector& w, const SolverOptions& options) {
  check_shapes(a, b, w);
  const Idx k = a.rows(), n = a.cols();
  DualResult out;
  out.c = CVector::Zero(k);
  if (k == 0 || b.cwiseAbs().maxCoeff() == 0.0) {
    out.converged = true;
    return out;
  }
  std::vector<RMatrix> gmat(static_cast<std::size_t>(n), RMatrix(2, 2 * k));
  for (Idx i = 0; i < n; ++i) {
    RMatrix& gi = gmat[static_cast<std::size_t>(i)];
    gi.row(0) << a.col(i).real().transpose(), -a.col(i).imag().transpose();
    gi.row(1) << a.col(i).imag().transpose(), a.col(i).real().transpose();
  }
  RVector q(2 * k);
  q << b.real(), -b.imag();

  auto slack = [&](const RVector& x, Idx i) {
    const Eigen::Vector2d gi = gmat[static_cast<std::size_t>(i)] * x;
    return w(i) * w(i) - gi.squaredNorm();
  };
  auto merit_change = [&](const RVector& from, const RVector& to, double tau, bool& feasible) {
    double f = -tau * q.dot(to - from);
    feasible = true;
    for (Idx i = 0; i < n; ++i) {
      const double d = slack(to, i);
      if (!(d > 0.0)) {
        feasible = false;
        return 0.0;
      }
      f -= std::log(d / slack(from, i));
    }
    return f;
  };

  RVector x = RVector::Zero(2 * k);
  const double constraints = static_cast<double>(n);
  double tau = 1.0 / std::max(1e-12, q.cwiseAbs().maxCoeff());
  for (int outer = 0; outer < options.max_outer; ++outer) {
    for (int it = 0; it < options.max_newton; ++it) {
      RVector grad = -tau * q;
      RMatrix hess = RMatrix::Zero(2 * k, 2 * k);
      for (Idx i = 0; i < n; ++i) {
        const RMatrix& gi = gmat[static_cast<std::size_t>(i)];
        const Eigen::Vector2d gv = gi * x;
        const double d = w(i) * w(i) - gv.squaredNorm();
        const RVector gtg = gi.transpose() * gv;
        grad += 2.0 * gtg / d;
        hess += 2.0 * gi.transpose() * gi / d + 4.0 * gtg * gtg.transpose() / (d * d);
      }
      const RVector dx = hess.ldlt().solve(-grad);
      ++out.newton_steps;
      const double decrement = -grad.dot(dx);
      if (decrement <= 1e-12) break;
      double alpha = 1.0;
      int halvings = 0;
      for (; halvings < 60; ++halvings) {
        bool feasible = false;
        const double change = merit_change(x, x + alpha * dx, tau, feasible);
        if (feasible && change <= 0.25 * alpha * grad.dot(dx)) break;
        alpha *= 0.5;
      }
      if (halvings == 60) break;
      x += alpha * dx;
    }
    const double value = q.dot(x);
    if (constraints / tau <= options.gap_tol * (1.0 + std::abs(value))) {
      out.converged = true;
      break;
    }
    tau *= options.growth;
  }
  for (Idx j = 0; j < k; ++j) out.c(j) = Complex(x(j), x(k + j));
  out.c = make_dual_feasible(a, out.c, w);
  out.value = (out.c.transpose() * b)(0).real();
  const CVector fvals = a.transpose() * out.c;
  for (Idx i = 0; i < n; ++i) out.feasibility = std::max(out.feasibility, std::abs(fvals(i)) / w(i));
  return out;
}

bool unique_minimizer(const CMatrix& a, const CVector& certificate, const RVector& w, double tol) {
  const CVector f = a.transpose() * certificate;
  std::vector<Idx> saturated;
  for (Idx i = 0; i < f.size(); ++i) {
    if (std::abs(f(i)) >= w(i) * (1.0 - tol)) saturated.push_back(i);
  }
  if (saturated.empty()) return true;
  const Idx k = a.rows(), s = Idx(saturated.size());
  RMatrix m(2 * k, s);
  for (Idx c = 0; c < s; ++c) {
    const Idx i = saturated[std::size_t(c)];
    const Complex phase = std::conj(f(i)) / std::abs(f(i));
    const CVector col = a.col(i) * phase;
    m.block(0, c, k, 1) = col.real();
    m.block(k, c, k, 1) = col.imag();
  }
  return linalg::rank(m.cast<Complex>()) == std::size_t(s);
}

}  // namespace banalg::conic
