#pragma once

// Weighted l1 minimum-norm interpolation over complex coordinates and its
// dual, each solved by its own log-barrier Newton method.
//
//   primal:  minimize  sum_i w_i |x_i|          subject to  A x = b
//   dual:    maximize  Re(c^T b)                subject to  |(A^T c)_i| <= w_i
//
// Each complex coordinate x_i is lifted to a second-order cone
// {(t_i, Re x_i, Im x_i) : t_i >= |x_i|}.

#include <cstddef>

#include "banalg/algebra.hpp"

namespace banalg::conic {

struct SolverOptions {
  double gap_tol = 1e-10;   // relative duality-gap target
  double growth = 20.0;     // barrier parameter growth per outer step
  int max_newton = 200;     // per centering step
  int max_outer = 60;
};

struct PrimalResult {
  CVector x;
  double value = 0.0;        // sum_i w_i |x_i|
  CVector certificate;       // dual-feasible c derived from the barrier multipliers
  double certificate_value = 0.0;  // Re(c^T b), a lower bound on the optimum
  double interpolation_residual = 0.0;
  int newton_steps = 0;
  bool converged = false;
};

struct DualResult {
  CVector c;
  double value = 0.0;        // Re(c^T b)
  double feasibility = 0.0;  // max_i |(A^T c)_i| / w_i, at most 1
  int newton_steps = 0;
  bool converged = false;
};

/// A must have full row rank (checked by the callers).
PrimalResult minimize_weighted_l1(const CMatrix& a, const CVector& b, const RVector& w, const SolverOptions& options = {});
DualResult maximize_dual(const CMatrix& a, const CVector& b, const RVector& w, const SolverOptions& options = {});

/// Scales c down (never up) so that max_i |(A^T c)_i| / w_i <= 1.
CVector make_dual_feasible(const CMatrix& a, const CVector& c, const RVector& w);

/// True when the minimizer is unique: the coordinates saturated by the dual
/// certificate carry phases fixed by it, and the remaining nonnegative
/// magnitudes are pinned down by A x = b exactly when the real map
/// rho -> A (rho o u) restricted to the saturated set is injective.
bool unique_minimizer(const CMatrix& a, const CVector& certificate, const RVector& w, double tol = 1e-6);

}  // namespace banalg::conic
