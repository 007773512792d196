#pragma once

// Summation-by-parts grid operators on [a, b] and the PDE models built from
// them: transport (first derivative), the second derivative with its
// endpoint/derivative boundary maps, and the 1D wave system. The SBP
// identities make every discrete Green identity exact up to round-off, so
// the model quadruples satisfy their invariants at the 1e-11 level rather
// than up to truncation error.
//
// Order-2 blocks only:
//   H  = h diag(1/2, 1, ..., 1, 1/2)
//   d1 = one-sided differences at the ends, central inside, with
//        H d1 + d1^T H = e_N e_N^T - e_0 e_0^T          (SBP-1)
//   d2 = H^{-1} (-m_pos + e_N d_b^T - e_0 d_a^T), m_pos SPD stiffness,
//        d_a, d_b second-order one-sided first-derivative stencils (SBP-2)

#include <cmath>
#include <string>
#include <utility>

#include "dissipgen/algebra.hpp"
#include "dissipgen/pencil.hpp"
#include "dissipgen/quadruple.hpp"
#include "dissipgen/selfadjoint.hpp"

namespace dissipgen {

struct SbpOperator {
  Index n = 0;
  double a = 0.0;
  double b = 1.0;
  double h = 0.0;
  RealVector h_diag;  // diagonal of the norm matrix H
  RealMatrix d1;
  RealMatrix d2;
  RealMatrix m_pos;   // SPD part of the SBP-2 splitting
  RealVector d_a;     // boundary derivative row at a
  RealVector d_b;     // boundary derivative row at b

  RealVector grid() const {
    RealVector x(n);
    for (Index j = 0; j < n; ++j) x(j) = a + h * double(j);
    return x;
  }
};

inline SbpOperator make_sbp(Index n, int order = 2, double a = 0.0, double b = 1.0) {
  if (order != 2) throw Error("make_sbp: only order-2 closures are implemented");
  if (n < 4) throw GridTooSmall("make_sbp: need n >= 4");
  if (!(b > a)) throw Error("make_sbp: need b > a");
  SbpOperator op;
  op.n = n;
  op.a = a;
  op.b = b;
  op.h = (b - a) / double(n - 1);
  const double h = op.h;

  op.h_diag = RealVector::Constant(n, h);
  op.h_diag(0) = 0.5 * h;
  op.h_diag(n - 1) = 0.5 * h;

  op.d1 = RealMatrix::Zero(n, n);
  op.d1(0, 0) = -1.0 / h;
  op.d1(0, 1) = 1.0 / h;
  for (Index j = 1; j + 1 < n; ++j) {
    op.d1(j, j - 1) = -0.5 / h;
    op.d1(j, j + 1) = 0.5 / h;
  }
  op.d1(n - 1, n - 2) = -1.0 / h;
  op.d1(n - 1, n - 1) = 1.0 / h;

  op.m_pos = RealMatrix::Zero(n, n);
  op.m_pos(0, 0) = 1.0 / h;
  op.m_pos(0, 1) = -1.0 / h;
  for (Index j = 1; j + 1 < n; ++j) {
    op.m_pos(j, j - 1) = -1.0 / h;
    op.m_pos(j, j) = 2.0 / h;
    op.m_pos(j, j + 1) = -1.0 / h;
  }
  op.m_pos(n - 1, n - 2) = -1.0 / h;
  op.m_pos(n - 1, n - 1) = 1.0 / h;

  op.d_a = RealVector::Zero(n);
  op.d_a(0) = -1.5 / h;
  op.d_a(1) = 2.0 / h;
  op.d_a(2) = -0.5 / h;
  op.d_b = RealVector::Zero(n);
  op.d_b(n - 1) = 1.5 / h;
  op.d_b(n - 2) = -2.0 / h;
  op.d_b(n - 3) = 0.5 / h;

  // d2 defined through the SBP-2 identity, so H d2 = -m_pos + e_N d_b - e_0 d_a
  // holds by construction. Interior rows reduce to the central second
  // difference.
  RealMatrix hd2 = -op.m_pos;
  hd2.row(0) -= op.d_a.transpose();
  hd2.row(n - 1) += op.d_b.transpose();
  op.d2 = op.h_diag.cwiseInverse().asDiagonal() * hd2;
  return op;
}

enum class ModelKind { transport, second_derivative, wave };

inline const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::transport: return "transport";
    case ModelKind::second_derivative: return "second-derivative";
    case ModelKind::wave: return "wave";
  }
  return "?";
}

struct SbpModel {
  PencilPtr pencil;
  BoundaryQuadruple quadruple;  // model-explicit maps
  ModelKind kind = ModelKind::transport;
  double a = 0.0;
  double b = 1.0;
  Index n = 0;
  Index m = 1;  // value dimension of the grid functions
};

namespace detail {

// X (x) I_m with block-per-gridpoint ordering: entry (j*m + c) holds
// component c at grid point j.
inline Matrix kron_identity(const RealMatrix& X, Index m) {
  if (m == 1) return complexify(X);
  Matrix K = Matrix::Zero(X.rows() * m, X.cols() * m);
  for (Index r = 0; r < X.rows(); ++r) {
    for (Index c = 0; c < X.cols(); ++c) {
      if (X(r, c) == 0.0) continue;
      for (Index k = 0; k < m; ++k) K(r * m + k, c * m + k) = X(r, c);
    }
  }
  return K;
}

// Selector of the m components at grid point j, as an m x (n m) map.
inline Matrix point_selector(Index n, Index m, Index j) {
  Matrix S = Matrix::Zero(m, n * m);
  for (Index k = 0; k < m; ++k) S(k, j * m + k) = 1.0;
  return S;
}

// Interior basis: grid functions vanishing on the first and last `skip`
// grid points, all m components.
inline Matrix interior_core(Index n, Index m, Index skip) {
  const Index inner = std::max<Index>(0, n - 2 * skip);
  Matrix core = Matrix::Zero(n * m, inner * m);
  for (Index j = 0; j < inner; ++j) {
    for (Index k = 0; k < m; ++k) core((j + skip) * m + k, j * m + k) = 1.0;
  }
  return core;
}

}  // namespace detail

// Transport on [a,b] with values in C^m: A = d1 (x) I_m, weight H (x) I_m,
// Gm u = u(a), Gp u = u(b). Green identity is SBP-1, exact.
inline SbpModel transport_model(Index n, Index m = 1, double a = 0.0, double b = 1.0) {
  if (m < 1) throw Error("transport_model: need m >= 1");
  const SbpOperator op = make_sbp(n, 2, a, b);
  Matrix A = detail::kron_identity(op.d1, m);
  Matrix W = detail::kron_identity(RealMatrix(op.h_diag.asDiagonal()), m);
  Matrix core = detail::interior_core(n, m, 1);
  PencilPtr pencil = make_pencil(make_inner_space(std::move(W)), std::move(A), std::move(core));
  BoundaryQuadruple quad{pencil, detail::point_selector(n, m, 0),
                         detail::point_selector(n, m, n - 1), QuadrupleMeta::model_explicit};
  return SbpModel{std::move(pencil), std::move(quad), ModelKind::transport, a, b, n, m};
}

// Second derivative on [a,b]: symmetric pencil s_max = d2, skew pencil i d2.
// The boundary maps combine endpoint values with the boundary derivative
// rows at weight sqrt(2)/2,
//   gm = r [ e_0^T + i d_a ;  e_N^T - i d_b ]
//   gp = r [ e_0^T - i d_a ;  e_N^T + i d_b ]
// which is the orientation that satisfies the Green identity against
// T = i (H d2 - d2^T H); it is exact by SBP-2.
inline SbpModel second_derivative_model(Index n, double a = 0.0, double b = 1.0) {
  if (n < 6) throw GridTooSmall("second_derivative_model: need n >= 6");
  const SbpOperator op = make_sbp(n, 2, a, b);
  const Matrix W = complexify(RealMatrix(op.h_diag.asDiagonal()));
  // core functions vanish on every boundary-closure row (three points each
  // side), so the symmetry invariant holds exactly.
  const Matrix core = detail::interior_core(n, 1, 3);
  SymmetricPencil sym =
      make_symmetric_pencil(make_inner_space(W), complexify(op.d2), core);
  PencilPtr pencil = to_skew(sym);

  const Complex i(0.0, 1.0);
  const double r = std::sqrt(2.0) / 2.0;
  const Vector ea = Vector::Unit(n, 0);
  const Vector eb = Vector::Unit(n, n - 1);
  const Vector da = complexify(RealMatrix(op.d_a)).col(0);
  const Vector db = complexify(RealMatrix(op.d_b)).col(0);
  Matrix gm(2, n), gp(2, n);
  gm.row(0) = r * (ea + i * da).transpose();
  gm.row(1) = r * (eb - i * db).transpose();
  gp.row(0) = r * (ea - i * da).transpose();
  gp.row(1) = r * (eb + i * db).transpose();
  BoundaryQuadruple quad{pencil, std::move(gm), std::move(gp), QuadrupleMeta::model_explicit};
  return SbpModel{std::move(pencil), std::move(quad), ModelKind::second_derivative, a, b, n, 1};
}

// First-order wave system on [a,b]: state (u1, u2), A = [[0, d1], [d1, 0]],
// weight diag(H, H). The boundary space is C^2 indexed by {a, b} with
//   Gp u = 1/2 u1|_{a,b} + (-u2(a), +u2(b))
//   Gm u = 1/2 u1|_{a,b} - (-u2(a), +u2(b))
// (outer normal times u2, Riesz map the identity in d = 1). Green identity
// is SBP-1 applied to both blocks, exact.
inline SbpModel wave_model(Index n, double a = 0.0, double b = 1.0) {
  const SbpOperator op = make_sbp(n, 2, a, b);
  const Index N = 2 * n;
  Matrix A = Matrix::Zero(N, N);
  A.topRightCorner(n, n) = complexify(op.d1);
  A.bottomLeftCorner(n, n) = complexify(op.d1);
  Matrix W = Matrix::Zero(N, N);
  W.topLeftCorner(n, n) = complexify(RealMatrix(op.h_diag.asDiagonal()));
  W.bottomRightCorner(n, n) = complexify(RealMatrix(op.h_diag.asDiagonal()));

  const Matrix c1 = detail::interior_core(n, 1, 1);
  Matrix core = Matrix::Zero(N, 2 * c1.cols());
  core.topLeftCorner(n, c1.cols()) = c1;
  core.bottomRightCorner(n, c1.cols()) = c1;

  PencilPtr pencil = make_pencil(make_inner_space(std::move(W)), std::move(A), std::move(core));

  Matrix gm = Matrix::Zero(2, N), gp = Matrix::Zero(2, N);
  // row 0: endpoint a, row 1: endpoint b
  gm(0, 0) = 0.5;
  gm(0, n) = 1.0;
  gm(1, n - 1) = 0.5;
  gm(1, N - 1) = -1.0;
  gp(0, 0) = 0.5;
  gp(0, n) = -1.0;
  gp(1, n - 1) = 0.5;
  gp(1, N - 1) = 1.0;
  BoundaryQuadruple quad{pencil, std::move(gm), std::move(gp), QuadrupleMeta::model_explicit};
  return SbpModel{std::move(pencil), std::move(quad), ModelKind::wave, a, b, n, 1};
}

}  // namespace dissipgen
