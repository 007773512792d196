#pragma once

// Boundary quadruples (H-, H+, Gm, Gp) for a skew pencil. The two universal
// constructions are implemented: the form-spectral one (eigen-split of the
// boundary form against the graph Gram) and the deficiency one (built from
// ker(I - A) and ker(I + A)). Quadruple isomorphisms and the boundary-triple
// conversion live here too.
//
// Both boundary spaces carry the standard inner product of C^p and C^q; all
// weighting is absorbed into the rows of gm and gp. The invariants are
//   gp^H gp - gm^H gm = T          (Green identity)
//   rank [gm; gp] = p + q          (joint surjectivity)
//   rank gm = p, rank gp = q       (individual surjectivity)

#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dissipgen/algebra.hpp"
#include "dissipgen/pencil.hpp"
#include "dissipgen/report.hpp"

namespace dissipgen {

enum class QuadrupleMeta { form_spectral, deficiency, model_explicit };

inline const char* to_string(QuadrupleMeta m) {
  switch (m) {
    case QuadrupleMeta::form_spectral: return "form-spectral";
    case QuadrupleMeta::deficiency: return "deficiency";
    case QuadrupleMeta::model_explicit: return "model-explicit";
  }
  return "?";
}

struct BoundaryQuadruple {
  PencilPtr pencil;
  Matrix gm;  // p x n, coordinates of Gm in C^p
  Matrix gp;  // q x n, coordinates of Gp in C^q
  QuadrupleMeta meta = QuadrupleMeta::model_explicit;

  Index p() const { return gm.rows(); }
  Index q() const { return gp.rows(); }
  Index dim() const { return pencil ? pencil->dim() : 0; }
};

namespace detail {

// Rotate each row so its entry of largest modulus is real positive. Pure
// phase, so all quadruple invariants are untouched; output becomes
// deterministic where the eigensolver leaves a phase free.
inline void canonicalize_rows(Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    Index jmax = 0;
    double best = -1.0;
    for (Index j = 0; j < m.cols(); ++j) {
      const double a = std::abs(m(i, j));
      if (a > best) {
        best = a;
        jmax = j;
      }
    }
    if (best > 0.0) {
      const Complex ph = m(i, jmax) / std::abs(m(i, jmax));
      m.row(i) *= std::conj(ph);
    }
  }
}

inline Matrix stack_maps(const BoundaryQuadruple& q) {
  Matrix F(q.p() + q.q(), q.dim());
  F.topRows(q.p()) = q.gm;
  F.bottomRows(q.q()) = q.gp;
  return F;
}

inline Matrix signature_matrix(Index p, Index q) {
  Matrix C = Matrix::Zero(p + q, p + q);
  C.topLeftCorner(p, p) = -Matrix::Identity(p, p);
  C.bottomRightCorner(q, q) = Matrix::Identity(q, q);
  return C;
}

}  // namespace detail

inline std::vector<CheckItem> verify_quadruple(const BoundaryQuadruple& q, double tol = kDefaultTol) {
  std::vector<CheckItem> out;
  const Matrix T = boundary_form(*q.pencil);
  const Matrix R = q.gp.adjoint() * q.gp - q.gm.adjoint() * q.gm - T;
  const double denom =
      std::max({T.norm(), q.gm.squaredNorm(), q.gp.squaredNorm(), 1e-300});
  const double green = R.norm() / denom;
  out.push_back({"green_identity", green, tol, green <= tol});

  const Matrix F = detail::stack_maps(q);
  const Index m = q.p() + q.q();
  const bool joint = m == 0 || rank(F, tol) == m;
  out.push_back({"joint_surjectivity", joint ? 0.0 : 1.0, 0.0, joint});

  const bool gm_full = q.p() == 0 || rank(q.gm, tol) == q.p();
  out.push_back({"gm_surjective", gm_full ? 0.0 : 1.0, 0.0, gm_full});
  const bool gp_full = q.q() == 0 || rank(q.gp, tol) == q.q();
  out.push_back({"gp_surjective", gp_full ? 0.0 : 1.0, 0.0, gp_full});
  return out;
}

// Form-spectral construction: solve T x = lambda G x with G the graph Gram,
// then split the spectrum. Rows of gp are sqrt(lambda) x^H G over lambda > 0,
// rows of gm are sqrt(-lambda) x^H G over lambda < 0; eigenvectors with
// |lambda| below tol * max|lambda| span ker T and are dropped. A Newton sweep
// on the congruence identity gp^H gp - gm^H gm = T tightens the constructed
// maps to round-off even when the graph Gram is badly conditioned.
inline BoundaryQuadruple quadruple_from_form(PencilPtr pencil, double tol = kDefaultTol) {
  const Matrix T = boundary_form(*pencil);
  const Matrix G = graph_gram(*pencil);
  const Spectrum sp = hermitian_geig(T, G);
  const Index n = pencil->dim();
  const RealVector lam = sp.eigenvalues.real();
  const double lmax = lam.size() ? lam.cwiseAbs().maxCoeff() : 0.0;
  const double thresh = tol * lmax;

  std::vector<Index> neg, pos;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -thresh) neg.push_back(i);
    if (lam(i) > thresh) pos.push_back(i);
  }
  Matrix gm(Index(neg.size()), n), gp(Index(pos.size()), n);
  for (Index r = 0; r < Index(neg.size()); ++r) {
    gm.row(r) = std::sqrt(-lam(neg[r])) * (G * sp.eigenvectors.col(neg[r])).adjoint();
  }
  for (Index r = 0; r < Index(pos.size()); ++r) {
    gp.row(r) = std::sqrt(lam(pos[r])) * (G * sp.eigenvectors.col(pos[r])).adjoint();
  }

  const Index p = gm.rows(), q = gp.rows(), m = p + q;
  if (m > 0) {
    Matrix F(m, n);
    F.topRows(p) = gm;
    F.bottomRows(q) = gp;
    const Matrix C = detail::signature_matrix(p, q);
    const double tnorm = std::max(T.norm(), 1e-300);
    for (int it = 0; it < 3; ++it) {
      const Matrix R = T - F.adjoint() * C * F;
      if (R.norm() <= 1e-14 * tnorm) break;
      Eigen::LLT<Matrix> llt(Matrix(F * F.adjoint()));
      if (llt.info() != Eigen::Success) break;
      F += 0.5 * (C * (llt.solve(F) * R));
    }
    gm = F.topRows(p);
    gp = F.bottomRows(q);
  }
  detail::canonicalize_rows(gm);
  detail::canonicalize_rows(gp);
  return BoundaryQuadruple{std::move(pencil), std::move(gm), std::move(gp),
                           QuadrupleMeta::form_spectral};
}

// Deficiency construction from D(A) = ker T + ker(I - A) + ker(I + A).
// With B+ and B- weight-orthonormal bases of the deficiency spaces and
// P+/P- the oblique projections of the direct sum, the maps are
// gp = sqrt(2) B+^H M P+ and gm = sqrt(2) B-^H M P-; the sqrt(2) turns the
// factor-2 identity b(u,v) = 2<u+,v+> - 2<u-,v-> into the normalized Green
// identity while the boundary spaces keep the standard inner product.
inline BoundaryQuadruple quadruple_from_deficiency(PencilPtr pencil, double tol = kDefaultTol) {
  const SkewPencil& P = *pencil;
  const Index n = P.dim();
  const Matrix& M = P.space.weight;
  const Matrix I = Matrix::Identity(n, n);
  const Matrix T = boundary_form(P);

  const Matrix K0 = null_space(T, tol);
  const Matrix Kp = null_space(I - P.a_max, tol);
  const Matrix Km = null_space(I + P.a_max, tol);
  const Index k0 = K0.cols(), kp = Kp.cols(), km = Km.cols();
  if (k0 + kp + km != n) {
    throw DecompositionFails("deficiency decomposition: dim ker T + dim K+ + dim K- = " +
                             std::to_string(k0 + kp + km) + " != " + std::to_string(n));
  }
  const Matrix Bp = orthonormalize(Kp, M, tol);
  const Matrix Bm = orthonormalize(Km, M, tol);
  if (Bp.cols() != kp || Bm.cols() != km) {
    throw DecompositionFails("deficiency decomposition: degenerate deficiency basis");
  }
  Matrix W(n, n);
  W.leftCols(k0) = K0;
  W.middleCols(k0, kp) = Bp;
  W.rightCols(km) = Bm;
  const RealVector sv = singular_values(W);
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e8) {
    throw DecompositionFails("deficiency decomposition: sum is not numerically direct");
  }
  // Rows of W^{-1} are exactly B+^H M P+ and B-^H M P- in the orthonormal bases.
  const Matrix Winv = solve(W, I);
  Matrix gp = std::sqrt(2.0) * Winv.middleRows(k0, kp);
  Matrix gm = std::sqrt(2.0) * Winv.bottomRows(km);
  detail::canonicalize_rows(gm);
  detail::canonicalize_rows(gp);
  BoundaryQuadruple quad{std::move(pencil), std::move(gm), std::move(gp),
                         QuadrupleMeta::deficiency};
  const auto checks = verify_quadruple(quad, 1e-8);
  if (!all_pass(checks)) {
    std::string bad;
    for (const auto& c : checks) {
      if (!c.pass) bad += " " + c.name;
    }
    throw DecompositionFails("deficiency quadruple failed post-hoc checks:" + bad);
  }
  return quad;
}

// Orthonormal basis of ker gm cap ker gp; equals ker T for a valid quadruple
// and contains the core span (the discrete closure of A0).
inline Matrix closure_space(const BoundaryQuadruple& q, double tol = kDefaultTol) {
  if (q.p() + q.q() == 0) return Matrix::Identity(q.dim(), q.dim());
  return null_space(detail::stack_maps(q), tol);
}

// Minimum-norm w with gm w = xm and gp w = xp (the interpolation property:
// joint surjectivity made effective).
inline Vector interpolate(const BoundaryQuadruple& q, const Vector& xm, const Vector& xp,
                          double tol = kDefaultTol) {
  if (xm.size() != q.p() || xp.size() != q.q()) {
    throw DimensionMismatch("interpolate: boundary data sizes");
  }
  const Index m = q.p() + q.q();
  if (m == 0) return Vector::Zero(q.dim());
  const Matrix F = detail::stack_maps(q);
  Vector rhs(m);
  rhs.head(q.p()) = xm;
  rhs.tail(q.q()) = xp;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(F);
  cod.setThreshold(tol);
  if (cod.rank() < m) throw SurjectivityViolated("interpolate: stacked map is not surjective");
  return cod.solve(rhs);
}

struct QuadrupleIso {
  Matrix psi;       // (p+q) x (p+q), maps (gm, gp)-data to the second quadruple's data
  double residual;  // defect of psi^H C2 psi = C1
};

// Isomorphism between two quadruples over the same pencil: restrict both
// stacked maps to a complement of the closure space, form psi = G2 G1^{-1}
// and certify the congruence psi^H C2 psi = C1. Failure of the certificate
// is a signature obstruction.
inline QuadrupleIso quadruple_iso(const BoundaryQuadruple& q1, const BoundaryQuadruple& q2,
                                  double tol = 1e-8) {
  if (q1.pencil != q2.pencil) throw Error("quadruple_iso: quadruples must share a pencil");
  const Index m1 = q1.p() + q1.q(), m2 = q2.p() + q2.q();
  if (m1 != m2) throw DimensionMismatch("quadruple_iso: p1+q1 != p2+q2");
  if (m1 == 0) return QuadrupleIso{Matrix(0, 0), 0.0};

  const Matrix N = closure_space(q1);
  const Matrix W = (N.cols() == 0) ? Matrix(Matrix::Identity(q1.dim(), q1.dim()))
                                   : null_space(N.adjoint(), kDefaultTol);
  if (W.cols() != m1) {
    throw Error("quadruple_iso: closure complement has unexpected dimension");
  }
  const Matrix G1 = detail::stack_maps(q1) * W;
  const Matrix G2 = detail::stack_maps(q2) * W;
  const Matrix psi = solve(G1.adjoint(), G2.adjoint()).adjoint();  // psi G1 = G2
  const Matrix C1 = detail::signature_matrix(q1.p(), q1.q());
  const Matrix C2 = detail::signature_matrix(q2.p(), q2.q());
  const double resid = (psi.adjoint() * C2 * psi - C1).norm() / std::max(1.0, C1.norm());
  if (resid > tol) {
    throw SignatureMismatch("quadruple_iso: congruence certificate failed, residual " +
                            std::to_string(resid));
  }
  return QuadrupleIso{psi, resid};
}

struct BoundaryTriple {
  Matrix g1;
  Matrix g2;
};

// Quadruple -> triple requires p = q. The maps satisfy
// <G1 u, G2 v> + <G2 u, G1 v> = <Gp u, Gp v> - <Gm u, Gm v>.
inline BoundaryTriple to_triple(const BoundaryQuadruple& q) {
  if (q.p() != q.q()) {
    throw NoTriple("to_triple: p = " + std::to_string(q.p()) + " != q = " + std::to_string(q.q()));
  }
  const double r = std::sqrt(2.0) / 2.0;
  return BoundaryTriple{r * (q.gp - q.gm), r * (q.gp + q.gm)};
}

inline BoundaryQuadruple from_triple(PencilPtr pencil, const Matrix& g1, const Matrix& g2,
                                     double tol = 1e-8) {
  if (g1.rows() != g2.rows() || g1.cols() != g2.cols() || g1.cols() != pencil->dim()) {
    throw DimensionMismatch("from_triple: G1 and G2 must be k x n over the pencil");
  }
  const double r = std::sqrt(2.0) / 2.0;
  BoundaryQuadruple quad{std::move(pencil), r * (g2 - g1), r * (g2 + g1),
                         QuadrupleMeta::model_explicit};
  const auto checks = verify_quadruple(quad, tol);
  if (!all_pass(checks)) {
    std::string bad;
    for (const auto& c : checks) {
      if (!c.pass) bad += " " + c.name;
    }
    throw InvalidQuadruple("from_triple: derived maps fail quadruple invariants:" + bad);
  }
  return quad;
}

}  // namespace dissipgen
