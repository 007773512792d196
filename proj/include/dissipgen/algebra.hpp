#pragma once

// Dense complex linear-algebra kernel shared by every other header. This is
// a thin layer over Eigen: generalized Hermitian eigensolves via Cholesky
// reduction, SVD-based null spaces and ranks, a scaling-and-squaring matrix
// exponential and weighted Gram-Schmidt. All values are immutable after
// construction and every routine is reentrant.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>

#include "dissipgen/errors.hpp"

namespace dissipgen {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default relative tolerance for rank/null decisions. Threaded explicitly
// through every caller; never read from a global.
inline constexpr double kDefaultTol = 1e-9;

struct Spectrum {
  Vector eigenvalues;   // paired with eigenvector columns
  Matrix eigenvectors;
};

inline Matrix complexify(const RealMatrix& m) { return m.cast<Complex>(); }

inline Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

inline double one_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Relative Frobenius test of m = m^H.
inline bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol * m.norm();
}

inline RealVector singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return RealVector(0);
  if (std::min(m.rows(), m.cols()) <= 48) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues();
  }
  return Eigen::BDCSVD<Matrix>(m).singularValues();
}

// Largest singular value; 0 for empty input.
inline double operator_norm(const Matrix& m) {
  const RealVector s = singular_values(m);
  return s.size() ? s(0) : 0.0;
}

// Number of singular values above tol * sigma_max.
inline Index rank(const Matrix& m, double tol) {
  const RealVector s = singular_values(m);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return (s.array() > tol * s(0)).count();
}

// Orthonormal basis of {x : |m x| <= tol * |m| * |x|} by singular-value
// thresholding. A matrix with no rows (or zero norm) has everything in its
// kernel and yields the identity basis.
inline Matrix null_space(const Matrix& m, double tol) {
  if (!(tol > 0.0)) throw Error("null_space: tol must be positive");
  const Index n = m.cols();
  if (m.rows() == 0) return Matrix::Identity(n, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return Matrix::Identity(n, n);
  Index r = 0;
  while (r < s.size() && s(r) > tol * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

// Largest eigenvalue of the Hermitian part (m + m^H)/2.
inline double lambda_max_herm(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Solves the pencil T x = lambda G x for Hermitian T and Hermitian positive
// definite G by Cholesky reduction G = L L^H followed by a Hermitian
// eigensolve of L^{-1} T L^{-H}. Eigenvalues come back real and ascending,
// eigenvectors G-orthonormal: X^H G X = I and T = G X Lambda X^H G.
inline Spectrum hermitian_geig(const Matrix& T, const Matrix& G, double herm_tol = 1e-10) {
  if (T.rows() != T.cols() || G.rows() != G.cols() || T.rows() != G.rows()) {
    throw DimensionMismatch("hermitian_geig: T and G must be square of equal size");
  }
  if (!is_hermitian(T, herm_tol)) throw NotHermitian("hermitian_geig: T is not Hermitian");
  if (!is_hermitian(G, herm_tol)) throw NotHermitian("hermitian_geig: G is not Hermitian");
  const Index n = T.rows();
  if (n == 0) return Spectrum{Vector(0), Matrix(0, 0)};
  Eigen::LLT<Matrix> llt(hermitize(G));
  if (llt.info() != Eigen::Success) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(G), Eigen::EigenvaluesOnly);
    throw NotPositiveDefinite("hermitian_geig: smallest eigenvalue of G = " +
                              std::to_string(es.eigenvalues()(0)));
  }
  Matrix C = llt.matrixL().solve(hermitize(T));
  C = llt.matrixL().solve(C.adjoint()).adjoint();  // L^{-1} T L^{-H}
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(C));
  Spectrum out;
  out.eigenvalues = es.eigenvalues().cast<Complex>();
  out.eigenvectors = llt.matrixU().solve(es.eigenvectors());
  return out;
}

// e^{tB} by scaling and squaring with the diagonal [13/13] Pade approximant.
// Refuses |tB|_1 beyond 1e4.
inline Matrix matrix_exp(const Matrix& B, double t) {
  if (B.rows() != B.cols()) throw DimensionMismatch("matrix_exp: square input required");
  const Index n = B.rows();
  if (n == 0) return Matrix(0, 0);
  if (!std::isfinite(t)) throw Overflow("matrix_exp: t is not finite");
  Matrix A = t * B;
  const double nrm = one_norm(A);
  if (!std::isfinite(nrm) || nrm > 1e4) {
    throw Overflow("matrix_exp: |tB| = " + std::to_string(nrm) + " exceeds the cap 1e4");
  }
  constexpr double theta13 = 5.371920351148152;
  int squarings = 0;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    A *= std::ldexp(1.0, -squarings);
  }
  constexpr double b[14] = {64764752532480000.0,
                            32382376266240000.0,
                            7771770303897600.0,
                            1187353796428800.0,
                            129060195264000.0,
                            10559470521600.0,
                            670442572800.0,
                            33522128640.0,
                            1323241920.0,
                            40840800.0,
                            960960.0,
                            16380.0,
                            182.0,
                            1.0};
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A2 * A4;
  const Matrix U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
  const Matrix V =
      A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  Matrix F = (V - U).partialPivLu().solve(V + U);
  for (int k = 0; k < squarings; ++k) F = F * F;
  return F;
}

// LU with partial pivoting plus a residual guard against silent garbage on
// singular systems.
inline Matrix solve(const Matrix& A, const Matrix& B) {
  if (A.rows() != A.cols() || A.rows() != B.rows()) {
    throw DimensionMismatch("solve: incompatible shapes");
  }
  if (A.rows() == 0) return Matrix(0, B.cols());
  Eigen::PartialPivLU<Matrix> lu(A);
  Matrix X = lu.solve(B);
  const double resid = (A * X - B).norm();
  const double scale = std::max(A.norm() * X.norm() + B.norm(), 1e-300);
  if (!X.allFinite() || resid > 1e-6 * scale) {
    throw SingularSystem("solve: residual " + std::to_string(resid / scale));
  }
  return X;
}

inline Vector solve(const Matrix& A, const Vector& b) {
  return Vector(solve(A, Matrix(b)));
}

// Modified Gram-Schmidt (two passes) against the Gram matrix `weight`.
// Near-dependent columns are dropped; the result Q satisfies Q^H W Q = I.
inline Matrix orthonormalize(const Matrix& V, const Matrix& weight, double tol = kDefaultTol) {
  const Index n = V.rows();
  if (weight.rows() != n || weight.cols() != n) {
    throw DimensionMismatch("orthonormalize: weight must be n x n");
  }
  Matrix Q(n, V.cols());
  Index kept = 0;
  for (Index j = 0; j < V.cols(); ++j) {
    Vector v = V.col(j);
    const double init = std::sqrt(std::max(0.0, (v.adjoint() * weight * v)(0, 0).real()));
    if (init == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index k = 0; k < kept; ++k) {
        const Complex c = (Q.col(k).adjoint() * weight * v)(0, 0);
        v -= c * Q.col(k);
      }
    }
    const double nrm = std::sqrt(std::max(0.0, (v.adjoint() * weight * v)(0, 0).real()));
    if (nrm <= tol * init) continue;
    Q.col(kept++) = v / nrm;
  }
  return Q.leftCols(kept);
}

// <u,v>_V = v^H W u (linear in the first slot).
inline Complex weighted_inner(const Matrix& weight, const Vector& u, const Vector& v) {
  return (v.adjoint() * weight * u)(0, 0);
}

inline double weighted_norm(const Matrix& weight, const Vector& u) {
  return std::sqrt(std::max(0.0, weighted_inner(weight, u, u).real()));
}

// Sine of the largest principal angle of span(B2) against span(B1), both
// weight-orthonormal. Zero means span(B2) is contained in span(B1).
inline double subspace_sin(const Matrix& B1, const Matrix& B2, const Matrix& weight) {
  if (B2.cols() == 0) return 0.0;
  if (B1.cols() == 0) return 1.0;
  const Matrix R = B2 - B1 * (B1.adjoint() * (weight * B2));
  Eigen::LLT<Matrix> llt(hermitize(weight));
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("subspace_sin: weight");
  return std::min(1.0, operator_norm(llt.matrixU() * R));
}

}  // namespace dissipgen
