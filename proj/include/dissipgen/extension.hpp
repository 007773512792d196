#pragma once

// Extensions A_Phi of the core operator, parametrized by boundary
// contractions Phi: data on the Gm side is coupled to the Gp side, the domain
// is D(A_Phi) = {w : Phi Gm w = Gp w} and the generator is the compression of
// a_max to a weight-orthonormal basis of that domain. Contractions give
// dissipative generators, unitaries give skew ones, and the contraction can
// be recovered from any dissipative domain.

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "dissipgen/algebra.hpp"
#include "dissipgen/pencil.hpp"
#include "dissipgen/quadruple.hpp"

namespace dissipgen {

// Boundary coupling Phi : C^p -> C^q with operator norm at most 1 + tol.
// The isometry and unitarity flags are derived from the singular values,
// never set by hand.
class Contraction {
 public:
  explicit Contraction(Matrix phi, double tol = kDefaultTol)
      : Contraction(std::move(phi), tol, /*enforce=*/true) {}

  // Test hook: wraps an arbitrary matrix without the norm gate.
  static Contraction unchecked(Matrix phi, double tol = kDefaultTol) {
    return Contraction(std::move(phi), tol, /*enforce=*/false);
  }

  const Matrix& matrix() const { return phi_; }
  double tol() const { return tol_; }
  Index in_dim() const { return phi_.cols(); }   // dim H-
  Index out_dim() const { return phi_.rows(); }  // dim H+
  double sigma_max() const { return sigma_max_; }
  double sigma_min() const { return sigma_min_; }

  bool isometry() const { return in_dim() <= out_dim() && sigma_min_ >= 1.0 - tol_; }
  bool unitary() const { return in_dim() == out_dim() && isometry(); }

 private:
  Contraction(Matrix phi, double tol, bool enforce) : phi_(std::move(phi)), tol_(tol) {
    if (phi_.rows() > 0 && phi_.cols() > 0) {
      const RealVector s = singular_values(phi_);
      sigma_max_ = s(0);
      sigma_min_ = s(s.size() - 1);
    } else {
      sigma_max_ = 0.0;
      sigma_min_ = (phi_.cols() == 0) ? 1.0 : 0.0;  // empty domain is vacuously isometric
    }
    if (enforce && sigma_max_ > 1.0 + tol_) {
      throw NotAContraction("contraction gate: sigma_max = " + std::to_string(sigma_max_));
    }
  }

  Matrix phi_;
  double tol_;
  double sigma_max_;
  double sigma_min_;
};

struct Extension {
  BoundaryQuadruple quadruple;
  Contraction phi;
  Matrix basis;  // n x s, weight-orthonormal columns spanning D(A_Phi)
  Matrix gen;    // s x s compressed generator basis^H M a_max basis
};

namespace detail {

inline Extension make_extension(const BoundaryQuadruple& quad, Contraction phi, double tol,
                                bool certify) {
  const SkewPencil& P = *quad.pencil;
  const Index n = P.dim();
  const Matrix& M = P.space.weight;
  const Matrix C = phi.matrix() * quad.gm - quad.gp;  // q x n
  const Matrix ker = (C.rows() == 0) ? Matrix(Matrix::Identity(n, n)) : null_space(C, tol);
  Matrix basis = orthonormalize(ker, M, tol);
  Matrix gen = basis.adjoint() * (M * (P.a_max * basis));
  Extension e{quad, std::move(phi), std::move(basis), std::move(gen)};

  if (certify) {
    if (e.basis.cols() != n - quad.q()) {
      throw Error("extension: domain dimension " + std::to_string(e.basis.cols()) +
                  " != n - q = " + std::to_string(n - quad.q()));
    }
    double bc_resid = 0.0;
    if (C.rows() > 0 && e.basis.cols() > 0) bc_resid = (C * e.basis).norm();
    const double bc_scale = std::max(1.0, C.norm());
    if (bc_resid > 100.0 * tol * bc_scale) {
      throw Error("extension: boundary condition residual " + std::to_string(bc_resid));
    }
    const double lam = lambda_max_herm(e.gen);
    if (lam > tol) {
      throw Error("extension: dissipativity certificate failed, lambda_max = " +
                  std::to_string(lam));
    }
    if (P.core.cols() > 0) {
      const Matrix Qc = orthonormalize(P.core, M, tol);
      if (subspace_sin(e.basis, Qc, M) > 1e-7) {
        throw Error("extension: core is not contained in the domain");
      }
    }
    // m-dissipativity at finite dimension: I - gen must be invertible.
    if (e.gen.rows() > 0) {
      const Matrix shift = Matrix::Identity(e.gen.rows(), e.gen.cols()) - e.gen;
      const RealVector s = singular_values(shift);
      if (s(s.size() - 1) < 0.5) {
        throw Error("extension: I - gen is numerically singular");
      }
    }
  }
  return e;
}

}  // namespace detail

inline Extension build_extension(const BoundaryQuadruple& quad, const Contraction& phi,
                                 double tol = kDefaultTol) {
  if (phi.in_dim() != quad.p() || phi.out_dim() != quad.q()) {
    throw DimensionMismatch("build_extension: phi must be q x p for this quadruple");
  }
  return detail::make_extension(quad, phi, tol, /*certify=*/true);
}

// Test hook: builds without the contraction gate or the dissipativity
// certificate, so that non-contractions can be probed for positive
// Hermitian-part eigenvalues.
inline Extension build_extension_unchecked(const BoundaryQuadruple& quad, const Matrix& phi_raw,
                                           double tol = kDefaultTol) {
  if (phi_raw.cols() != quad.p() || phi_raw.rows() != quad.q()) {
    throw DimensionMismatch("build_extension_unchecked: phi must be q x p");
  }
  return detail::make_extension(quad, Contraction::unchecked(phi_raw, tol), tol,
                                /*certify=*/false);
}

// Recovers the coupling from a dissipative subspace S containing the core:
// Phi is defined on gm S by Phi (gm w) = gp w (well defined because
// |gp w| <= |gm w| there) and extended by zero on the orthogonal complement
// of gm S. Implemented as gp S (gm S)^+ with an SVD pseudoinverse.
inline Contraction recover_contraction(const BoundaryQuadruple& quad, const Matrix& S,
                                       double tol = kDefaultTol) {
  const SkewPencil& P = *quad.pencil;
  if (S.rows() != P.dim()) throw DimensionMismatch("recover_contraction: S rows");
  const Matrix& M = P.space.weight;
  const Matrix Qs = orthonormalize(S, M, tol);
  if (P.core.cols() > 0) {
    const Matrix Qc = orthonormalize(P.core, M, tol);
    if (Qs.cols() == 0 || subspace_sin(Qs, Qc, M) > 1e-7) {
      throw CoreNotContained("recover_contraction: span(core) is not inside span(S)");
    }
  }
  const DissipativityReport rep = check_dissipative_on(P, Qs, tol);
  if (!rep.pass) {
    throw NotDissipativeOnS("recover_contraction: lambda_max = " + std::to_string(rep.lambda_max));
  }
  const Index p = quad.p(), q = quad.q();
  if (p == 0 || Qs.cols() == 0) return Contraction(Matrix::Zero(q, p), tol);
  const Matrix X = quad.gm * Qs;  // p x s
  const Matrix Y = quad.gp * Qs;  // q x s
  Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = svd.singularValues();
  Index r = 0;
  while (r < s.size() && s(r) > tol * s(0)) ++r;
  Matrix phi = Matrix::Zero(q, p);
  if (r > 0) {
    const Matrix Ur = svd.matrixU().leftCols(r);
    const Matrix Vr = svd.matrixV().leftCols(r);
    phi = Y * (Vr * s.head(r).cwiseInverse().asDiagonal() * Ur.adjoint());
  }
  return Contraction(std::move(phi), tol);
}

// True iff the compressed generator is skew: |gen + gen^H| <= tol max(1,|gen|).
inline bool is_unitary_generator(const Extension& e, double tol = kDefaultTol) {
  if (e.gen.rows() == 0) return true;
  const double defect = operator_norm(e.gen + e.gen.adjoint());
  return defect <= tol * std::max(1.0, operator_norm(e.gen));
}

// Domain equality as subspaces (largest principal angle below tol).
inline bool extension_equal(const Extension& a, const Extension& b, double tol = 1e-8) {
  if (a.quadruple.pencil != b.quadruple.pencil) return false;
  if (a.basis.cols() != b.basis.cols()) return false;
  const Matrix& M = a.quadruple.pencil->space.weight;
  return subspace_sin(a.basis, b.basis, M) <= tol && subspace_sin(b.basis, a.basis, M) <= tol;
}

enum class Regime { both_zero, gamma_plus_zero, gamma_minus_zero, generic };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::both_zero: return "both-zero";
    case Regime::gamma_plus_zero: return "gamma-plus-zero";
    case Regime::gamma_minus_zero: return "gamma-minus-zero";
    case Regime::generic: return "generic";
  }
  return "?";
}

struct RegimeReport {
  Regime regime = Regime::generic;
  Index p = 0;
  Index q = 0;
  bool unitary_possible = false;          // p == q
  std::optional<Extension> unique_extension;  // present in the degenerate regimes
};

// Classifies the quadruple into the degenerate regimes. With Gp = 0 the
// whole space is the unique m-dissipative domain; with Gm = 0 it is the
// closure; with both zero the operator is already skew-adjoint. A unitary
// coupling can exist iff p = q.
inline RegimeReport enumerate_extremes(const BoundaryQuadruple& quad, double tol = kDefaultTol) {
  RegimeReport rep;
  rep.p = quad.p();
  rep.q = quad.q();
  rep.unitary_possible = rep.p == rep.q;
  if (rep.p == 0 && rep.q == 0) {
    rep.regime = Regime::both_zero;
    rep.unique_extension = build_extension(quad, Contraction(Matrix(0, 0)), tol);
  } else if (rep.q == 0) {
    rep.regime = Regime::gamma_plus_zero;
    rep.unique_extension = build_extension(quad, Contraction(Matrix::Zero(0, rep.p)), tol);
  } else if (rep.p == 0) {
    rep.regime = Regime::gamma_minus_zero;
    rep.unique_extension = build_extension(quad, Contraction(Matrix::Zero(rep.q, 0)), tol);
  } else {
    rep.regime = Regime::generic;
  }
  return rep;
}

}  // namespace dissipgen
