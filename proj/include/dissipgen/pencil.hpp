#pragma once

// A "skew pencil" is the finite-dimensional stand-in for a densely defined
// skew-symmetric operator A0 together with its maximal extension A: a weighted
// inner-product space V, the matrix a_max acting on all of V, and an explicit
// basis of the core domain D(A0). All boundary information sits in the
// Hermitian boundary form T = M A + A^H M, which vanishes on the core.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dissipgen/algebra.hpp"
#include "dissipgen/report.hpp"
#include "dissipgen/sampling.hpp"

namespace dissipgen {

struct InnerSpace {
  Index dim = 0;
  Matrix weight;  // Hermitian positive-definite Gram matrix M, <u,v> = v^H M u
};

inline InnerSpace make_inner_space(Matrix weight) {
  if (weight.rows() != weight.cols()) {
    throw DimensionMismatch("inner space: weight must be square");
  }
  if (!is_hermitian(weight, 1e-10)) throw NotHermitian("inner space: weight");
  if (weight.rows() > 0) {
    Eigen::LLT<Matrix> llt(hermitize(weight));
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("inner space: weight");
  }
  const Index n = weight.rows();
  return InnerSpace{n, std::move(weight)};
}

struct SkewPencil {
  InnerSpace space;
  Matrix a_max;  // the maximal operator on V
  Matrix core;   // columns span D(A0); may be empty

  Index dim() const { return space.dim; }
};

using PencilPtr = std::shared_ptr<const SkewPencil>;

inline PencilPtr make_pencil(InnerSpace space, Matrix a_max, Matrix core) {
  const Index n = space.dim;
  if (a_max.rows() != n || a_max.cols() != n) {
    throw DimensionMismatch("pencil: a_max must be n x n");
  }
  if (core.rows() != n && !(core.size() == 0 && core.cols() == 0)) {
    throw DimensionMismatch("pencil: core must have n rows");
  }
  if (core.size() == 0) core = Matrix(n, 0);
  return std::make_shared<SkewPencil>(SkewPencil{std::move(space), std::move(a_max), std::move(core)});
}

// Boundary form matrix T = M A + A^H M; b(u,v) = v^H T u.
inline Matrix boundary_form(const SkewPencil& p) {
  return hermitize(p.space.weight * p.a_max + p.a_max.adjoint() * p.space.weight);
}

// Gram matrix of the graph inner product, G = M + A^H M A.
inline Matrix graph_gram(const SkewPencil& p) {
  return hermitize(p.space.weight + p.a_max.adjoint() * (p.space.weight * p.a_max));
}

inline std::vector<CheckItem> verify_pencil(const SkewPencil& p, double tol = kDefaultTol) {
  std::vector<CheckItem> out;
  const Matrix& M = p.space.weight;
  const Matrix& A = p.a_max;

  const double herm = (M - M.adjoint()).norm();
  out.push_back({"weight_hermitian", herm, 1e-10 * std::max(M.norm(), 1.0), herm <= 1e-10 * std::max(M.norm(), 1.0)});

  double lam_min = 0.0;
  if (p.dim() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(M), Eigen::EigenvaluesOnly);
    lam_min = es.eigenvalues()(0);
  }
  out.push_back({"weight_positive", -lam_min, 0.0, lam_min > 0.0 || p.dim() == 0});

  const Matrix T = boundary_form(p);
  const double core_resid = (T * p.core).norm();
  const double core_scale = std::max(M.norm() * A.norm(), 1.0);
  out.push_back({"core_skew", core_resid, tol * core_scale, core_resid <= tol * core_scale});

  const bool full = p.core.cols() == 0 || rank(p.core, tol) == p.core.cols();
  out.push_back({"core_full_rank", full ? 0.0 : 1.0, 0.0, full});

  // Informational: how much larger ker T (the discrete closure) is than the
  // core span. Strict containment is reported, never an error.
  const Index ker_dim = p.dim() - rank(T, tol);
  out.push_back({"closure_minus_core_dim", double(ker_dim - p.core.cols()), -1.0, true});
  return out;
}

struct SkewSymmetryReport {
  double max_residual = 0.0;  // operator norm of Qc^H T Qc on the orthonormalized core
  double diag_residual = 0.0; // worst |Re<A u, u>| over probe vectors
  bool pass = true;
};

// Checks the equivalent skew-symmetry conditions on span(core): the boundary
// form compressed to the core vanishes, and Re<A0 u, u> = 0 on probes.
inline SkewSymmetryReport check_skew_symmetric(const SkewPencil& p, double tol = kDefaultTol,
                                               std::uint64_t probe_seed = 0x5eed) {
  SkewSymmetryReport rep;
  if (p.core.cols() == 0) return rep;  // vacuous
  const Matrix& M = p.space.weight;
  const Matrix T = boundary_form(p);
  const Matrix Qc = orthonormalize(p.core, M, tol);
  rep.max_residual = operator_norm(Qc.adjoint() * T * Qc);
  Sampler s(probe_seed);
  for (int k = 0; k < 16; ++k) {
    Vector u = Qc * s.gaussian(Qc.cols(), 1).col(0);
    const double nrm = weighted_norm(M, u);
    if (nrm == 0.0) continue;
    u /= nrm;
    rep.diag_residual = std::max(rep.diag_residual,
                                 std::abs(weighted_inner(M, Vector(p.a_max * u), u).real()));
  }
  const double scale = std::max(1.0, T.norm());
  rep.pass = rep.max_residual <= tol * scale && rep.diag_residual <= tol * scale;
  return rep;
}

struct DissipativityReport {
  double lambda_max = 0.0;        // largest eigenvalue of the compressed Hermitian part
  double worst_norm_ratio = 1.0;  // min |x - tAx| / |x| over probes, t in {0.1, 1, 10}
  bool norm_check_pass = true;
  bool pass = true;               // lambda_max <= tol
};

// Dissipativity of A on span(S): the numerical-range criterion (largest
// eigenvalue of the Hermitian part of the compressed operator) decides;
// |x - tAx| >= |x| on random probes is kept as a cross-check.
inline DissipativityReport check_dissipative_on(const SkewPencil& p, const Matrix& S,
                                                double tol = kDefaultTol,
                                                std::uint64_t probe_seed = 0x5eed) {
  if (S.rows() != p.dim()) throw DimensionMismatch("check_dissipative_on: basis rows");
  const Matrix& M = p.space.weight;
  if (S.cols() > 0 && rank(S, tol) < S.cols()) {
    throw RankDeficientBasis("check_dissipative_on: S is rank deficient");
  }
  DissipativityReport rep;
  if (S.cols() == 0) return rep;  // vacuous pass
  const Matrix Q = orthonormalize(S, M, tol);
  if (Q.cols() < S.cols()) throw RankDeficientBasis("check_dissipative_on: S is rank deficient");
  const Matrix B = Q.adjoint() * (M * (p.a_max * Q));
  rep.lambda_max = lambda_max_herm(B);
  rep.pass = rep.lambda_max <= tol;

  Sampler s(probe_seed);
  const Matrix I = Matrix::Identity(p.dim(), p.dim());
  for (int k = 0; k < 100; ++k) {
    Vector x = Q * s.gaussian(Q.cols(), 1).col(0);
    const double nx = weighted_norm(M, x);
    if (nx == 0.0) continue;
    for (double t : {0.1, 1.0, 10.0}) {
      const double ratio = weighted_norm(M, Vector(x - t * (p.a_max * x))) / nx;
      rep.worst_norm_ratio = std::min(rep.worst_norm_ratio, ratio);
    }
  }
  // Consistent with lambda_max <= tol at t <= 10 plus round-off.
  rep.norm_check_pass = rep.worst_norm_ratio >= 1.0 - 100.0 * tol;
  return rep;
}

// Random pencil with prescribed deficiency structure: A is a random skew
// block plus +1 and -1 eigenblocks, conjugated by a Haar unitary. By
// construction ker T is the first block and ker(I -+ A) contain the others.
inline PencilPtr synth_pencil(Index k0, Index kp, Index km, std::uint64_t seed) {
  if (k0 < 0 || kp < 0 || km < 0 || k0 + kp + km < 1) {
    throw Error("synth_pencil: need k0 + kp + km >= 1");
  }
  const Index n = k0 + kp + km;
  Sampler s(seed);
  Matrix D = Matrix::Zero(n, n);
  D.topLeftCorner(k0, k0) = s.skew_hermitian(k0);
  D.block(k0, k0, kp, kp) = Matrix::Identity(kp, kp);
  D.bottomRightCorner(km, km) = -Matrix::Identity(km, km);
  const Matrix U = s.unitary(n);
  Matrix a = U * D * U.adjoint();
  Matrix core = U.leftCols(k0);
  return make_pencil(make_inner_space(Matrix::Identity(n, n)), std::move(a), std::move(core));
}

}  // namespace dissipgen
