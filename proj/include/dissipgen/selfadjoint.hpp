#pragma once

// Bridge between symmetric and skew pencils: S is symmetric iff iS is
// skew-symmetric, and selfadjoint extensions of S correspond to unitary
// boundary couplings of the skew pencil. The compressed operator of such an
// extension is Hermitian after multiplication by -i and carries the real
// spectrum.
//
// Orientation: the coupling always maps Gm-data to Gp-data. The opposite
// orientation (Gp-data to Gm-data) is its adjoint for unitary couplings; see
// reversed_coupling.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dissipgen/algebra.hpp"
#include "dissipgen/extension.hpp"
#include "dissipgen/pencil.hpp"
#include "dissipgen/report.hpp"

namespace dissipgen {

struct SymmetricPencil {
  InnerSpace space;
  Matrix s_max;  // stand-in for the adjoint S*
  Matrix core;   // columns span D(S)

  Index dim() const { return space.dim; }
};

inline SymmetricPencil make_symmetric_pencil(InnerSpace space, Matrix s_max, Matrix core) {
  const Index n = space.dim;
  if (s_max.rows() != n || s_max.cols() != n) {
    throw DimensionMismatch("symmetric pencil: s_max must be n x n");
  }
  if (core.size() == 0) core = Matrix(n, 0);
  if (core.rows() != n) throw DimensionMismatch("symmetric pencil: core must have n rows");
  return SymmetricPencil{std::move(space), std::move(s_max), std::move(core)};
}

inline std::vector<CheckItem> verify_symmetric_pencil(const SymmetricPencil& sp,
                                                      double tol = kDefaultTol) {
  std::vector<CheckItem> out;
  const Matrix& M = sp.space.weight;
  const Matrix form = M * sp.s_max - sp.s_max.adjoint() * M;
  const double resid = (form * sp.core).norm();
  const double scale = std::max(M.norm() * sp.s_max.norm(), 1.0);
  out.push_back({"core_symmetric", resid, tol * scale, resid <= tol * scale});
  return out;
}

// iS with the same space and core. Symmetry of S on the core becomes
// skew-symmetry of the pencil.
inline PencilPtr to_skew(const SymmetricPencil& sp) {
  const Complex i(0.0, 1.0);
  return make_pencil(sp.space, i * sp.s_max, sp.core);
}

struct SelfadjointExtension {
  Extension ext;
  Matrix compressed;             // -i gen, Hermitian
  RealVector spectrum;           // real eigenvalues, descending
  double hermiticity_residual;   // |compressed - compressed^H| / max(1, |compressed|)
};

// Builds the extension of the skew pencil for a unitary coupling and
// certifies that -i gen is Hermitian (the generator of a unitary group is
// skew, which is Stone's theorem at finite dimension).
inline SelfadjointExtension selfadjoint_extension(const BoundaryQuadruple& quad,
                                                  const Contraction& phi,
                                                  double tol = kDefaultTol) {
  if (phi.in_dim() != quad.p() || phi.out_dim() != quad.q()) {
    throw DimensionMismatch("selfadjoint_extension: phi must be q x p");
  }
  if (quad.p() != quad.q()) {
    throw DimensionMismatch("selfadjoint_extension: requires p = q");
  }
  if (!phi.unitary()) {
    throw NotUnitary("selfadjoint_extension: sigma range [" + std::to_string(phi.sigma_min()) +
                     ", " + std::to_string(phi.sigma_max()) + "]");
  }
  Extension ext = build_extension(quad, phi, tol);
  const Complex i(0.0, 1.0);
  Matrix t_hat = -i * ext.gen;
  const double resid = (t_hat - t_hat.adjoint()).norm() / std::max(1.0, t_hat.norm());
  if (resid > tol) {
    throw Error("selfadjoint_extension: Hermiticity certificate failed, residual " +
                std::to_string(resid));
  }
  t_hat = hermitize(t_hat);
  RealVector spec(t_hat.rows());
  if (t_hat.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(t_hat, Eigen::EigenvaluesOnly);
    spec = es.eigenvalues().reverse();  // descending
  }
  return SelfadjointExtension{std::move(ext), std::move(t_hat), std::move(spec), resid};
}

// The same coupling seen in the opposite orientation (Gp-data to Gm-data).
// For a unitary coupling this is the inverse, i.e. the adjoint.
inline Matrix reversed_coupling(const Contraction& phi) { return phi.matrix().adjoint(); }

}  // namespace dissipgen
