#pragma once

// Time evolution e^{t gen} of an extension, performed in the s-dimensional
// extension coordinates so the boundary condition is enforced structurally.
// Each trajectory carries the energy |u(t)|_V^2 and the boundary fluxes
// |Gp u|^2, |Gm u|^2, whose difference is the exact energy rate.

#include <cmath>
#include <utility>
#include <vector>

#include "dissipgen/algebra.hpp"
#include "dissipgen/extension.hpp"

namespace dissipgen {

struct Trajectory {
  RealVector times;
  std::vector<Vector> states;  // coordinates in the extension basis
  RealVector energies;         // |u(t)|_V^2
  RealVector flux_plus;        // |Gp u|^2 per sample
  RealVector flux_minus;       // |Gm u|^2 per sample
};

namespace detail {

// Projects ambient data onto the extension domain; rejects data that
// violates the boundary condition instead of silently projecting.
inline Vector domain_coordinates(const Extension& e, const Vector& u0, double domain_tol) {
  const Matrix& M = e.quadruple.pencil->space.weight;
  if (u0.size() != e.quadruple.dim()) throw DimensionMismatch("propagate: u0 has wrong size");
  const Vector c0 = e.basis.adjoint() * (M * u0);
  const double resid = weighted_norm(M, Vector(u0 - e.basis * c0));
  const double scale = std::max(1.0, weighted_norm(M, u0));
  if (resid > domain_tol * scale) {
    throw NotInDomain("initial data violates the boundary condition, residual " +
                      std::to_string(resid));
  }
  return c0;
}

inline Trajectory collect(const Extension& e, RealVector times, std::vector<Vector> states) {
  Trajectory traj;
  traj.times = std::move(times);
  traj.states = std::move(states);
  const Index k = traj.times.size();
  traj.energies.resize(k);
  traj.flux_plus.resize(k);
  traj.flux_minus.resize(k);
  for (Index i = 0; i < k; ++i) {
    const Vector w = e.basis * traj.states[i];
    traj.energies(i) = traj.states[i].squaredNorm();  // basis is M-orthonormal
    traj.flux_plus(i) = (e.quadruple.gp * w).squaredNorm();
    traj.flux_minus(i) = (e.quadruple.gm * w).squaredNorm();
  }
  return traj;
}

}  // namespace detail

// states[k] = e^{t_k gen} c0 via the matrix exponential.
inline Trajectory propagate_exact(const Extension& e, const Vector& u0, const RealVector& times,
                                  double domain_tol = 1e-8) {
  if (times.size() == 0) throw Error("propagate_exact: empty time grid");
  for (Index i = 1; i < times.size(); ++i) {
    if (!(times(i) > times(i - 1))) throw Error("propagate_exact: times must increase");
  }
  const Vector c0 = detail::domain_coordinates(e, u0, domain_tol);
  std::vector<Vector> states;
  states.reserve(times.size());
  for (Index i = 0; i < times.size(); ++i) {
    states.push_back(matrix_exp(e.gen, times(i)) * c0);
  }
  return detail::collect(e, times, std::move(states));
}

// Crank-Nicolson stepping: one step is (I - dt/2 gen)^{-1} (I + dt/2 gen),
// a Cayley map, contractive for dissipative gen and norm-preserving for skew
// gen at any step size.
inline Trajectory propagate_cn(const Extension& e, const Vector& u0, double dt, Index steps,
                               double domain_tol = 1e-8) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("propagate_cn: dt must be positive");
  if (steps < 0) throw Error("propagate_cn: negative step count");
  const Vector c0 = detail::domain_coordinates(e, u0, domain_tol);
  const Index s = e.gen.rows();
  const Matrix I = Matrix::Identity(s, s);
  const Matrix forward = I + (0.5 * dt) * e.gen;
  Eigen::PartialPivLU<Matrix> lu(I - (0.5 * dt) * e.gen);
  {
    const Matrix check = lu.solve(I);
    if (!check.allFinite() || ((I - (0.5 * dt) * e.gen) * check - I).norm() > 1e-6 * std::sqrt(double(std::max<Index>(s, 1)))) {
      throw SingularStep("propagate_cn: I - dt/2 gen is numerically singular");
    }
  }
  RealVector times(steps + 1);
  std::vector<Vector> states;
  states.reserve(steps + 1);
  Vector c = c0;
  times(0) = 0.0;
  states.push_back(c);
  for (Index k = 1; k <= steps; ++k) {
    c = lu.solve(forward * c);
    times(k) = double(k) * dt;
    states.push_back(c);
  }
  return detail::collect(e, times, std::move(states));
}

struct EnergyAudit {
  double max_discrepancy = 0.0;  // worst |2 Re<gen u,u> - (|Gp u|^2 - |Gm u|^2)|
  double max_relative = 0.0;     // discrepancy / max(1, energy)
  bool pass = true;
};

// The diagonal Green identity along a trajectory: the analytic energy rate
// 2 Re<gen u, u> must equal the boundary flux difference at every sample.
inline EnergyAudit energy_rate_audit(const Extension& e, const Trajectory& traj,
                                     double tol = 1e-8) {
  EnergyAudit audit;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const Vector& c = traj.states[k];
    if (c.size() != e.gen.rows()) {
      throw DimensionMismatch("energy_rate_audit: trajectory is not from this extension");
    }
    const double lhs = 2.0 * (c.adjoint() * (e.gen * c))(0, 0).real();
    const double rhs = traj.flux_plus(Index(k)) - traj.flux_minus(Index(k));
    const double disc = std::abs(lhs - rhs);
    const double rel = disc / std::max(1.0, traj.energies(Index(k)));
    audit.max_discrepancy = std::max(audit.max_discrepancy, disc);
    audit.max_relative = std::max(audit.max_relative, rel);
  }
  audit.pass = audit.max_relative <= tol;
  return audit;
}

}  // namespace dissipgen
