#pragma once

// Seeded random matrix generators: Haar unitaries, skew-Hermitian blocks and
// contractions drawn by singular-value clipping. Used by the synthetic pencil
// builder, the CLI sampler and the property tests. Same seed, same stream.

#include <cmath>
#include <cstdint>
#include <random>

#include "dissipgen/algebra.hpp"

namespace dissipgen {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double gauss() { return normal_(rng_); }

  Complex cgauss() {
    const double re = normal_(rng_);
    const double im = normal_(rng_);
    return Complex(re, im) / std::sqrt(2.0);
  }

  Matrix gaussian(Index rows, Index cols) {
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) m(i, j) = cgauss();
    }
    return m;
  }

  // Haar-distributed unitary: QR of a Gaussian matrix with the phases of
  // diag(R) absorbed into Q.
  Matrix unitary(Index n) {
    if (n == 0) return Matrix(0, 0);
    const Matrix g = gaussian(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix Q = qr.householderQ();
    const Matrix R = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
      const Complex d = R(j, j);
      Q.col(j) *= (std::abs(d) == 0.0) ? Complex(1, 0) : d / std::abs(d);
    }
    return Q;
  }

  Matrix skew_hermitian(Index n) {
    const Matrix g = gaussian(n, n);
    return 0.5 * (g - g.adjoint());
  }

  Matrix hermitian(Index n) {
    const Matrix g = gaussian(n, n);
    return 0.5 * (g + g.adjoint());
  }

  // Gaussian matrix with singular values clipped into [0,1].
  Matrix contraction(Index rows, Index cols) {
    if (rows == 0 || cols == 0) return Matrix(rows, cols);
    const Matrix g = gaussian(rows, cols);
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    RealVector s = svd.singularValues();
    for (Index i = 0; i < s.size(); ++i) s(i) = std::min(s(i), 1.0);
    return svd.matrixU() * s.asDiagonal() * svd.matrixV().adjoint();
  }

  // Contraction with all singular values equal to one.
  Matrix unitary_contraction(Index n) { return unitary(n); }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace dissipgen
