#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "dissipgen/algebra.hpp"
#include "dissipgen/sampling.hpp"

using namespace dissipgen;

namespace {
const Complex I1(0.0, 1.0);
}

TEST_CASE("hermitian_geig: zero form") {
  const Matrix T = Matrix::Zero(3, 3);
  const Matrix G = Matrix::Identity(3, 3);
  const Spectrum sp = hermitian_geig(T, G);
  REQUIRE(sp.eigenvalues.size() == 3);
  for (Index i = 0; i < 3; ++i) CHECK(std::abs(sp.eigenvalues(i)) <= 1e-12);
  CHECK((sp.eigenvectors.adjoint() * G * sp.eigenvectors - Matrix::Identity(3, 3)).norm() <= 1e-10);
}

TEST_CASE("hermitian_geig: hand-solved 2x2 pencil") {
  Matrix T(2, 2);
  T << 0, 2, 2, 0;
  const Matrix G = 2.0 * Matrix::Identity(2, 2);
  const Spectrum sp = hermitian_geig(T, G);
  REQUIRE(sp.eigenvalues.size() == 2);
  CHECK(sp.eigenvalues(0).real() == Catch::Approx(-1.0).margin(1e-12));
  CHECK(sp.eigenvalues(1).real() == Catch::Approx(1.0).margin(1e-12));
  // eigenvectors are (1,-1)/2 and (1,1)/2 up to phase
  const Vector x0 = sp.eigenvectors.col(0), x1 = sp.eigenvectors.col(1);
  CHECK(std::abs(x0(0)) == Catch::Approx(0.5).margin(1e-12));
  CHECK((x0(0) * std::conj(x0(1))).real() == Catch::Approx(-0.25).margin(1e-12));
  CHECK((x1(0) * std::conj(x1(1))).real() == Catch::Approx(0.25).margin(1e-12));
  // G-orthonormality and reconstruction
  CHECK((sp.eigenvectors.adjoint() * G * sp.eigenvectors - Matrix::Identity(2, 2)).norm() <= 1e-10);
  Matrix lam = Matrix::Zero(2, 2);
  lam(0, 0) = sp.eigenvalues(0);
  lam(1, 1) = sp.eigenvalues(1);
  CHECK((G * sp.eigenvectors * lam * sp.eigenvectors.adjoint() * G - T).norm() <= 1e-9 * T.norm());
}

TEST_CASE("hermitian_geig: diagonal case sorts ascending") {
  Matrix T(2, 2);
  T << 3, 0, 0, -5;
  const Spectrum sp = hermitian_geig(T, Matrix::Identity(2, 2));
  CHECK(sp.eigenvalues(0).real() == Catch::Approx(-5.0));
  CHECK(sp.eigenvalues(1).real() == Catch::Approx(3.0));
}

TEST_CASE("hermitian_geig: input gates") {
  Matrix T(2, 2);
  T << 0, 1, 0, 0;  // not Hermitian
  CHECK_THROWS_AS(hermitian_geig(T, Matrix::Identity(2, 2)), NotHermitian);
  Matrix G(2, 2);
  G << 1, 0, 0, -1;  // indefinite
  CHECK_THROWS_AS(hermitian_geig(Matrix::Zero(2, 2), G), NotPositiveDefinite);
}

TEST_CASE("hermitian_geig: reconstruction on random Hermitian pairs") {
  Sampler s(20260810);
  for (Index n : {5, 23, 60, 200}) {
    const Matrix T = s.hermitian(n);
    Matrix B = s.gaussian(n, n);
    const Matrix G = hermitize(B * B.adjoint()) + double(n) * Matrix::Identity(n, n);
    const Spectrum sp = hermitian_geig(T, G);
    CHECK((sp.eigenvectors.adjoint() * G * sp.eigenvectors - Matrix::Identity(n, n)).norm() <=
          1e-10 * double(n));
    Matrix lam = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) lam(i, i) = sp.eigenvalues(i);
    const Matrix rebuilt = G * sp.eigenvectors * lam * sp.eigenvectors.adjoint() * G;
    CHECK((rebuilt - T).norm() <= 1e-9 * std::max(1.0, T.norm()));
    for (Index i = 0; i + 1 < n; ++i) {
      CHECK(sp.eigenvalues(i).real() <= sp.eigenvalues(i + 1).real() + 1e-14);
    }
  }
}

TEST_CASE("null_space: basic shapes") {
  CHECK(null_space(Matrix::Identity(3, 3), 1e-9).cols() == 0);

  Matrix row(1, 2);
  row << 1, -1;
  const Matrix ns = null_space(row, 1e-9);
  REQUIRE(ns.cols() == 1);
  CHECK(std::abs(ns(0, 0)) == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-12));
  CHECK((ns(0, 0) * std::conj(ns(1, 0))).real() == Catch::Approx(0.5).margin(1e-12));

  // phi = 0 in ker(phi gm - gp) for the worked maps: the row (-1,-1)
  Matrix row2(1, 2);
  row2 << -1, -1;
  const Matrix ns2 = null_space(row2, 1e-9);
  REQUIRE(ns2.cols() == 1);
  CHECK((ns2(0, 0) * std::conj(ns2(1, 0))).real() == Catch::Approx(-0.5).margin(1e-12));

  CHECK((null_space(Matrix::Zero(3, 3), 1e-9) - Matrix::Identity(3, 3)).norm() <= 1e-14);
  CHECK(null_space(Matrix(0, 4), 1e-9).cols() == 4);
}

TEST_CASE("null_space: residual bound on random rank-deficient input") {
  Sampler s(7);
  const Matrix A = s.gaussian(6, 3) * s.gaussian(3, 6);  // rank 3 in C^6
  const Matrix ns = null_space(A, 1e-9);
  REQUIRE(ns.cols() == 3);
  CHECK((A * ns).norm() <= 10.0 * 1e-9 * operator_norm(A));
  CHECK((ns.adjoint() * ns - Matrix::Identity(3, 3)).norm() <= 1e-12);
}

TEST_CASE("matrix_exp: closed forms") {
  CHECK((matrix_exp(Matrix::Zero(3, 3), 2.5) - Matrix::Identity(3, 3)).norm() <= 1e-14);

  Matrix rot(2, 2);
  rot << 0, -1, 1, 0;
  const double pi = std::acos(-1.0);
  CHECK((matrix_exp(rot, pi) + Matrix::Identity(2, 2)).norm() <= 1e-10);

  Matrix one(1, 1);
  one << -1;
  CHECK(std::abs(matrix_exp(one, 1.0)(0, 0) - std::exp(-1.0)) <= 1e-14);
}

TEST_CASE("matrix_exp: overflow cap") {
  Matrix big(2, 2);
  big << 2e4, 0, 0, 2e4;
  CHECK_THROWS_AS(matrix_exp(big, 1.0), Overflow);
  CHECK_THROWS_AS(matrix_exp(big, 1e-300 * 0 + std::numeric_limits<double>::infinity()), Overflow);
}

TEST_CASE("matrix_exp: eigendecomposition oracle on normal matrices") {
  Sampler s(42);
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 8;
    const Matrix U = s.unitary(n);
    Vector d(n);
    for (Index i = 0; i < n; ++i) d(i) = Complex(-std::abs(s.gauss()), 3.0 * s.gauss());
    const Matrix B = U * d.asDiagonal() * U.adjoint();
    const double t = 0.7 + 0.1 * trial;
    Vector ed(n);
    for (Index i = 0; i < n; ++i) ed(i) = std::exp(t * d(i));
    const Matrix oracle = U * ed.asDiagonal() * U.adjoint();
    const Matrix got = matrix_exp(B, t);
    CHECK((got - oracle).norm() <= 1e-10 * oracle.norm());
  }
}

TEST_CASE("matrix_exp: semigroup law") {
  Sampler s(99);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 6;
    Matrix B = s.gaussian(n, n);
    B *= 10.0 / std::max(1.0, operator_norm(B));
    const double st = -5.0 + 10.0 * std::abs(std::sin(double(trial)));
    const double tt = 5.0 - 9.0 * std::abs(std::cos(double(trial * 3 + 1)));
    const Matrix lhs = matrix_exp(B, st + tt);
    const Matrix rhs = matrix_exp(B, st) * matrix_exp(B, tt);
    CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()));
  }
}

TEST_CASE("solve: LU with residual guard") {
  Sampler s(5);
  const Matrix A = s.gaussian(5, 5) + 5.0 * Matrix::Identity(5, 5);
  const Vector b = s.gaussian(5, 1).col(0);
  const Vector x = solve(A, b);
  CHECK((A * x - b).norm() <= 1e-10 * (A.norm() * x.norm() + b.norm()));

  Matrix sing = Matrix::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(solve(sing, Vector(Vector::Ones(2))), SingularSystem);
}

TEST_CASE("orthonormalize: weighted Gram-Schmidt") {
  Sampler s(11);
  const Index n = 7;
  Matrix B = s.gaussian(n, n);
  const Matrix W = hermitize(B * B.adjoint()) + Matrix::Identity(n, n);
  const Matrix V = s.gaussian(n, 4);
  const Matrix Q = orthonormalize(V, W, 1e-9);
  REQUIRE(Q.cols() == 4);
  CHECK((Q.adjoint() * W * Q - Matrix::Identity(4, 4)).norm() <= 1e-11);

  // dependent columns get dropped
  Matrix V2(n, 3);
  V2.col(0) = V.col(0);
  V2.col(1) = V.col(1);
  V2.col(2) = V.col(0) + V.col(1);
  CHECK(orthonormalize(V2, W, 1e-9).cols() == 2);
}

TEST_CASE("null_space then orthonormalize is idempotent") {
  Sampler s(13);
  const Matrix A = s.gaussian(4, 8);
  const Matrix ns = null_space(A, 1e-9);
  REQUIRE(ns.cols() == 4);
  const Matrix again = orthonormalize(ns, Matrix::Identity(8, 8), 1e-9);
  CHECK((again - ns).norm() <= 1e-12);
}

TEST_CASE("operator_norm and rank") {
  Matrix D = Matrix::Zero(3, 3);
  D(0, 0) = 4.0;
  D(1, 1) = 1e-12;
  CHECK(operator_norm(D) == Catch::Approx(4.0));
  CHECK(rank(D, 1e-9) == 1);
  CHECK(rank(D, 1e-14) == 2);
  CHECK(rank(Matrix::Zero(2, 2), 1e-9) == 0);
  CHECK(operator_norm(Matrix(0, 0)) == 0.0);
}

TEST_CASE("subspace_sin detects containment and transversality") {
  const Matrix I6 = Matrix::Identity(6, 6);
  const Matrix B1 = I6.leftCols(3);
  CHECK(subspace_sin(B1, I6.leftCols(2), I6) <= 1e-14);
  CHECK(subspace_sin(B1, I6.rightCols(1), I6) == Catch::Approx(1.0));
}
