#pragma once

// Shared fixtures for the test suites. The "worked pencil" is the 2x2 pair
// M = I, A = [[0,1],[1,0]] with empty core: its boundary form is
// T = [[0,2],[2,0]], the graph Gram is 2I, and the form-spectral quadruple
// is gm = (1,-1), gp = (1,1).

#include "dissipgen/dissipgen.hpp"

namespace dgtest {

using namespace dissipgen;

inline PencilPtr worked_pencil() {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  return make_pencil(make_inner_space(Matrix::Identity(2, 2)), a, Matrix(2, 0));
}

inline BoundaryQuadruple worked_quadruple(PencilPtr p) {
  Matrix gm(1, 2), gp(1, 2);
  gm << 1, -1;
  gp << 1, 1;
  return BoundaryQuadruple{std::move(p), gm, gp, QuadrupleMeta::model_explicit};
}

inline Matrix scalar(Complex z) {
  Matrix m(1, 1);
  m(0, 0) = z;
  return m;
}

}  // namespace dgtest
