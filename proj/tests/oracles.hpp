// Copyright 2026 The qmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations that avoid the library code paths under test.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Eigenvalues via the general complex Schur form, real parts, ascending.
inline std::vector<double> eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) out.push_back(es.eigenvalues()(k).real());
  std::sort(out.begin(), out.end());
  return out;
}

inline double min_eigenvalue(const Matrix& m) { return eigenvalues(m).front(); }

// Transpose of the first factor of a d1 x d2 bipartite operator, by index loops.
inline Matrix transpose_first(const Matrix& m, int d1, int d2) {
  Matrix out(d1 * d2, d1 * d2);
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j)
      for (int k = 0; k < d1; ++k)
        for (int l = 0; l < d2; ++l) out(i * d2 + j, k * d2 + l) = m(k * d2 + j, i * d2 + l);
  return out;
}

inline Matrix sx() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix sz() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix kron2(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// U = exp(-i H t) over (A_O, E_I), by Pade / scaling-and-squaring.
inline Matrix ising_unitary(double coupling, double field, double time) {
  const Matrix one = Matrix::Identity(2, 2);
  const Matrix h = -coupling * kron2(sx(), sx()) - field * (kron2(sz(), one) + kron2(one, sz()));
  const Matrix a = Complex(0.0, -time) * h;
  return a.exp();
}

// W over (A_I, A_O, B_I): (1/2) sum_f |v_f><v_f| with v_f(i, a, b) = U[(b f), (a i)].
inline Matrix ising_process(double coupling, double field, double time) {
  const Matrix u = ising_unitary(coupling, field, time);
  Matrix w = Matrix::Zero(8, 8);
  for (int f = 0; f < 2; ++f) {
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 2; ++i)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) v(4 * i + 2 * a + b) = u(2 * b + f, 2 * a + i);
    w += 0.5 * v * v.adjoint();
  }
  return w;
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, int n) {
  const Matrix a = random_matrix(rng, n, n);
  return 0.5 * (a + a.adjoint());
}

inline Matrix random_density(std::mt19937_64& rng, int n) {
  const Matrix g = random_matrix(rng, n, n);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

inline Matrix random_isometry(std::mt19937_64& rng, int rows, int cols) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, rows, cols));
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

inline Matrix random_unitary(std::mt19937_64& rng, int n) { return random_isometry(rng, n, n); }

}  // namespace oracle
