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

#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "qmem/detect.hpp"
#include "qmem/ising.hpp"

using namespace qmem;
using std::numbers::pi;

namespace {

double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Distance to U up to a global phase: min over phi of max |U - e^{i phi} V|.
double phase_free_diff(const Matrix& u, const Matrix& v) {
  const Complex overlap = (v.adjoint() * u).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return max_diff(u, phase * v);
}

bool near_lattice(double j, double h, const std::vector<std::pair<double, double>>& lattice, double r) {
  for (const auto& [lj, lh] : lattice) {
    if (std::hypot(j - lj, h - lh) < r) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("hamiltonian examples") {
  CHECK(ising::hamiltonian(0, 0).matrix().cwiseAbs().maxCoeff() == 0.0);
  CHECK(max_diff(ising::hamiltonian(1, 0).matrix(), -oracle::kron2(oracle::sx(), oracle::sx())) == 0.0);
  Matrix field = Matrix::Zero(4, 4);
  field(0, 0) = -2.0;
  field(3, 3) = 2.0;
  CHECK(max_diff(ising::hamiltonian(0, 1).matrix(), field) == 0.0);
  CHECK(ising::hamiltonian(0, 1).labels() == std::vector<std::string>{kAO, kEI});

  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int k = 0; k < 50; ++k) {
    const auto h = ising::hamiltonian(u(rng), u(rng));
    CHECK(h.hermiticity_defect() == 0.0);
    CHECK(std::abs(h.trace()) < 1e-15);
  }
}

TEST_CASE("evolution examples") {
  CHECK(max_diff(ising::evolution(2.0, 3.0, 0.0).matrix(), Matrix::Identity(4, 4)) < 1e-15);
  const Matrix ixx = Complex(0.0, 1.0) * oracle::kron2(oracle::sx(), oracle::sx());
  CHECK(phase_free_diff(ising::evolution(pi / 2, 0.0, 1.0).matrix(), ixx) < 1e-12);
  CHECK(max_diff(ising::evolution(pi / 2, 0.0, 1.0).matrix(), ixx) < 1e-12);
  CHECK(ising::factorizes(ising::evolution(pi, 0.5 * pi * std::sqrt(3.0), 1.0)));
  CHECK_FALSE(ising::factorizes(ising::evolution(pi, 1.0, 1.0)));
}

TEST_CASE("evolution against the Pade exponential") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> tt(0.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const double j = u(rng);
    const double h = u(rng);
    const double t = tt(rng);
    const auto e = ising::evolution(j, h, t);
    CHECK(max_diff(e.matrix(), oracle::ising_unitary(j, h, t)) < 1e-9);
    CHECK(is_unitary(e.matrix()));
    CHECK(max_diff(e.matrix(), ising::evolution(j * t, h * t, 1.0).matrix()) < 1e-9);
  }
}

TEST_CASE("process matrix against the reference construction") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> tt(0.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const double j = u(rng);
    const double h = u(rng);
    const double t = tt(rng);
    const auto w = ising::process_matrix(j, h, t);
    CHECK(w.op().labels() == std::vector<std::string>{kAI, kAO, kBI});
    CHECK(max_diff(w.op().matrix(), oracle::ising_process(j, h, t)) < 1e-9);
    CHECK(w.op().trace().real() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(validate_comb(w.op()).valid());
    CHECK(max_diff(w.op().matrix(), ising::process_matrix(j * t, h * t, 1.0).op().matrix()) < 1e-9);
  }
}

TEST_CASE("process matrix examples") {
  Matrix identity_choi = Matrix::Zero(4, 4);
  identity_choi(0, 0) = identity_choi(0, 3) = identity_choi(3, 0) = identity_choi(3, 3) = 1.0;
  const Matrix expected = oracle::kron2(0.5 * Matrix::Identity(2, 2), identity_choi);
  CHECK(max_diff(ising::process_matrix(4.0, 2.0, 0.0).op().matrix(), expected) < 1e-15);

  for (double h : {0.0, 0.3, 1.0, pi, 7.7}) CHECK(markov_distance(ising::process_matrix(0.0, h, 1.0)) <= 1e-9);

  // Fixture from the eigenvalue oracle on the reference construction.
  const double reference = oracle::min_eigenvalue(oracle::transpose_first(oracle::ising_process(1, 1, 1), 2, 4));
  CHECK(reference < -0.1);
  CHECK(ppt_min_eig(ising::process_matrix(1, 1, 1)) == doctest::Approx(reference).epsilon(1e-10));
  CHECK(ppt_min_eig(ising::process_matrix(1, 1, 1)) == doctest::Approx(-0.2921392895).epsilon(1e-9));
}

TEST_CASE("h = 0 closed form") {
  for (auto [j, t] : {std::pair{0.5, 1.0}, {1.0, 1.0}, {2.3, 0.7}}) {
    CHECK(max_abs(ising::analytic_h0(j, t).op() - ising::process_matrix(j, 0.0, t).op()) <= 1e-10);
  }
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_real_distribution<double> tt(0.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const double j = u(rng);
    const double t = tt(rng);
    const auto terms = ising::analytic_h0_terms(j, t);
    REQUIRE(terms.terms().size() == 2);
    CHECK(terms.terms()[0].weight == 0.5);
    CHECK(terms.terms()[1].weight == 0.5);
    // First term is the +1 eigenstate of sx.
    CHECK(std::abs(terms.terms()[0].state.matrix()(0, 1) - Complex(0.5)) < 1e-15);
    const auto w = ising::analytic_h0(j, t);
    CHECK(max_abs(w.op() - ising::process_matrix(j, 0.0, t).op()) <= 1e-10);
    CHECK(ppt_min_eig(w) >= -1e-10);
  }
}

TEST_CASE("markovian points") {
  const auto small = ising::markovian_points(4, 1);
  const std::vector<std::pair<double, double>> expected{{0.0, 0.0}, {pi / 2, 0.0}, {pi, 0.0}};
  REQUIRE(small.size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k) {
    CHECK(small[k].first == doctest::Approx(expected[k].first));
    CHECK(small[k].second == doctest::Approx(expected[k].second));
  }

  const auto big = ising::markovian_points(pi, 2.73);
  bool found = false;
  for (const auto& [j, h] : big) found = found || (std::abs(j - pi) < 1e-12 && std::abs(h - 0.5 * pi * std::sqrt(3.0)) < 1e-12);
  CHECK(found);

  const auto lattice = ising::markovian_points(10, 10);
  CHECK(std::is_sorted(lattice.begin(), lattice.end()));
  CHECK(std::adjacent_find(lattice.begin(), lattice.end()) == lattice.end());
  for (const auto& [j, h] : lattice) {
    CHECK(j >= 0.0);
    CHECK(j <= 10.0);
    CHECK(h >= 0.0);
    CHECK(h <= 10.0);
    CHECK(markov_distance(ising::process_matrix(j, h, 1.0)) <= 1e-9);
  }
}

TEST_CASE("factorization test") {
  CHECK(ising::factorizes(TensorOperator({{kAO, 2}, {kEI, 2}}, oracle::kron2(oracle::sx(), oracle::sz()))));
  Matrix cnot = Matrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  CHECK_FALSE(ising::factorizes(TensorOperator({{kAO, 2}, {kEI, 2}}, cnot)));
  Matrix bad = Matrix::Identity(4, 4);
  bad(0, 0) = 2.0;
  CHECK_THROWS(ising::factorizes(TensorOperator({{kAO, 2}, {kEI, 2}}, bad)));

  // Realignment singular values via an independent reshaping: sum of squares is ||U||_F^2 = 4.
  const auto s = ising::operator_schmidt_coefficients(ising::evolution(1, 1, 1));
  CHECK(s.squaredNorm() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(s(1) > 1e-3);
}

TEST_CASE("factorization exactly on the markovian lattice") {
  const auto lattice = ising::markovian_points(10, 10);
  for (const auto& [j, h] : lattice) CHECK(ising::factorizes(ising::evolution(j, h, 1.0)));

  // J = 0 factorizes for every h and is handled separately, so random points take J > 0.
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  int tested = 0;
  while (tested < 500) {
    const double j = u(rng);
    const double h = u(rng);
    if (j < 1e-3 || near_lattice(j, h, lattice, 1e-3)) continue;
    ++tested;
    CHECK_FALSE(ising::factorizes(ising::evolution(j, h, 1.0)));
  }
}
