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
#include "qmem/tensor.hpp"

using namespace qmem;

namespace {

const std::vector<std::string> kA{"A"};
const std::vector<std::string> kB{"B"};

TensorOperator phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return TensorOperator::projector(SubsystemSpace{{"A", 2}, {"B", 2}}, v);
}

TensorOperator random_op(std::mt19937_64& rng, const SubsystemSpace& s, bool hermitian) {
  const int n = s.total_dim();
  return {s, hermitian ? oracle::random_hermitian(rng, n) : oracle::random_matrix(rng, n, n)};
}

}  // namespace

TEST_CASE("subsystem space validation") {
  CHECK_THROWS_AS(SubsystemSpace({{"A", 2}, {"A", 3}}), LabelError);
  CHECK_THROWS_AS(SubsystemSpace({{"A", 0}}), LabelError);
  const SubsystemSpace s{{"A", 2}, {"B", 3}};
  CHECK(s.total_dim() == 6);
  CHECK(s.dim_of("B") == 3);
  CHECK_THROWS_AS(TensorOperator(s, Matrix::Zero(5, 5)), LabelError);
}

TEST_CASE("kron examples") {
  const auto one = TensorOperator::on("A", pauli::identity());
  CHECK(kron(one, TensorOperator::on("B", pauli::identity())).matrix().isApprox(Matrix::Identity(4, 4)));

  const auto zz = kron(TensorOperator::on("A", pauli::z()), TensorOperator::on("B", pauli::z()));
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 1, -1, -1, 1;
  CHECK(max_abs(zz - TensorOperator(zz.space(), expected)) == 0.0);

  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1;
  const auto block = kron(TensorOperator::on("A", p0), TensorOperator::on("B", pauli::x()));
  CHECK(block.matrix().topLeftCorner(2, 2).isApprox(pauli::x()));
  CHECK(block.matrix().bottomRows(2).norm() == 0.0);
  CHECK(block.matrix().topRightCorner(2, 2).norm() == 0.0);

  CHECK_THROWS_AS(kron(one, one), LabelError);
}

TEST_CASE("partial trace examples") {
  std::mt19937_64 rng(1);
  const TensorOperator ra({{"A", 2}}, oracle::random_density(rng, 2));
  const TensorOperator rb({{"B", 3}}, 2.0 * oracle::random_density(rng, 3));
  const auto pt = partial_trace(kron(ra, rb), kB);
  CHECK(max_abs(pt - ra * rb.trace()) < 1e-14);

  const auto marginal = partial_trace(phi_plus(), kB);
  CHECK(marginal.matrix().isApprox(0.5 * Matrix::Identity(2, 2), 1e-15));

  const auto x = random_op(rng, SubsystemSpace{{"A", 2}, {"B", 3}}, false);
  const std::vector<std::string> all{"A", "B"};
  const auto full = partial_trace(x, all);
  CHECK(full.dim() == 1);
  CHECK(std::abs(full.matrix()(0, 0) - x.trace()) < 1e-13);

  const std::vector<std::string> bad{"C"};
  CHECK_THROWS_AS(partial_trace(x, bad), LabelError);
}

TEST_CASE("partial transpose examples") {
  std::mt19937_64 rng(2);
  const TensorOperator ra({{"A", 2}}, oracle::random_matrix(rng, 2, 2));
  const TensorOperator rb({{"B", 2}}, oracle::random_matrix(rng, 2, 2));
  const auto pt = partial_transpose(kron(ra, rb), kA);
  CHECK(max_abs(pt - kron(TensorOperator(ra.space(), ra.matrix().transpose()), rb)) < 1e-15);

  // -1/2 against the general eigensolver on a hand-transposed matrix.
  const auto phi = phi_plus();
  const double lam = min_eigenvalue(partial_transpose(phi, kA));
  CHECK(lam == doctest::Approx(oracle::min_eigenvalue(oracle::transpose_first(phi.matrix(), 2, 2))).epsilon(1e-12));
  CHECK(lam == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose properties") {
  std::mt19937_64 rng(3);
  const SubsystemSpace s{{"A", 2}, {"B", 3}, {"C", 2}};
  const std::vector<std::vector<std::string>> subsets{{"A"}, {"B"}, {"C"}, {"A", "C"}, {"B", "C"}};
  for (int k = 0; k < 100; ++k) {
    const auto x = random_op(rng, s, false);
    const auto& l = subsets[k % subsets.size()];
    CHECK(max_abs(partial_transpose(partial_transpose(x, l), l) - x) == 0.0);
    CHECK(std::abs(partial_transpose(x, l).trace() - x.trace()) < 1e-12);
    const std::vector<std::string> other{"B"};
    if (std::find(l.begin(), l.end(), "B") == l.end()) {
      CHECK(max_abs(partial_transpose(partial_transpose(x, l), other) -
                    partial_transpose(partial_transpose(x, other), l)) == 0.0);
    }
  }
}

TEST_CASE("partial trace of a product") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const auto a = random_op(rng, SubsystemSpace{{"A", 2}, {"C", 2}}, false);
    const auto b = random_op(rng, SubsystemSpace{{"B", 3}}, false);
    CHECK(max_abs(partial_trace(kron(a, b), kB) - a * b.trace()) < 1e-12);
  }
}

TEST_CASE("trace and replace") {
  std::mt19937_64 rng(5);
  const TensorOperator ra({{"A", 2}}, oracle::random_density(rng, 2));
  const TensorOperator rb({{"B", 3}}, oracle::random_density(rng, 3));
  const auto out = trace_and_replace(kron(ra, rb), kB);
  CHECK(max_abs(out - kron(ra, TensorOperator::identity(rb.space()) * Complex(1.0 / 3.0))) < 1e-14);

  const SubsystemSpace s{{"A", 2}, {"B", 3}, {"C", 2}};
  const std::vector<std::string> l1{"C"};
  const std::vector<std::string> l2{"A", "C"};
  for (int k = 0; k < 100; ++k) {
    const auto x = random_op(rng, s, true);
    const auto y = random_op(rng, s, true);
    const auto once = trace_and_replace(x, l2);
    CHECK(max_abs(trace_and_replace(once, l2) - once) < 1e-13);
    CHECK(std::abs(once.trace() - x.trace()) < 1e-12);
    CHECK(max_abs(trace_and_replace(trace_and_replace(x, l1), l2) - once) < 1e-13);
    CHECK(std::abs(hs_inner(once, y) - hs_inner(x, trace_and_replace(y, l2))) < 1e-12);
  }
}

TEST_CASE("hermitian eigendecomposition") {
  auto e = herm_eig(TensorOperator::on("A", pauli::z()));
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  e = herm_eig(TensorOperator::identity(SubsystemSpace{{"A", 4}}));
  for (int k = 0; k < 4; ++k) CHECK(e.values(k) == doctest::Approx(1.0));

  e = herm_eig(partial_transpose(phi_plus(), kA));
  const auto ref = oracle::eigenvalues(oracle::transpose_first(phi_plus().matrix(), 2, 2));
  const std::vector<double> expected{-0.5, 0.5, 0.5, 0.5};
  for (int k = 0; k < 4; ++k) {
    CHECK(e.values(k) == doctest::Approx(expected[k]).epsilon(1e-12));
    CHECK(e.values(k) == doctest::Approx(ref[k]).epsilon(1e-12));
  }

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eig(TensorOperator::on("A", bad)), NotHermitianError);

  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 16;
    const TensorOperator h({{"A", n}}, oracle::random_hermitian(rng, n));
    const auto d = herm_eig(h);
    const double norm = spectral_norm(h);
    for (int c = 0; c < n; ++c) {
      CHECK((h.matrix() * d.vectors.col(c) - d.values(c) * d.vectors.col(c)).norm() <= 1e-9 * norm);
    }
    CHECK((d.vectors.adjoint() * d.vectors - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-9);
    const Matrix rebuilt = d.vectors * d.values.cast<Complex>().asDiagonal() * d.vectors.adjoint();
    CHECK((rebuilt - h.matrix()).cwiseAbs().maxCoeff() <= 1e-9 * norm);
    for (int c = 1; c < n; ++c) CHECK(d.values(c - 1) <= d.values(c));
  }
}

TEST_CASE("eigenvector phase convention") {
  std::mt19937_64 rng(7);
  const TensorOperator h({{"A", 6}}, oracle::random_hermitian(rng, 6));
  const auto d = herm_eig(h);
  for (int c = 0; c < 6; ++c) {
    Eigen::Index i = 0;
    d.vectors.col(c).cwiseAbs().maxCoeff(&i);
    CHECK(std::abs(d.vectors(i, c).imag()) < 1e-15);
    CHECK(d.vectors(i, c).real() > 0.0);
  }
}

TEST_CASE("hamiltonian exponential") {
  const auto z = TensorOperator::on("A", pauli::z());
  CHECK(max_abs(unitary_from_hamiltonian(z, 0.0) - TensorOperator::identity(z.space())) < 1e-15);
  const auto u = unitary_from_hamiltonian(z, std::numbers::pi);
  CHECK(max_abs(u + TensorOperator::identity(z.space())) < 1e-12);

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(unitary_from_hamiltonian(TensorOperator::on("A", bad), 1.0), NotHermitianError);

  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    const TensorOperator h({{"A", 4}}, oracle::random_hermitian(rng, 4));
    const double s = 3.0 * std::uniform_real_distribution<double>(-1, 1)(rng);
    const auto fwd = unitary_from_hamiltonian(h, s);
    CHECK(is_unitary(fwd.matrix()));
    CHECK(max_abs(fwd * unitary_from_hamiltonian(h, -s) - TensorOperator::identity(h.space())) < 1e-9);
    const oracle::Matrix ref = (Complex(0.0, -s) * h.matrix()).exp();
    CHECK((fwd.matrix() - ref).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("norms") {
  CHECK(trace_norm(TensorOperator::zero(SubsystemSpace{{"A", 3}})) == 0.0);
  std::mt19937_64 rng(9);
  CHECK(trace_norm(TensorOperator({{"A", 4}}, oracle::random_density(rng, 4))) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_norm(TensorOperator::on("A", pauli::z())) == doctest::Approx(2.0));
  CHECK(spectral_norm(TensorOperator::on("A", pauli::z())) == doctest::Approx(1.0));
  CHECK(frobenius_norm(TensorOperator::on("A", pauli::z())) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("label alignment") {
  std::mt19937_64 rng(10);
  const auto x = random_op(rng, SubsystemSpace{{"A", 2}, {"B", 3}}, false);
  const std::vector<std::string> order{"B", "A"};
  const auto r = x.reordered(order);
  CHECK(r.labels() == order);
  CHECK(max_abs(r.aligned_to(x.space()) - x) == 0.0);
  CHECK(std::abs(hs_inner(x, r) - hs_inner(x, x)) < 1e-12);
}

TEST_CASE("operator json round trip") {
  std::mt19937_64 rng(11);
  const auto x = random_op(rng, SubsystemSpace{{"A_I", 2}, {"A_O", 2}, {"B_I", 2}}, false);
  const auto j = to_json(x);
  CHECK(j["labels"][1][0] == "A_O");
  const auto back = operator_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.space() == x.space());
  CHECK(max_abs(back - x) == 0.0);
}
