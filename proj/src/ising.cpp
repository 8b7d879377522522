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

#include "qmem/ising.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmem::ising {

namespace {

const std::vector<std::string> kInteractionIn{kAO, kEI};
const std::vector<std::string> kInteractionOut{kBI, kEO};
const std::vector<std::string> kEnvOut{kEO};

TensorOperator two_qubit(const Matrix& a, const Matrix& b) {
  return kron(TensorOperator::on(kAO, a), TensorOperator::on(kEI, b));
}

}  // namespace

TensorOperator hamiltonian(double coupling, double field) {
  const Matrix one = pauli::identity();
  TensorOperator h = two_qubit(pauli::x(), pauli::x()) * Complex(-coupling);
  h -= (two_qubit(pauli::z(), one) + two_qubit(one, pauli::z())) * Complex(field);
  return h;
}

TensorOperator evolution(double coupling, double field, double time) {
  return unitary_from_hamiltonian(hamiltonian(coupling, field), time);
}

TensorOperator initial_state() {
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  return TensorOperator::projector(SubsystemSpace{{kAI, 2}, {kEI, 2}}, phi);
}

ProcessMatrix process_matrix(double coupling, double field, double time) {
  const auto u = evolution(coupling, field, time);
  const auto interaction = choi_of_unitary(u, kInteractionIn, kInteractionOut);
  const auto comb = link_product(initial_state(), interaction);
  auto w = partial_trace(comb, kEnvOut);
  // Hermitian part only; removes round-off from the exponential.
  w = TensorOperator(w.space(), 0.5 * (w.matrix() + w.matrix().adjoint()));
  return ProcessMatrix(w);
}

ClassicalMemoryProcess analytic_h0_terms(double coupling, double time) {
  const std::vector<std::string> in{kAO};
  const std::vector<std::string> out{kBI};
  std::vector<ClassicalMemoryTerm> terms;
  for (int nu : {+1, -1}) {
    Vector eigenstate(2);
    eigenstate << 1.0 / std::sqrt(2.0), nu / std::sqrt(2.0);
    // exp(i nu J sx t) = cos(J t) 1 + i nu sin(J t) sx
    const double angle = coupling * time;
    const Matrix u = std::cos(angle) * pauli::identity() +
                     Complex(0.0, nu * std::sin(angle)) * pauli::x();
    const auto choi = choi_of_unitary(TensorOperator::on(kAO, u), in, out);
    terms.push_back({0.5, TensorOperator::projector(SubsystemSpace{{kAI, 2}}, eigenstate),
                     ChannelChoi(choi, kAO, kBI)});
  }
  return ClassicalMemoryProcess(std::move(terms));
}

ProcessMatrix analytic_h0(double coupling, double time) {
  return classical_memory_process(analytic_h0_terms(coupling, time));
}

std::vector<std::pair<double, double>> markovian_points(double j_max, double h_max) {
  using std::numbers::pi;
  std::vector<std::pair<double, double>> points;
  if (!(j_max >= 0.0) || !(h_max >= 0.0)) return points;
  const int k1_max = static_cast<int>(std::floor(j_max / pi));
  for (int k1 = 0; k1 <= k1_max; ++k1) {
    for (int k2 = k1;; ++k2) {
      const double h = 0.5 * pi * std::sqrt(static_cast<double>(k2 * k2 - k1 * k1));
      if (h > h_max) break;
      points.emplace_back(pi * k1, h);
    }
  }
  for (int k = 0; 0.5 * pi + pi * k <= j_max; ++k) points.emplace_back(0.5 * pi + pi * k, 0.0);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

RealVector operator_schmidt_coefficients(const TensorOperator& u) {
  if (u.space().size() != 2 || u.dim() != 4) {
    throw LabelError("operator_schmidt_coefficients: expected a two-qubit operator");
  }
  // R[(i1 j1), (i2 j2)] = U[(i1 i2), (j1 j2)]
  Matrix realigned(4, 4);
  for (int i1 = 0; i1 < 2; ++i1) {
    for (int i2 = 0; i2 < 2; ++i2) {
      for (int j1 = 0; j1 < 2; ++j1) {
        for (int j2 = 0; j2 < 2; ++j2) {
          realigned(2 * i1 + j1, 2 * i2 + j2) = u.matrix()(2 * i1 + i2, 2 * j1 + j2);
        }
      }
    }
  }
  Eigen::JacobiSVD<Matrix> svd(realigned);
  return svd.singularValues();
}

bool factorizes(const TensorOperator& u, double tol) {
  if (!is_unitary(u.matrix())) throw std::invalid_argument("factorizes: operator is not unitary");
  const auto s = operator_schmidt_coefficients(u);
  return s(1) <= tol * s(0);
}

}  // namespace qmem::ising
