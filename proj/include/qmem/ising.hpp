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

// System qubit (A_O in, B_I out) coupled to one environment qubit (E_I in,
// E_O out) through a transverse-field Ising interaction, starting from
// |phi+> on (A_I, E_I).

#pragma once

#include <utility>
#include <vector>

#include "qmem/process.hpp"
#include "qmem/tensor.hpp"

namespace qmem::ising {

struct ModelParams {
  double coupling = 0.0;  // J
  double field = 0.0;     // h
  double time = 1.0;      // t
};

/// H = -J sx sx - h (sz 1 + 1 sz) over (A_O, E_I).
TensorOperator hamiltonian(double coupling, double field);
/// exp(-i H t) over (A_O, E_I).
TensorOperator evolution(double coupling, double field, double time);
/// |phi+><phi+| over (A_I, E_I).
TensorOperator initial_state();

/// W = Tr_{E_O} (|phi+><phi+| * [[U]]).
ProcessMatrix process_matrix(double coupling, double field, double time);
inline ProcessMatrix process_matrix(const ModelParams& p) {
  return process_matrix(p.coupling, p.field, p.time);
}

/// Closed form for h = 0: equal mixture over the sx eigenstates |nu>,
/// nu = +1 then -1, of |nu><nu| (x) [[exp(i nu J sx t)]].
ClassicalMemoryProcess analytic_h0_terms(double coupling, double time);
ProcessMatrix analytic_h0(double coupling, double time);

/// Parameters (J, h) with 0 <= J <= j_max and 0 <= h <= h_max at which the
/// t = 1 evolution factorizes into system and environment unitaries:
/// J = pi k1, h = (pi/2) sqrt(k2^2 - k1^2), and the h = 0 points
/// J = pi/2 + pi k. Sorted lexicographically, without duplicates.
/// The J = 0 line is Markovian for every h and is not enumerated.
std::vector<std::pair<double, double>> markovian_points(double j_max, double h_max);

/// Operator Schmidt rank one across the two qubit factors: the second
/// singular value of the realignment is at most tol times the first.
bool factorizes(const TensorOperator& u, double tol = 1e-8);
/// Singular values of the 2|2 realignment, descending.
RealVector operator_schmidt_coefficients(const TensorOperator& u);

}  // namespace qmem::ising
