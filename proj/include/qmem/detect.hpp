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

// Quantum-memory certification for two-station processes. W is read as a
// bipartite state across A = A_I and B = A_O B_I; a classical-memory process is
// separable across that cut, so any entanglement test becomes a memory test.
// Only non-separability can be certified: below tolerance the verdict is
// "inconclusive", never "classical".

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qmem/process.hpp"
#include "qmem/sdp.hpp"
#include "qmem/tensor.hpp"

namespace qmem {

/// Relative to ||W||_2.
constexpr double kDetectTol = 1e-9;

enum class Method { ppt, ppt_sdp, dps2 };
enum class Verdict { quantum_memory, inconclusive };

std::string to_string(Method m);
std::string to_string(Verdict v);
Method method_from_string(const std::string& s);

struct SolverDiagnostics {
  sdp::Status status = sdp::Status::numerical_failure;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  /// Optimal value of the maximization form, where there is one.
  double optimum = 0.0;
  bool verified = false;
  std::string verify_summary;
};

struct WitnessReport {
  Method method = Method::ppt;
  Verdict verdict = Verdict::inconclusive;
  /// Tr(Z W) for the returned witness, or lambda_min for an inconclusive PPT test.
  double value = 0.0;
  std::optional<TensorOperator> witness;
  std::optional<SolverDiagnostics> diagnostics;
};

class NoCertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lambda_min(W^{T_{A_I}}).
double ppt_min_eig(const ProcessMatrix& w);
double ppt_min_eig(const TensorOperator& w);

/// Z = (|psi_min><psi_min|)^{T_{A_I}} when W^{T_{A_I}} has a negative eigenvalue.
WitnessReport ppt_witness(const ProcessMatrix& w);
WitnessReport ppt_witness(const TensorOperator& w);

struct WitnessConstraints {
  /// PZP = Z with P swapping A_I and A_O.
  bool swap_symmetric = false;
  /// Tr(A Z) = b.
  std::vector<std::pair<TensorOperator, double>> linear;
};

/// maximize -Tr(Z W^{T_{A_I}}) over Z >= 0, Tr Z = 1 (plus restrictions); the
/// witness is Z^{T_{A_I}}.
WitnessReport witness_sdp(const ProcessMatrix& w, const WitnessConstraints& constraints = {});
WitnessReport witness_sdp(const TensorOperator& w, const WitnessConstraints& constraints = {});
sdp::Problem witness_sdp_problem(const TensorOperator& w, const WitnessConstraints& constraints = {});

/// Level-2 symmetric-extension feasibility problem for rho = W / Tr W on
/// A (x) B (x) A': three blocks (rho~, rho~^{T_{A'}}, rho~^{T_B}), linked by
/// equalities, with Tr_{A'} rho~ = rho and swap symmetry between A and A'.
struct Dps2Problem {
  sdp::Problem problem;
  /// Constraint rows [0, marginal_count) fix Tr_{A'} rho~ = rho; row k pairs
  /// with marginal_basis[k] on (A_I, A_O, B_I).
  std::size_t marginal_count = 0;
  std::vector<Matrix> marginal_basis;
  SubsystemSpace state_space;
};

Dps2Problem dps2_problem(const TensorOperator& w);

/// Feasible -> inconclusive. Infeasible with a verified certificate ->
/// quantum_memory, with the extracted witness attached.
WitnessReport dps2_feasibility(const ProcessMatrix& w);
WitnessReport dps2_feasibility(const TensorOperator& w);
/// Witness from the infeasibility certificate; throws NoCertificateError on
/// feasible input.
WitnessReport dps2_witness(const ProcessMatrix& w);

/// Maps a Farkas certificate of the level-2 problem back to a Hermitian
/// operator Z on (A_I, A_O, B_I) with Tr(Z rho) = -1.
TensorOperator dps2_certificate_witness(const Dps2Problem& p, const sdp::Result& r);

struct WitnessValidation {
  int samples = 0;
  double min_value = 0.0;
  std::vector<int> failures;  // sample indices with Tr(Z W_cl) < -tol
  /// max |Tr(L(Z) W_cl) - Tr(Z W_cl)| over the samples.
  double l_projection_gap = 0.0;
  bool passed() const { return failures.empty(); }
};

/// Evaluates Z on seeded random classical-memory processes.
WitnessValidation validate_witness(const TensorOperator& z, int n_samples, std::uint64_t seed,
                                   double tol = 1e-9);
/// Same on a prepared sample set.
WitnessValidation validate_witness(const TensorOperator& z, const std::vector<TensorOperator>& samples,
                                   double tol = 1e-9);
/// The processes validate_witness(z, n_samples, seed) draws: 1 to 4 terms each.
std::vector<TensorOperator> classical_memory_samples(int n_samples, std::uint64_t seed,
                                                     const ProcessDims& dims = {});

struct PauliTerm {
  std::string ops;  // one of I, X, Y, Z per factor
  double coefficient = 0.0;
};

/// Z = sum coefficient * sigma_ops, for all-qubit spaces.
std::vector<PauliTerm> pauli_decomposition(const TensorOperator& z, double cutoff = 1e-12);

/// Witness file contents: operator scaled to ||Z||_2 = 1 and the value
/// re-evaluated for the scaled operator.
nlohmann::json witness_to_json(const WitnessReport& report, const TensorOperator& w);

}  // namespace qmem
