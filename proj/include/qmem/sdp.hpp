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

// Small dense SDP solver for Hermitian block-diagonal variables.
//
//   minimize    Tr(C X)
//   subject to  Tr(A_k X) = b_k,   k = 1..m
//               X = X_1 (+) ... (+) X_p  >= 0
//
// with dual  maximize b^T y  subject to  S = C - sum_k y_k A_k >= 0.
//
// Complex Hermitian blocks are embedded as real symmetric blocks of twice the
// side, H -> [[Re H, -Im H], [Im H, Re H]]. The core is a primal-dual
// path-following method on the homogeneous self-dual embedding (HKM direction,
// Mehrotra predictor-corrector), so infeasible problems terminate with a Farkas
// certificate instead of diverging.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmem/tensor.hpp"

namespace qmem::sdp {

/// One complex matrix per block. An empty (0x0) entry stands for a zero block.
using BlockMatrix = std::vector<Matrix>;

struct Constraint {
  BlockMatrix lhs;
  double rhs = 0.0;
};

struct Problem {
  std::vector<int> blocks;
  /// Absent means feasibility mode: minimize 0.
  std::optional<BlockMatrix> objective;
  std::vector<Constraint> constraints;
};

enum class Status {
  optimal,
  /// Primal infeasible; `y` is a Farkas certificate: b^T y = 1 and
  /// S = -sum_k y_k A_k >= 0.
  infeasible,
  /// Dual infeasible (primal unbounded); `x` is an improving ray.
  unbounded,
  max_iterations,
  numerical_failure,
};

std::string to_string(Status s);

struct Result {
  Status status = Status::numerical_failure;
  BlockMatrix x;  // empty when absent
  std::vector<double> y;
  BlockMatrix s;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
};

struct Options {
  int max_iterations = 200;
  double step_fraction = 0.98;
  /// Relative residual / gap target for the optimal status.
  double tolerance = 1e-9;
  /// Certificate residual target (relative to b^T y) for infeasibility.
  double infeasibility_tolerance = 1e-9;
  /// tau/kappa below which the iterate is treated as converging to a ray.
  double ray_ratio = 1e-8;
  /// Accept the current iterate as optimal when a factorization breaks down
  /// with all three measures below this.
  double stall_tolerance = 1e-8;
};

/// Rejects non-Hermitian data and inconsistent block shapes.
void validate(const Problem& p);

Result solve(const Problem& p, const Options& options = {});

struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool passed() const;
  std::string summary() const;
};

/// Recomputes residuals and certificate inequalities from the problem data.
VerifyReport verify(const Problem& p, const Result& r, double residual_tol = 1e-8,
                    double gap_tol = 1e-7);

// Block-diagonal helpers shared with callers that assemble problems.
double block_inner(const BlockMatrix& a, const BlockMatrix& x);
BlockMatrix block_zero(const std::vector<int>& blocks);

nlohmann::json to_json(const Problem& p);
nlohmann::json to_json(const Result& r);

}  // namespace qmem::sdp
