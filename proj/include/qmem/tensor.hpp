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

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace qmem {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised for label mismatches, unknown labels and dimension conflicts.
class LabelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation requires a Hermitian (or unitary) operand.
class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr double kHermitianTol = 1e-10;
constexpr double kEigenResidualTol = 1e-9;

struct Factor {
  std::string label;
  int dim = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered list of labeled tensor factors. The global basis is the Kronecker
/// order of the list, computational basis per factor.
class SubsystemSpace {
 public:
  SubsystemSpace() = default;
  SubsystemSpace(std::initializer_list<Factor> factors);
  explicit SubsystemSpace(std::vector<Factor> factors);

  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  int total_dim() const { return total_dim_; }

  bool contains(std::string_view label) const;
  std::optional<std::size_t> index_of(std::string_view label) const;
  int dim_of(std::string_view label) const;
  std::vector<std::string> labels() const;

  /// Sub-space made of the listed labels, in this space's order.
  SubsystemSpace restrict_to(std::span<const std::string> labels) const;
  /// Sub-space without the listed labels.
  SubsystemSpace without(std::span<const std::string> labels) const;

  friend bool operator==(const SubsystemSpace&, const SubsystemSpace&) = default;

 private:
  std::vector<Factor> factors_;
  int total_dim_ = 1;
};

/// Dense complex square matrix over a labeled tensor-product space.
class TensorOperator {
 public:
  TensorOperator() = default;
  TensorOperator(SubsystemSpace space, Matrix entries);

  static TensorOperator identity(SubsystemSpace space);
  static TensorOperator zero(SubsystemSpace space);
  /// Single-factor operator.
  static TensorOperator on(std::string label, Matrix entries);
  /// |v><v| on the given space.
  static TensorOperator projector(SubsystemSpace space, const Vector& v);

  const SubsystemSpace& space() const { return space_; }
  const Matrix& matrix() const { return entries_; }
  int dim() const { return space_.total_dim(); }
  std::vector<std::string> labels() const { return space_.labels(); }

  Complex trace() const { return entries_.trace(); }
  TensorOperator adjoint() const;
  bool is_hermitian(double tol = kHermitianTol) const;
  /// max |x - x^dagger| entry.
  double hermiticity_defect() const;

  /// Same operator expressed over `order`, a permutation of this space's labels.
  TensorOperator reordered(std::span<const std::string> order) const;
  /// Same operator expressed in the factor order of `target` (same label set).
  TensorOperator aligned_to(const SubsystemSpace& target) const;

  TensorOperator& operator+=(const TensorOperator& other);
  TensorOperator& operator-=(const TensorOperator& other);
  TensorOperator& operator*=(Complex s);

  friend TensorOperator operator+(TensorOperator a, const TensorOperator& b) { return a += b; }
  friend TensorOperator operator-(TensorOperator a, const TensorOperator& b) { return a -= b; }
  friend TensorOperator operator*(TensorOperator a, Complex s) { return a *= s; }
  friend TensorOperator operator*(Complex s, TensorOperator a) { return a *= s; }
  /// Operator product; the right factor is aligned to the left factor's order.
  friend TensorOperator operator*(const TensorOperator& a, const TensorOperator& b);

 private:
  SubsystemSpace space_;
  Matrix entries_;
};

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

TensorOperator kron(const TensorOperator& a, const TensorOperator& b);
TensorOperator partial_trace(const TensorOperator& x, std::span<const std::string> labels);
TensorOperator partial_transpose(const TensorOperator& x, std::span<const std::string> labels);
/// (Tr_labels x) (x) 1/d_labels with the identity put back at the original positions.
TensorOperator trace_and_replace(const TensorOperator& x, std::span<const std::string> labels);

/// Tr(a b) with label alignment.
Complex hs_inner(const TensorOperator& a, const TensorOperator& b);

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

/// Hermitian eigendecomposition. Each eigenvector's largest-magnitude entry is
/// made real positive so that results are reproducible.
EigenDecomposition herm_eig(const TensorOperator& h);
EigenDecomposition herm_eig(const Matrix& h);
double min_eigenvalue(const TensorOperator& h);

/// exp(-i s h) for Hermitian h.
TensorOperator unitary_from_hamiltonian(const TensorOperator& h, double s);

double trace_norm(const TensorOperator& x);
double frobenius_norm(const TensorOperator& x);
double spectral_norm(const TensorOperator& x);
double max_abs(const TensorOperator& x);
bool is_unitary(const Matrix& u, double tol = kEigenResidualTol);

// {labels: [[name, dim]...], re: [[...]], im: [[...]]}, row-major.
nlohmann::json to_json(const TensorOperator& x);
TensorOperator operator_from_json(const nlohmann::json& j);

}  // namespace qmem
