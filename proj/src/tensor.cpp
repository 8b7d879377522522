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

#include "qmem/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qmem {

namespace {

std::vector<int> strides_of(const SubsystemSpace& space) {
  std::vector<int> strides(space.size(), 1);
  for (int k = static_cast<int>(space.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * space.factors()[k + 1].dim;
  }
  return strides;
}

std::vector<bool> selection_mask(const SubsystemSpace& space, std::span<const std::string> labels) {
  std::vector<bool> mask(space.size(), false);
  for (const auto& label : labels) {
    auto idx = space.index_of(label);
    if (!idx) throw LabelError("unknown label '" + label + "'");
    mask[*idx] = true;
  }
  return mask;
}

// Splits every global index into the index over the selected factors and the
// index over the remaining ones, both in Kronecker order of the original list.
struct IndexSplit {
  std::vector<int> kept;
  std::vector<int> picked;
  int kept_dim = 1;
  int picked_dim = 1;
};

IndexSplit split_indices(const SubsystemSpace& space, const std::vector<bool>& mask) {
  IndexSplit split;
  const int n = space.total_dim();
  split.kept.resize(n);
  split.picked.resize(n);
  for (std::size_t k = 0; k < space.size(); ++k) {
    (mask[k] ? split.picked_dim : split.kept_dim) *= space.factors()[k].dim;
  }
  const auto strides = strides_of(space);
  for (int i = 0; i < n; ++i) {
    int kept = 0;
    int picked = 0;
    for (std::size_t k = 0; k < space.size(); ++k) {
      const int digit = (i / strides[k]) % space.factors()[k].dim;
      if (mask[k]) {
        picked = picked * space.factors()[k].dim + digit;
      } else {
        kept = kept * space.factors()[k].dim + digit;
      }
    }
    split.kept[i] = kept;
    split.picked[i] = picked;
  }
  return split;
}

void require_hermitian(const Matrix& m, const char* what) {
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > kHermitianTol) {
    throw NotHermitianError(std::string(what) + ": operator is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  }
}

}  // namespace

SubsystemSpace::SubsystemSpace(std::initializer_list<Factor> factors)
    : SubsystemSpace(std::vector<Factor>(factors)) {}

SubsystemSpace::SubsystemSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    if (f.dim < 1) throw LabelError("factor '" + f.label + "' has non-positive dimension");
    if (!seen.insert(f.label).second) throw LabelError("duplicate label '" + f.label + "'");
    total_dim_ *= f.dim;
  }
}

bool SubsystemSpace::contains(std::string_view label) const { return index_of(label).has_value(); }

std::optional<std::size_t> SubsystemSpace::index_of(std::string_view label) const {
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (factors_[k].label == label) return k;
  }
  return std::nullopt;
}

int SubsystemSpace::dim_of(std::string_view label) const {
  auto idx = index_of(label);
  if (!idx) throw LabelError("unknown label '" + std::string(label) + "'");
  return factors_[*idx].dim;
}

std::vector<std::string> SubsystemSpace::labels() const {
  std::vector<std::string> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.label);
  return out;
}

SubsystemSpace SubsystemSpace::restrict_to(std::span<const std::string> labels) const {
  const auto mask = selection_mask(*this, labels);
  std::vector<Factor> kept;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (mask[k]) kept.push_back(factors_[k]);
  }
  return SubsystemSpace(std::move(kept));
}

SubsystemSpace SubsystemSpace::without(std::span<const std::string> labels) const {
  const auto mask = selection_mask(*this, labels);
  std::vector<Factor> kept;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (!mask[k]) kept.push_back(factors_[k]);
  }
  return SubsystemSpace(std::move(kept));
}

TensorOperator::TensorOperator(SubsystemSpace space, Matrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  if (entries_.rows() != space_.total_dim() || entries_.cols() != space_.total_dim()) {
    throw LabelError("matrix side " + std::to_string(entries_.rows()) + "x" +
                     std::to_string(entries_.cols()) + " does not match space dimension " +
                     std::to_string(space_.total_dim()));
  }
}

TensorOperator TensorOperator::identity(SubsystemSpace space) {
  const int n = space.total_dim();
  return {std::move(space), Matrix::Identity(n, n)};
}

TensorOperator TensorOperator::zero(SubsystemSpace space) {
  const int n = space.total_dim();
  return {std::move(space), Matrix::Zero(n, n)};
}

TensorOperator TensorOperator::on(std::string label, Matrix entries) {
  const int d = static_cast<int>(entries.rows());
  return {SubsystemSpace{{std::move(label), d}}, std::move(entries)};
}

TensorOperator TensorOperator::projector(SubsystemSpace space, const Vector& v) {
  return {std::move(space), v * v.adjoint()};
}

TensorOperator TensorOperator::adjoint() const { return {space_, entries_.adjoint()}; }

double TensorOperator::hermiticity_defect() const {
  if (entries_.size() == 0) return 0.0;
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

bool TensorOperator::is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

TensorOperator TensorOperator::reordered(std::span<const std::string> order) const {
  if (order.size() != space_.size()) throw LabelError("reorder: label count mismatch");
  std::vector<Factor> factors;
  std::vector<std::size_t> source;
  for (const auto& label : order) {
    auto idx = space_.index_of(label);
    if (!idx) throw LabelError("reorder: unknown label '" + label + "'");
    factors.push_back(space_.factors()[*idx]);
    source.push_back(*idx);
  }
  SubsystemSpace target(std::move(factors));
  if (target == space_) return *this;

  // map[new index] = old index
  const int n = space_.total_dim();
  const auto old_strides = strides_of(space_);
  const auto new_strides = strides_of(target);
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) {
    int old = 0;
    for (std::size_t k = 0; k < target.size(); ++k) {
      const int digit = (i / new_strides[k]) % target.factors()[k].dim;
      old += digit * old_strides[source[k]];
    }
    map[i] = old;
  }
  Matrix out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out(i, j) = entries_(map[i], map[j]);
  }
  return {std::move(target), std::move(out)};
}

TensorOperator TensorOperator::aligned_to(const SubsystemSpace& target) const {
  if (target == space_) return *this;
  if (target.size() != space_.size()) throw LabelError("align: label sets differ");
  for (const auto& f : target.factors()) {
    auto idx = space_.index_of(f.label);
    if (!idx) throw LabelError("align: label sets differ ('" + f.label + "')");
    if (space_.factors()[*idx].dim != f.dim) {
      throw LabelError("align: dimension mismatch on '" + f.label + "'");
    }
  }
  const auto order = target.labels();
  return reordered(order);
}

TensorOperator& TensorOperator::operator+=(const TensorOperator& other) {
  entries_ += other.aligned_to(space_).entries_;
  return *this;
}

TensorOperator& TensorOperator::operator-=(const TensorOperator& other) {
  entries_ -= other.aligned_to(space_).entries_;
  return *this;
}

TensorOperator& TensorOperator::operator*=(Complex s) {
  entries_ *= s;
  return *this;
}

TensorOperator operator*(const TensorOperator& a, const TensorOperator& b) {
  return {a.space_, a.entries_ * b.aligned_to(a.space_).entries_};
}

namespace pauli {
Matrix identity() { return Matrix::Identity(2, 2); }
Matrix x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
Matrix y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
Matrix z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
}  // namespace pauli

TensorOperator kron(const TensorOperator& a, const TensorOperator& b) {
  std::vector<Factor> factors = a.space().factors();
  for (const auto& f : b.space().factors()) {
    if (a.space().contains(f.label)) throw LabelError("kron: duplicate label '" + f.label + "'");
    factors.push_back(f);
  }
  const int na = a.dim();
  const int nb = b.dim();
  Matrix out(na * nb, na * nb);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  return {SubsystemSpace(std::move(factors)), std::move(out)};
}

TensorOperator partial_trace(const TensorOperator& x, std::span<const std::string> labels) {
  const auto mask = selection_mask(x.space(), labels);
  const auto split = split_indices(x.space(), mask);
  const int n = x.dim();
  Matrix out = Matrix::Zero(split.kept_dim, split.kept_dim);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (split.picked[i] == split.picked[j]) out(split.kept[i], split.kept[j]) += x.matrix()(i, j);
    }
  }
  return {x.space().without(labels), std::move(out)};
}

TensorOperator partial_transpose(const TensorOperator& x, std::span<const std::string> labels) {
  const auto mask = selection_mask(x.space(), labels);
  const auto& space = x.space();
  const auto strides = strides_of(space);
  const int n = x.dim();
  // Digits of the transposed factors are exchanged between row and column.
  std::vector<int> picked_part(n, 0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < space.size(); ++k) {
      if (mask[k]) picked_part[i] += ((i / strides[k]) % space.factors()[k].dim) * strides[k];
    }
  }
  Matrix out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int src_i = i - picked_part[i] + picked_part[j];
      const int src_j = j - picked_part[j] + picked_part[i];
      out(i, j) = x.matrix()(src_i, src_j);
    }
  }
  return {space, std::move(out)};
}

TensorOperator trace_and_replace(const TensorOperator& x, std::span<const std::string> labels) {
  const auto mask = selection_mask(x.space(), labels);
  const auto split = split_indices(x.space(), mask);
  const auto reduced = partial_trace(x, labels);
  const double inv_d = 1.0 / split.picked_dim;
  const int n = x.dim();
  Matrix out = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (split.picked[i] == split.picked[j]) {
        out(i, j) = reduced.matrix()(split.kept[i], split.kept[j]) * inv_d;
      }
    }
  }
  return {x.space(), std::move(out)};
}

Complex hs_inner(const TensorOperator& a, const TensorOperator& b) {
  const auto bb = b.aligned_to(a.space());
  // Tr(AB) = sum_ij A_ij B_ji
  return (a.matrix().array() * bb.matrix().transpose().array()).sum();
}

EigenDecomposition herm_eig(const Matrix& h) {
  require_hermitian(h, "herm_eig");
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("herm_eig: eigensolver failed");
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
    Eigen::Index arg = 0;
    out.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    const Complex pivot = out.vectors(arg, k);
    if (std::abs(pivot) > 0) out.vectors.col(k) *= std::conj(pivot) / std::abs(pivot);
  }
  return out;
}

EigenDecomposition herm_eig(const TensorOperator& h) { return herm_eig(h.matrix()); }

double min_eigenvalue(const TensorOperator& h) {
  require_hermitian(h.matrix(), "min_eigenvalue");
  const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

TensorOperator unitary_from_hamiltonian(const TensorOperator& h, double s) {
  const auto eig = herm_eig(h);
  Vector phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -s * eig.values(k)));
  }
  return {h.space(), eig.vectors * phases.asDiagonal() * eig.vectors.adjoint()};
}

double trace_norm(const TensorOperator& x) {
  if (x.dim() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x.matrix());
  return svd.singularValues().sum();
}

double frobenius_norm(const TensorOperator& x) { return x.matrix().norm(); }

double spectral_norm(const TensorOperator& x) {
  if (x.dim() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(x.matrix());
  return svd.singularValues()(0);
}

double max_abs(const TensorOperator& x) {
  return x.dim() == 0 ? 0.0 : x.matrix().cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

nlohmann::json to_json(const TensorOperator& x) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& f : x.space().factors()) labels.push_back({f.label, f.dim});
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int i = 0; i < x.dim(); ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (int j = 0; j < x.dim(); ++j) {
      re_row.push_back(x.matrix()(i, j).real());
      im_row.push_back(x.matrix()(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return {{"labels", labels}, {"re", re}, {"im", im}};
}

TensorOperator operator_from_json(const nlohmann::json& j) {
  std::vector<Factor> factors;
  for (const auto& entry : j.at("labels")) {
    factors.push_back({entry.at(0).get<std::string>(), entry.at(1).get<int>()});
  }
  SubsystemSpace space(std::move(factors));
  const int n = space.total_dim();
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<int>(re.size()) != n || static_cast<int>(im.size()) != n) {
    throw LabelError("operator json: row count does not match labels");
  }
  Matrix m(n, n);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(re[r].size()) != n || static_cast<int>(im[r].size()) != n) {
      throw LabelError("operator json: ragged row");
    }
    for (int c = 0; c < n; ++c) m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
  }
  return {std::move(space), std::move(m)};
}

}  // namespace qmem
