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

#include "qmem/process.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace qmem {

namespace {

const std::vector<std::string> kBOnly{kBI};
const std::vector<std::string> kAOB{kAO, kBI};
const std::vector<std::string> kAOnly{kAI};
const std::vector<std::string> kCanonical{kAI, kAO, kBI};

bool is_density(const TensorOperator& rho, double tol = kProcessTol) {
  if (!rho.is_hermitian()) return false;
  if (std::abs(rho.trace() - 1.0) > tol) return false;
  return min_eigenvalue(rho) >= -tol;
}

// |1>> = sum_j |j>|j> pushed through (1 (x) x).
Vector vectorized_choi(const Matrix& x) {
  const auto d = x.cols();
  const auto d_out = x.rows();
  Vector v = Vector::Zero(d * d_out);
  for (Eigen::Index j = 0; j < d; ++j) v.segment(j * d_out, d_out) = x.col(j);
  return v;
}

Matrix ginibre(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

SubsystemSpace process_space(const ProcessDims& dims) {
  return SubsystemSpace{{kAI, dims.a_in}, {kAO, dims.a_out}, {kBI, dims.b_in}};
}

CombReport validate_comb(const TensorOperator& w) {
  for (const auto& label : kCanonical) {
    if (!w.space().contains(label)) throw LabelError("validate_comb: missing label " + label);
  }
  if (w.space().size() != 3) throw LabelError("validate_comb: expected labels A_I, A_O, B_I");
  CombReport r;
  r.hermiticity = w.hermiticity_defect();
  const TensorOperator herm((w + w.adjoint()) * Complex(0.5));
  Eigen::SelfAdjointEigenSolver<Matrix> eig(herm.matrix(), Eigen::EigenvaluesOnly);
  r.min_eigenvalue = eig.eigenvalues()(0);
  const double norm2 = eig.eigenvalues().cwiseAbs().maxCoeff();
  r.psd_tolerance = kProcessTol * (1.0 + norm2);
  r.trace_error = std::abs(w.trace() - static_cast<double>(w.space().dim_of(kAO)));
  r.comb_violation = max_abs(trace_and_replace(w, kBOnly) - trace_and_replace(w, kAOB));
  return r;
}

ProcessMatrix::ProcessMatrix(const TensorOperator& op) {
  const auto report = validate_comb(op);
  if (!report.valid()) {
    throw InvalidProcessError(
        "not a valid process matrix: hermiticity " + std::to_string(report.hermiticity) +
        ", min eigenvalue " + std::to_string(report.min_eigenvalue) + ", trace error " +
        std::to_string(report.trace_error) + ", comb violation " +
        std::to_string(report.comb_violation));
  }
  op_ = op.reordered(kCanonical);
}

ProcessDims ProcessMatrix::dims() const {
  return {op_.space().dim_of(kAI), op_.space().dim_of(kAO), op_.space().dim_of(kBI)};
}

ChannelChoi::ChannelChoi(const TensorOperator& op, std::string in_label, std::string out_label)
    : in_(std::move(in_label)), out_(std::move(out_label)) {
  if (op.space().size() != 2 || !op.space().contains(in_) || !op.space().contains(out_)) {
    throw LabelError("ChannelChoi: operator must live on (" + in_ + ", " + out_ + ")");
  }
  op_ = op.reordered(std::vector<std::string>{in_, out_});
  if (!op_.is_hermitian(kProcessTol) || min_eigenvalue(op_) < -kProcessTol) {
    throw InvalidProcessError("ChannelChoi: not positive semidefinite");
  }
  const std::vector<std::string> out_only{out_};
  const auto marginal = partial_trace(op_, out_only);
  const int d_in = op_.space().dim_of(in_);
  if ((marginal.matrix() - Matrix::Identity(d_in, d_in)).cwiseAbs().maxCoeff() > kProcessTol) {
    throw InvalidProcessError("ChannelChoi: not trace preserving");
  }
}

InstrumentElement::InstrumentElement(const TensorOperator& op) {
  const auto& space = op.space();
  const bool station_a = space.size() == 2 && space.contains(kAI) && space.contains(kAO);
  const bool station_b = space.size() == 1 && space.contains(kBI);
  if (!station_a && !station_b) {
    throw LabelError("InstrumentElement: expected labels (A_I, A_O) or (B_I)");
  }
  op_ = station_a ? op.reordered(std::vector<std::string>{kAI, kAO}) : op;
  if (!op_.is_hermitian(kProcessTol) || min_eigenvalue(op_) < -kProcessTol) {
    throw InvalidProcessError("InstrumentElement: not positive semidefinite");
  }
}

InstrumentElement InstrumentElement::from_kraus(const Matrix& kraus, const std::string& in_label,
                                                const std::string& out_label) {
  const Vector v = vectorized_choi(kraus).conjugate();
  SubsystemSpace space{{in_label, static_cast<int>(kraus.cols())},
                       {out_label, static_cast<int>(kraus.rows())}};
  return InstrumentElement(TensorOperator(std::move(space), v * v.adjoint()));
}

InstrumentElement InstrumentElement::effect(const Matrix& e, const std::string& label) {
  return InstrumentElement(TensorOperator::on(label, e));
}

bool is_complete_instrument(std::span<const InstrumentElement> elements, double tol) {
  if (elements.empty()) return false;
  TensorOperator total = elements.front().op();
  for (std::size_t k = 1; k < elements.size(); ++k) total += elements[k].op();
  if (total.space().size() == 2) {
    const std::vector<std::string> out_only{kAO};
    total = partial_trace(total, out_only);
  }
  const int d = total.dim();
  return (total.matrix() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

ClassicalMemoryProcess::ClassicalMemoryProcess(std::vector<ClassicalMemoryTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidProcessError("classical memory process needs at least one term");
  double total = 0.0;
  for (const auto& t : terms_) {
    if (!(t.weight >= 0.0)) throw InvalidProcessError("negative classical-memory weight");
    total += t.weight;
    if (t.state.space().size() != 1 || !t.state.space().contains(kAI)) {
      throw LabelError("classical-memory state must live on A_I");
    }
    if (!is_density(t.state)) throw InvalidProcessError("classical-memory state is not a density operator");
    if (t.channel.in_label() != kAO || t.channel.out_label() != kBI) {
      throw LabelError("classical-memory channel must map A_O to B_I");
    }
  }
  if (std::abs(total - 1.0) > kProcessTol) {
    throw InvalidProcessError("classical-memory weights do not sum to one");
  }
}

TensorOperator choi_of_operator(const TensorOperator& x, std::span<const std::string> in_labels,
                                std::span<const std::string> out_labels) {
  const auto& factors = x.space().factors();
  if (in_labels.size() != factors.size() || out_labels.size() != factors.size()) {
    throw LabelError("choi: label count must match the operator's factor count");
  }
  std::vector<Factor> all;
  for (std::size_t k = 0; k < factors.size(); ++k) all.push_back({in_labels[k], factors[k].dim});
  for (std::size_t k = 0; k < factors.size(); ++k) all.push_back({out_labels[k], factors[k].dim});
  const Vector v = vectorized_choi(x.matrix());
  return {SubsystemSpace(std::move(all)), v * v.adjoint()};
}

TensorOperator choi_of_unitary(const TensorOperator& u, std::span<const std::string> in_labels,
                               std::span<const std::string> out_labels) {
  if (!is_unitary(u.matrix())) throw std::invalid_argument("choi_of_unitary: operator is not unitary");
  return choi_of_operator(u, in_labels, out_labels);
}

TensorOperator link_product(const TensorOperator& x, const TensorOperator& y) {
  std::vector<std::string> common;
  std::vector<std::string> x_only;
  std::vector<std::string> y_only;
  for (const auto& f : x.space().factors()) {
    if (auto idx = y.space().index_of(f.label)) {
      if (y.space().factors()[*idx].dim != f.dim) {
        throw LabelError("link_product: dimension mismatch on shared label '" + f.label + "'");
      }
      common.push_back(f.label);
    } else {
      x_only.push_back(f.label);
    }
  }
  for (const auto& f : y.space().factors()) {
    if (!x.space().contains(f.label)) y_only.push_back(f.label);
  }

  const TensorOperator xt = partial_transpose(x, common);
  const TensorOperator lhs = y_only.empty()
                                 ? xt
                                 : kron(xt, TensorOperator::identity(y.space().restrict_to(y_only)));
  const TensorOperator rhs = x_only.empty()
                                 ? y
                                 : kron(TensorOperator::identity(x.space().restrict_to(x_only)), y);
  const TensorOperator product = lhs * rhs;
  TensorOperator out = common.empty() ? product : partial_trace(product, common);
  std::vector<std::string> order = x_only;
  order.insert(order.end(), y_only.begin(), y_only.end());
  return order.empty() ? out : out.reordered(order);
}

double prob_rule(const ProcessMatrix& w, const InstrumentElement& a, const InstrumentElement& b) {
  if (a.op().space().size() != 2 || b.op().space().size() != 1) {
    throw LabelError("prob_rule: expected an A element over (A_I, A_O) and a B element over (B_I)");
  }
  const auto joint = kron(a.op(), b.op());
  if (!(joint.space() == w.op().space())) {
    for (const auto& f : w.op().space().factors()) {
      if (!joint.space().contains(f.label) || joint.space().dim_of(f.label) != f.dim) {
        throw LabelError("prob_rule: incompatible dimensions on '" + f.label + "'");
      }
    }
  }
  return hs_inner(w.op(), joint).real();
}

ProcessMatrix markovian_process(const TensorOperator& rho, const ChannelChoi& channel) {
  if (rho.space().size() != 1 || !rho.space().contains(kAI)) {
    throw LabelError("markovian_process: state must live on A_I");
  }
  if (!is_density(rho)) throw InvalidProcessError("markovian_process: invalid state");
  if (channel.in_label() != kAO || channel.out_label() != kBI) {
    throw LabelError("markovian_process: channel must map A_O to B_I");
  }
  return ProcessMatrix(kron(rho, channel.op()));
}

TensorOperator classical_memory_operator(const ClassicalMemoryProcess& c) {
  const auto& first = c.terms().front();
  TensorOperator total = TensorOperator::zero(kron(first.state, first.channel.op()).space());
  for (const auto& t : c.terms()) total += kron(t.state, t.channel.op()) * Complex(t.weight);
  return total;
}

ProcessMatrix classical_memory_process(const ClassicalMemoryProcess& c) {
  return ProcessMatrix(classical_memory_operator(c));
}

ClassicalMemoryProcess random_classical_memory(std::uint64_t seed, int n_terms, const ProcessDims& dims) {
  if (n_terms < 1) throw std::invalid_argument("random_classical_memory: n_terms must be >= 1");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> weights(static_cast<std::size_t>(n_terms));
  double total = 0.0;
  for (auto& w : weights) {
    w = expo(rng);
    total += w;
  }
  const int d_env = dims.a_out * dims.b_in;
  const std::vector<std::string> env_only{"env"};
  std::vector<ClassicalMemoryTerm> terms;
  for (int k = 0; k < n_terms; ++k) {
    const Matrix g = ginibre(rng, dims.a_in, dims.a_in);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    // Haar isometry A_O -> B_I (x) env from the Q factor of a Gaussian matrix.
    const Matrix z = ginibre(rng, dims.b_in * d_env, dims.a_out);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(dims.b_in * d_env, dims.a_out);
    const Matrix r = qr.matrixQR().topRows(dims.a_out).triangularView<Eigen::Upper>();
    for (int j = 0; j < dims.a_out; ++j) {
      const Complex diag = r(j, j);
      if (std::abs(diag) > 0) q.col(j) *= diag / std::abs(diag);
    }
    const Vector v = vectorized_choi(q);
    TensorOperator dilated(SubsystemSpace{{kAO, dims.a_out}, {kBI, dims.b_in}, {"env", d_env}},
                           v * v.adjoint());
    auto choi = partial_trace(dilated, env_only);
    choi = TensorOperator(choi.space(), 0.5 * (choi.matrix() + choi.matrix().adjoint()));
    terms.push_back({weights[static_cast<std::size_t>(k)] / total, TensorOperator::on(kAI, rho),
                     ChannelChoi(choi, kAO, kBI)});
  }
  return ClassicalMemoryProcess(std::move(terms));
}

TensorOperator project_L(const TensorOperator& x) {
  if (!x.is_hermitian()) throw NotHermitianError("project_L: operator is not Hermitian");
  return x - trace_and_replace(x, kBOnly) + trace_and_replace(x, kAOB);
}

ProcessMatrix marginal_markovian(const ProcessMatrix& w) {
  const double d_out = w.dims().a_out;
  const auto rho = partial_trace(w.op(), kAOB) * Complex(1.0 / d_out);
  const auto channel = partial_trace(w.op(), kAOnly);
  return ProcessMatrix(kron(rho, channel));
}

double markov_distance(const ProcessMatrix& w, Norm norm) {
  const auto diff = w.op() - marginal_markovian(w).op();
  return norm == Norm::trace ? trace_norm(diff) : frobenius_norm(diff);
}

}  // namespace qmem
