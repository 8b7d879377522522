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

#include "qmem/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qmem {

namespace {

const std::string kAICopy = "A_I'";
const std::vector<std::string> kAOnly{kAI};
const std::vector<std::string> kCanonical{kAI, kAO, kBI};

void require_process_labels(const TensorOperator& w) {
  if (w.space().size() != 3 || !w.space().contains(kAI) || !w.space().contains(kAO) ||
      !w.space().contains(kBI)) {
    throw LabelError("expected an operator over (A_I, A_O, B_I)");
  }
}

double detect_threshold(const TensorOperator& w) { return kDetectTol * spectral_norm(w); }

// Hermitian basis of n x n matrices: |i><i|, |i><j| + |j><i| and
// i|i><j| - i|j><i| (i < j). Tr(E rho) gives rho_ii, 2 Re rho_ij, 2 Im rho_ij.
struct BasisElement {
  enum class Kind { diagonal, real, imag } kind;
  int i;
  int j;
};

std::vector<BasisElement> hermitian_basis(int n) {
  std::vector<BasisElement> out;
  for (int i = 0; i < n; ++i) out.push_back({BasisElement::Kind::diagonal, i, i});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.push_back({BasisElement::Kind::real, i, j});
      out.push_back({BasisElement::Kind::imag, i, j});
    }
  }
  return out;
}

void add_element(Matrix& m, const BasisElement& e, double scale) {
  switch (e.kind) {
    case BasisElement::Kind::diagonal:
      m(e.i, e.i) += scale;
      break;
    case BasisElement::Kind::real:
      m(e.i, e.j) += scale;
      m(e.j, e.i) += scale;
      break;
    case BasisElement::Kind::imag:
      m(e.i, e.j) += Complex(0.0, scale);
      m(e.j, e.i) += Complex(0.0, -scale);
      break;
  }
}

Matrix basis_matrix(int n, const BasisElement& e) {
  Matrix m = Matrix::Zero(n, n);
  add_element(m, e, 1.0);
  return m;
}

// Global basis permutation induced by exchanging two equal-dimension factors.
std::vector<int> factor_swap_permutation(const SubsystemSpace& space, std::size_t a, std::size_t b) {
  const int n = space.total_dim();
  std::vector<int> strides(space.size(), 1);
  for (int k = static_cast<int>(space.size()) - 2; k >= 0; --k) {
    strides[k] = strides[k + 1] * space.factors()[k + 1].dim;
  }
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) {
    const int da = (i / strides[a]) % space.factors()[a].dim;
    const int db = (i / strides[b]) % space.factors()[b].dim;
    perm[i] = i - da * strides[a] - db * strides[b] + db * strides[a] + da * strides[b];
  }
  return perm;
}

// Linearly independent F with Tr(F X) = 0 for all X = P X P, one per orbit of
// the involution `perm` acting on the Hermitian basis.
std::vector<Matrix> swap_symmetry_constraints(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<Matrix> out;
  for (const auto& e : hermitian_basis(n)) {
    int p = perm[e.i];
    int q = perm[e.j];
    double sign = 1.0;
    if (p > q) {
      std::swap(p, q);
      if (e.kind == BasisElement::Kind::imag) sign = -1.0;
    }
    const bool same = p == e.i && q == e.j;
    if (same && sign > 0) continue;
    if (!same && std::make_pair(e.i, e.j) > std::make_pair(p, q)) continue;
    Matrix f = basis_matrix(n, e);
    add_element(f, {e.kind, p, q}, -sign);
    out.push_back(std::move(f));
  }
  return out;
}

SolverDiagnostics diagnostics_of(const sdp::Problem& p, const sdp::Result& r) {
  SolverDiagnostics d;
  d.status = r.status;
  d.iterations = r.iterations;
  d.primal_residual = r.primal_residual;
  d.dual_residual = r.dual_residual;
  d.gap = r.gap;
  const auto v = sdp::verify(p, r);
  d.verified = v.passed();
  d.verify_summary = v.summary();
  return d;
}

const char* pauli_letter(int k) {
  static const char* letters[] = {"I", "X", "Y", "Z"};
  return letters[k];
}

Matrix pauli_matrix(int k) {
  switch (k) {
    case 1: return pauli::x();
    case 2: return pauli::y();
    case 3: return pauli::z();
    default: return pauli::identity();
  }
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::ppt: return "ppt";
    case Method::ppt_sdp: return "ppt_sdp";
    case Method::dps2: return "dps2";
  }
  return "unknown";
}

std::string to_string(Verdict v) {
  return v == Verdict::quantum_memory ? "quantum_memory" : "inconclusive";
}

Method method_from_string(const std::string& s) {
  if (s == "ppt") return Method::ppt;
  if (s == "ppt_sdp") return Method::ppt_sdp;
  if (s == "dps2") return Method::dps2;
  throw std::invalid_argument("unknown method '" + s + "'");
}

double ppt_min_eig(const TensorOperator& w) {
  require_process_labels(w);
  return min_eigenvalue(partial_transpose(w, kAOnly));
}

double ppt_min_eig(const ProcessMatrix& w) { return ppt_min_eig(w.op()); }

WitnessReport ppt_witness(const TensorOperator& w) {
  require_process_labels(w);
  const auto pt = partial_transpose(w, kAOnly);
  const auto eig = herm_eig(pt);
  WitnessReport report;
  report.method = Method::ppt;
  report.value = eig.values(0);
  if (eig.values(0) < -detect_threshold(w)) {
    const Vector psi = eig.vectors.col(0);
    const auto z = partial_transpose(TensorOperator::projector(w.space(), psi), kAOnly);
    report.verdict = Verdict::quantum_memory;
    report.value = hs_inner(z, w).real();
    report.witness = z;
  }
  return report;
}

WitnessReport ppt_witness(const ProcessMatrix& w) { return ppt_witness(w.op()); }

sdp::Problem witness_sdp_problem(const TensorOperator& w, const WitnessConstraints& constraints) {
  require_process_labels(w);
  const int n = w.dim();
  sdp::Problem p;
  p.blocks = {n};
  p.objective = sdp::BlockMatrix{partial_transpose(w, kAOnly).matrix()};
  p.constraints.push_back({{Matrix::Identity(n, n)}, 1.0});
  if (constraints.swap_symmetric) {
    const auto ia = *w.space().index_of(kAI);
    const auto ib = *w.space().index_of(kAO);
    if (w.space().factors()[ia].dim != w.space().factors()[ib].dim) {
      throw LabelError("swap constraint needs d_{A_I} = d_{A_O}");
    }
    for (auto& f : swap_symmetry_constraints(factor_swap_permutation(w.space(), ia, ib))) {
      p.constraints.push_back({{std::move(f)}, 0.0});
    }
  }
  for (const auto& [a, b] : constraints.linear) {
    p.constraints.push_back({{a.aligned_to(w.space()).matrix()}, b});
  }
  return p;
}

WitnessReport witness_sdp(const TensorOperator& w, const WitnessConstraints& constraints) {
  const auto problem = witness_sdp_problem(w, constraints);
  const auto result = sdp::solve(problem);
  WitnessReport report;
  report.method = Method::ppt_sdp;
  auto diag = diagnostics_of(problem, result);
  if (result.status == sdp::Status::optimal) {
    diag.optimum = -result.primal_objective;
    const TensorOperator z(w.space(), result.x[0]);
    const auto witness = partial_transpose(z, kAOnly);
    report.value = hs_inner(witness, w).real();
    if (diag.verified && report.value < -detect_threshold(w)) {
      report.verdict = Verdict::quantum_memory;
      report.witness = witness;
    }
  }
  report.diagnostics = std::move(diag);
  return report;
}

WitnessReport witness_sdp(const ProcessMatrix& w, const WitnessConstraints& constraints) {
  return witness_sdp(w.op(), constraints);
}

Dps2Problem dps2_problem(const TensorOperator& w) {
  require_process_labels(w);
  const TensorOperator rho = w.reordered(kCanonical) * Complex(1.0 / w.trace().real());
  const int d_state = rho.dim();
  const int d_copy = rho.space().dim_of(kAI);

  std::vector<Factor> factors = rho.space().factors();
  factors.push_back({kAICopy, d_copy});
  const SubsystemSpace ext(std::move(factors));
  const int n = ext.total_dim();
  const std::vector<std::string> copy_only{kAICopy};
  const std::vector<std::string> b_part{kAO, kBI};

  Dps2Problem out;
  out.state_space = rho.space();
  auto& p = out.problem;
  p.blocks = {n, n, n};

  const TensorOperator copy_identity = TensorOperator::identity(SubsystemSpace{{kAICopy, d_copy}});
  for (const auto& e : hermitian_basis(d_state)) {
    Matrix basis = basis_matrix(d_state, e);
    const TensorOperator lifted = kron(TensorOperator(rho.space(), basis), copy_identity);
    const double rhs = hs_inner(TensorOperator(rho.space(), basis), rho).real();
    p.constraints.push_back({{lifted.matrix(), Matrix(), Matrix()}, rhs});
    out.marginal_basis.push_back(std::move(basis));
  }
  out.marginal_count = p.constraints.size();

  for (auto& f : swap_symmetry_constraints(factor_swap_permutation(ext, 0, ext.size() - 1))) {
    p.constraints.push_back({{std::move(f), Matrix(), Matrix()}, 0.0});
  }

  // Block 1 = rho~^{T_{A'}}, block 2 = rho~^{T_B}, one equality per basis element:
  // Tr(E Y_k) - Tr(T(E) rho~) = 0, partial transposition being self-adjoint.
  for (const auto& e : hermitian_basis(n)) {
    const TensorOperator basis(ext, basis_matrix(n, e));
    const Matrix lhs_copy = -partial_transpose(basis, copy_only).matrix();
    const Matrix lhs_b = -partial_transpose(basis, b_part).matrix();
    p.constraints.push_back({{lhs_copy, basis.matrix(), Matrix()}, 0.0});
    p.constraints.push_back({{lhs_b, Matrix(), basis.matrix()}, 0.0});
  }
  return out;
}

TensorOperator dps2_certificate_witness(const Dps2Problem& p, const sdp::Result& r) {
  if (r.status != sdp::Status::infeasible || r.y.size() != p.problem.constraints.size()) {
    throw NoCertificateError("no certificate: the level-2 extension problem is not infeasible");
  }
  double by = 0.0;
  for (std::size_t k = 0; k < r.y.size(); ++k) by += r.y[k] * p.problem.constraints[k].rhs;
  if (!(by > 0.0)) throw NoCertificateError("no certificate: b^T y is not positive");
  const int d = p.state_space.total_dim();
  Matrix z = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < p.marginal_count; ++k) z -= (r.y[k] / by) * p.marginal_basis[k];
  return {p.state_space, 0.5 * (z + z.adjoint())};
}

WitnessReport dps2_feasibility(const TensorOperator& w) {
  const auto problem = dps2_problem(w);
  const auto result = sdp::solve(problem.problem);
  WitnessReport report;
  report.method = Method::dps2;
  auto diag = diagnostics_of(problem.problem, result);
  if (result.status == sdp::Status::infeasible && diag.verified) {
    auto z = dps2_certificate_witness(problem, result);
    z = z * Complex(1.0 / spectral_norm(z));
    const auto aligned = z.aligned_to(w.space());
    report.value = hs_inner(aligned, w).real();
    if (report.value < -detect_threshold(w)) {
      report.verdict = Verdict::quantum_memory;
      report.witness = aligned;
    }
  }
  report.diagnostics = std::move(diag);
  return report;
}

WitnessReport dps2_feasibility(const ProcessMatrix& w) { return dps2_feasibility(w.op()); }

WitnessReport dps2_witness(const ProcessMatrix& w) {
  auto report = dps2_feasibility(w);
  if (!report.witness) {
    const std::string status =
        report.diagnostics ? sdp::to_string(report.diagnostics->status) : std::string("unknown");
    throw NoCertificateError("no certificate: level-2 extension problem returned " + status);
  }
  return report;
}

std::vector<TensorOperator> classical_memory_samples(int n_samples, std::uint64_t seed, const ProcessDims& dims) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> term_count(1, 4);
  std::vector<TensorOperator> out;
  out.reserve(std::max(n_samples, 0));
  for (int k = 0; k < n_samples; ++k) {
    const std::uint64_t sample_seed = rng();
    const int terms = term_count(rng);
    out.push_back(classical_memory_operator(random_classical_memory(sample_seed, terms, dims)));
  }
  return out;
}

WitnessValidation validate_witness(const TensorOperator& z, const std::vector<TensorOperator>& samples, double tol) {
  require_process_labels(z);
  if (!z.is_hermitian()) throw NotHermitianError("validate_witness: witness is not Hermitian");
  const auto lz = project_L(z);
  WitnessValidation v;
  v.samples = static_cast<int>(samples.size());
  v.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double value = hs_inner(z, samples[k]).real();
    v.min_value = std::min(v.min_value, value);
    if (value < -tol) v.failures.push_back(static_cast<int>(k));
    v.l_projection_gap = std::max(v.l_projection_gap, std::abs(hs_inner(lz, samples[k]).real() - value));
  }
  return v;
}

WitnessValidation validate_witness(const TensorOperator& z, int n_samples, std::uint64_t seed, double tol) {
  require_process_labels(z);
  const ProcessDims dims{z.space().dim_of(kAI), z.space().dim_of(kAO), z.space().dim_of(kBI)};
  return validate_witness(z, classical_memory_samples(n_samples, seed, dims), tol);
}

std::vector<PauliTerm> pauli_decomposition(const TensorOperator& z, double cutoff) {
  for (const auto& f : z.space().factors()) {
    if (f.dim != 2) throw LabelError("pauli_decomposition: all factors must be qubits");
  }
  const std::size_t n = z.space().size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= 4;
  std::vector<PauliTerm> out;
  const double norm = 1.0 / static_cast<double>(z.dim());
  for (std::size_t code = 0; code < total; ++code) {
    Matrix op = Matrix::Identity(1, 1);
    std::string name;
    std::size_t rest = code;
    std::vector<int> digits(n);
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = static_cast<int>(rest % 4);
      rest /= 4;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const Matrix p = pauli_matrix(digits[k]);
      Matrix next(op.rows() * 2, op.cols() * 2);
      for (Eigen::Index r = 0; r < op.rows(); ++r) {
        for (Eigen::Index c = 0; c < op.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = op(r, c) * p;
      }
      op = std::move(next);
      name += pauli_letter(digits[k]);
    }
    const double coeff = norm * (z.matrix().array() * op.transpose().array()).sum().real();
    if (std::abs(coeff) > cutoff) out.push_back({name, coeff});
  }
  return out;
}

nlohmann::json witness_to_json(const WitnessReport& report, const TensorOperator& w) {
  nlohmann::json j;
  j["method"] = to_string(report.method);
  j["verdict"] = to_string(report.verdict);
  if (report.witness) {
    const auto scale = 1.0 / spectral_norm(*report.witness);
    const TensorOperator z = *report.witness * Complex(scale);
    j["witness"] = to_json(z);
    j["value"] = hs_inner(z, w).real();
    j["normalization"] = "spectral_norm";
    bool qubits = true;
    for (const auto& f : z.space().factors()) qubits = qubits && f.dim == 2;
    if (qubits) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& t : pauli_decomposition(z)) terms.push_back({{"ops", t.ops}, {"coefficient", t.coefficient}});
      j["decomposition"] = {{"basis", "pauli"}, {"labels", z.labels()}, {"terms", terms}};
    }
  } else {
    j["witness"] = nullptr;
    j["value"] = report.value;
  }
  if (report.diagnostics) {
    const auto& d = *report.diagnostics;
    j["diagnostics"] = {{"status", sdp::to_string(d.status)},
                        {"iterations", d.iterations},
                        {"primal_residual", d.primal_residual},
                        {"dual_residual", d.dual_residual},
                        {"gap", d.gap},
                        {"optimum", d.optimum},
                        {"verified", d.verified}};
  }
  return j;
}

}  // namespace qmem
