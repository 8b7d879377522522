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

// Two-station process matrices W over (A_I, A_O, B_I), with A before B and the
// output of B discarded.
//
// Two Choi conventions are in play and are kept apart by type:
//  - ChannelChoi (and choi_of_unitary) is transpose-free:
//      T = sum_jk |j><k| (x) E(|j><k|)
//  - InstrumentElement carries the transposed form M = [I (x) M(|1>><<1|)]^T,
//    which is what makes p = Tr[W (M_A (x) M_B)] hold.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qmem/tensor.hpp"

namespace qmem {

inline const std::string kAI = "A_I";
inline const std::string kAO = "A_O";
inline const std::string kBI = "B_I";
inline const std::string kEI = "E_I";
inline const std::string kEO = "E_O";

constexpr double kProcessTol = 1e-9;

class InvalidProcessError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ProcessDims {
  int a_in = 2;
  int a_out = 2;
  int b_in = 2;
};

SubsystemSpace process_space(const ProcessDims& dims = {});

struct CombReport {
  double hermiticity = 0.0;     // max |W - W^dagger|
  double min_eigenvalue = 0.0;  // of the Hermitian part
  double psd_tolerance = 0.0;   // -1e-9 (1 + ||W||_2)
  double trace_error = 0.0;     // |Tr W - d_{A_O}|
  double comb_violation = 0.0;  // max-entry of the comb condition residual

  bool hermitian() const { return hermiticity <= kHermitianTol; }
  bool positive() const { return min_eigenvalue >= -psd_tolerance; }
  bool normalized() const { return trace_error <= kProcessTol; }
  bool comb() const { return comb_violation <= kProcessTol; }
  bool valid() const { return hermitian() && positive() && normalized() && comb(); }
};

/// Checks Hermiticity, positivity, Tr W = d_{A_O} and
/// trace_and_replace(W, {B_I}) = trace_and_replace(W, {A_O, B_I}).
CombReport validate_comb(const TensorOperator& w);

class ProcessMatrix {
 public:
  /// Throws InvalidProcessError unless `op` is a valid comb over exactly
  /// {A_I, A_O, B_I}; stored in the canonical order A_I, A_O, B_I.
  explicit ProcessMatrix(const TensorOperator& op);

  const TensorOperator& op() const { return op_; }
  ProcessDims dims() const;

 private:
  TensorOperator op_;
};

/// Transpose-free Choi matrix of a CPTP map, over (in, out).
class ChannelChoi {
 public:
  ChannelChoi(const TensorOperator& op, std::string in_label, std::string out_label);

  const TensorOperator& op() const { return op_; }
  const std::string& in_label() const { return in_; }
  const std::string& out_label() const { return out_; }

 private:
  TensorOperator op_;
  std::string in_;
  std::string out_;
};

/// Transposed-convention Choi matrix of one CP map of an instrument, over
/// (A_I, A_O) for station A or (B_I) for station B.
class InstrumentElement {
 public:
  explicit InstrumentElement(const TensorOperator& op);
  const TensorOperator& op() const { return op_; }

  /// Element of the map rho -> K rho K^dagger between the given labels.
  static InstrumentElement from_kraus(const Matrix& kraus, const std::string& in_label,
                                      const std::string& out_label);
  /// Element for the effect E at station B.
  static InstrumentElement effect(const Matrix& e, const std::string& label = kBI);

 private:
  TensorOperator op_;
};

/// True when the elements sum to a trace-preserving map (or to the identity
/// effect for single-label elements).
bool is_complete_instrument(std::span<const InstrumentElement> elements, double tol = kProcessTol);

struct ClassicalMemoryTerm {
  double weight = 0.0;
  TensorOperator state;  // density operator on A_I
  ChannelChoi channel;   // A_O -> B_I
};

class ClassicalMemoryProcess {
 public:
  explicit ClassicalMemoryProcess(std::vector<ClassicalMemoryTerm> terms);
  const std::vector<ClassicalMemoryTerm>& terms() const { return terms_; }

 private:
  std::vector<ClassicalMemoryTerm> terms_;
};

/// [[u]] = (1 (x) u)|1>><<1|(1 (x) u^dagger) over in_labels then out_labels;
/// factor dims follow u's factors positionally.
TensorOperator choi_of_unitary(const TensorOperator& u, std::span<const std::string> in_labels,
                               std::span<const std::string> out_labels);
/// Same construction without the unitarity check.
TensorOperator choi_of_operator(const TensorOperator& x, std::span<const std::string> in_labels,
                                std::span<const std::string> out_labels);

/// Tr_common[(x^{T_common} (x) 1)(1 (x) y)]; output labels are x's private
/// labels followed by y's.
TensorOperator link_product(const TensorOperator& x, const TensorOperator& y);

double prob_rule(const ProcessMatrix& w, const InstrumentElement& a, const InstrumentElement& b);

ProcessMatrix markovian_process(const TensorOperator& rho, const ChannelChoi& channel);
ProcessMatrix classical_memory_process(const ClassicalMemoryProcess& c);
TensorOperator classical_memory_operator(const ClassicalMemoryProcess& c);

/// Ginibre states, Stinespring channels with environment dim d_{A_O} d_{B_I},
/// flat-simplex weights. Deterministic in `seed`.
ClassicalMemoryProcess random_classical_memory(std::uint64_t seed, int n_terms,
                                               const ProcessDims& dims = {});

/// L(x) = x - trace_and_replace(x, {B_I}) + trace_and_replace(x, {A_O, B_I}).
TensorOperator project_L(const TensorOperator& x);

/// (Tr_{A_O B_I} W / d_{A_O}) (x) Tr_{A_I} W.
ProcessMatrix marginal_markovian(const ProcessMatrix& w);

enum class Norm { trace, frobenius };
double markov_distance(const ProcessMatrix& w, Norm norm = Norm::trace);

}  // namespace qmem
