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
#include "qmem/detect.hpp"
#include "qmem/ising.hpp"

using namespace qmem;
using std::numbers::pi;

namespace {

double reference_ppt(double j, double h, double t) {
  return oracle::min_eigenvalue(oracle::transpose_first(oracle::ising_process(j, h, t), 2, 4));
}

// Random product terms rho (x) T with T a random channel Choi.
std::vector<TensorOperator> product_terms(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TensorOperator> out;
  for (int k = 0; k < n; ++k) {
    const Matrix rho = oracle::random_density(rng, 2);
    const Matrix v = oracle::random_isometry(rng, 4, 2);
    Matrix choi = Matrix::Zero(4, 4);
    for (int e = 0; e < 2; ++e) {
      Eigen::VectorXcd vec(4);
      for (int j = 0; j < 2; ++j)
        for (int o = 0; o < 2; ++o) vec(2 * j + o) = v(2 * e + o, j);
      choi += vec * vec.adjoint();
    }
    out.emplace_back(process_space(), oracle::kron2(rho, choi));
  }
  return out;
}

}  // namespace

TEST_CASE("ppt eigenvalue") {
  CHECK(ppt_min_eig(ising::process_matrix(1, 1, 1)) == doctest::Approx(reference_ppt(1, 1, 1)).epsilon(1e-10));
  CHECK(ppt_min_eig(ising::process_matrix(1, 1, 1)) < 0.0);
  CHECK(ppt_min_eig(ising::process_matrix(pi, 0, 1)) >= -1e-10);
  for (int k = 0; k < 200; ++k) CHECK(ppt_min_eig(classical_memory_operator(random_classical_memory(k, 1 + k % 4))) >= -1e-10);
}

TEST_CASE("ppt witness") {
  const auto w = ising::process_matrix(1, 1, 1);
  const auto r = ppt_witness(w);
  REQUIRE(r.verdict == Verdict::quantum_memory);
  REQUIRE(r.witness.has_value());
  CHECK(r.method == Method::ppt);
  CHECK(r.value == doctest::Approx(reference_ppt(1, 1, 1)).epsilon(1e-9));
  CHECK(hs_inner(*r.witness, w.op()).real() == doctest::Approx(r.value).epsilon(1e-9));
  CHECK(r.witness->hermiticity_defect() < 1e-14);

  double worst = 1.0;
  for (const auto& s : product_terms(1000, 77)) worst = std::min(worst, hs_inner(*r.witness, s).real());
  CHECK(worst >= -1e-10);

  const auto v = validate_witness(*r.witness, 1000, 5);
  CHECK(v.passed());
  CHECK(v.min_value >= -1e-9);
  CHECK(v.l_projection_gap <= 1e-9);

  for (double j : {0.0, 0.7, 2.0, pi, 6.1}) {
    const auto c = ppt_witness(ising::process_matrix(j, 0.0, 1.0));
    CHECK(c.verdict == Verdict::inconclusive);
    CHECK_FALSE(c.witness.has_value());
  }
}

TEST_CASE("ppt witness is deterministic") {
  const auto a = ppt_witness(ising::process_matrix(2.2, 1.4, 1.0));
  const auto b = ppt_witness(ising::process_matrix(2.2, 1.4, 1.0));
  REQUIRE(a.witness.has_value());
  CHECK(max_abs(*a.witness - *b.witness) == 0.0);
}

TEST_CASE("witness sdp") {
  const auto w = ising::process_matrix(1, 1, 1);
  const auto r = witness_sdp(w);
  REQUIRE(r.diagnostics.has_value());
  CHECK(r.diagnostics->verified);
  CHECK(r.method == Method::ppt_sdp);
  CHECK(r.verdict == Verdict::quantum_memory);
  CHECK(r.diagnostics->optimum == doctest::Approx(-ppt_min_eig(w)).epsilon(1e-6));
  REQUIRE(r.witness.has_value());
  CHECK(hs_inner(*r.witness, w.op()).real() == doctest::Approx(r.value).epsilon(1e-8));
  CHECK(validate_witness(*r.witness, 1000, 6).passed());

  WitnessConstraints swap;
  swap.swap_symmetric = true;
  const auto s = witness_sdp(w, swap);
  REQUIRE(s.diagnostics.has_value());
  CHECK(s.diagnostics->verified);
  CHECK(s.diagnostics->optimum <= r.diagnostics->optimum + 1e-8);

  const auto m = witness_sdp(ising::process_matrix(pi, 0, 1));
  REQUIRE(m.diagnostics.has_value());
  CHECK(m.diagnostics->optimum <= 1e-7);
  CHECK(m.verdict == Verdict::inconclusive);
}

TEST_CASE("witness sdp rejects mismatched swap") {
  const ProcessDims dims{2, 3, 2};
  const auto c = random_classical_memory(1, 2, dims);
  WitnessConstraints swap;
  swap.swap_symmetric = true;
  CHECK_THROWS_AS(witness_sdp(classical_memory_operator(c), swap), LabelError);
}

TEST_CASE("witness sdp linear restriction") {
  // Tr(Z) = 1 again as an extra row leaves the optimum unchanged.
  const auto w = ising::process_matrix(1.5, 2.0, 1.0);
  WitnessConstraints extra;
  extra.linear.push_back({TensorOperator::identity(process_space()), 1.0});
  const auto a = witness_sdp(w);
  const auto b = witness_sdp(w, extra);
  REQUIRE(a.diagnostics.has_value());
  REQUIRE(b.diagnostics.has_value());
  CHECK(b.diagnostics->optimum == doctest::Approx(a.diagnostics->optimum).epsilon(1e-6));
}

TEST_CASE("sdp and eigenvalue duality") {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 20; ++k) {
    const auto w = ising::process_matrix(u(rng), u(rng), 1.0);
    const auto r = witness_sdp(w);
    REQUIRE(r.diagnostics.has_value());
    CHECK(r.diagnostics->verified);
    CHECK(std::abs(r.diagnostics->optimum + ppt_min_eig(w)) <= 1e-6);
  }
}

TEST_CASE("dps2 on ising points") {
  const auto w = ising::process_matrix(1, 1, 1);
  const auto r = dps2_feasibility(w);
  REQUIRE(r.diagnostics.has_value());
  CHECK(r.diagnostics->status == sdp::Status::infeasible);
  CHECK(r.diagnostics->verified);
  CHECK(r.verdict == Verdict::quantum_memory);
  REQUIRE(r.witness.has_value());
  CHECK(r.value < 0.0);
  CHECK(hs_inner(*r.witness, w.op()).real() == doctest::Approx(r.value).epsilon(1e-8));
  CHECK(spectral_norm(*r.witness) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(validate_witness(*r.witness, 1000, 7).min_value >= -1e-9);

  const auto x = dps2_witness(w);
  CHECK(max_abs(*x.witness - *r.witness) < 1e-12);

  for (double j : {0.5, 2.0, pi}) {
    const auto c = dps2_feasibility(ising::process_matrix(j, 0.0, 1.0));
    REQUIRE(c.diagnostics.has_value());
    CHECK(c.diagnostics->status == sdp::Status::optimal);
    CHECK(c.diagnostics->verified);
    CHECK(c.verdict == Verdict::inconclusive);
  }
  CHECK_THROWS_AS(dps2_witness(ising::process_matrix(2.0, 0.0, 1.0)), NoCertificateError);
}

TEST_CASE("certificate maps to a witness") {
  const auto w = ising::process_matrix(1, 1, 1);
  const auto p = dps2_problem(w.op());
  const auto r = sdp::solve(p.problem);
  REQUIRE(r.status == sdp::Status::infeasible);
  const auto z = dps2_certificate_witness(p, r);
  const TensorOperator rho = w.op() * Complex(0.5);
  CHECK(hs_inner(z, rho).real() == doctest::Approx(-1.0).epsilon(1e-6));
  sdp::Result fake;
  fake.status = sdp::Status::optimal;
  CHECK_THROWS_AS(dps2_certificate_witness(p, fake), NoCertificateError);
}

TEST_CASE("dps2 feasible on classical memory") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto w = classical_memory_operator(random_classical_memory(1000 + seed, 1 + static_cast<int>(seed % 4)));
    const auto r = dps2_feasibility(w);
    REQUIRE(r.diagnostics.has_value());
    CHECK_MESSAGE(r.diagnostics->status == sdp::Status::optimal, "seed ", seed);
    CHECK(r.diagnostics->verified);
    CHECK(r.verdict == Verdict::inconclusive);
  }
}

TEST_CASE("hierarchy consistency") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int k = 0; k < 15; ++k) {
    const auto w = ising::process_matrix(u(rng), u(rng), 1.0);
    if (ppt_min_eig(w) >= -1e-6) continue;
    const auto r = dps2_feasibility(w);
    REQUIRE(r.diagnostics.has_value());
    CHECK(r.diagnostics->status != sdp::Status::optimal);
    CHECK(r.verdict == Verdict::quantum_memory);
  }
}

TEST_CASE("dps2 transpose on either A copy") {
  // Swap symmetry makes T on the original A_I equivalent to T on the copy.
  const std::vector<std::string> first{kAI};
  for (const auto& w : {ising::process_matrix(1, 1, 1), ising::process_matrix(2, 0, 1),
                        classical_memory_process(random_classical_memory(3, 2))}) {
    const auto original = dps2_problem(w.op());
    auto alt = original.problem;
    SubsystemSpace ext({{kAI, 2}, {kAO, 2}, {kBI, 2}, {"A_I'", 2}});
    for (std::size_t k = 0; k < alt.constraints.size(); ++k) {
      auto& c = alt.constraints[k];
      if (c.lhs.size() < 2 || c.lhs[1].size() == 0) continue;
      c.lhs[0] = -partial_transpose(TensorOperator(ext, c.lhs[1]), first).matrix();
    }
    const auto a = sdp::solve(original.problem);
    const auto b = sdp::solve(alt);
    CHECK(a.status == b.status);
    CHECK(sdp::verify(alt, b).passed());
  }
}

TEST_CASE("verdict invariant under scaling") {
  const auto w = ising::process_matrix(1, 1, 1).op();
  for (double alpha : {0.1, 3.0, 50.0}) {
    const auto scaled = w * Complex(alpha);
    CHECK(ppt_witness(scaled).verdict == Verdict::quantum_memory);
    CHECK(ppt_witness(scaled).value < 0.0);
    const auto s = witness_sdp(scaled);
    CHECK(s.verdict == Verdict::quantum_memory);
    CHECK(dps2_feasibility(scaled).verdict == Verdict::quantum_memory);
  }
  const auto c = ising::process_matrix(2, 0, 1).op() * Complex(7.0);
  CHECK(ppt_witness(c).verdict == Verdict::inconclusive);
}

TEST_CASE("witness validation") {
  const auto one = TensorOperator::identity(process_space()) * Complex(1.0 / 8.0);
  const auto good = validate_witness(one, 200, 1);
  CHECK(good.passed());
  CHECK(good.min_value == doctest::Approx(0.25).epsilon(1e-12));
  const auto bad = validate_witness(one * Complex(-1.0), 200, 1);
  CHECK_FALSE(bad.passed());
  CHECK(bad.min_value < 0.0);
  CHECK(bad.failures.front() == 0);

  const auto s1 = classical_memory_samples(20, 9);
  const auto s2 = classical_memory_samples(20, 9);
  REQUIRE(s1.size() == 20);
  for (std::size_t k = 0; k < s1.size(); ++k) {
    CHECK(max_abs(s1[k] - s2[k]) == 0.0);
    CHECK(validate_comb(s1[k]).valid());
  }
}

TEST_CASE("pauli decomposition and export") {
  const auto w = ising::process_matrix(1, 1, 1);
  const auto r = ppt_witness(w);
  REQUIRE(r.witness.has_value());
  const auto terms = pauli_decomposition(*r.witness);
  Matrix rebuilt = Matrix::Zero(8, 8);
  const auto single = [](char c) -> Matrix {
    Matrix m = Matrix::Zero(2, 2);
    switch (c) {
      case 'I': m(0, 0) = m(1, 1) = 1.0; break;
      case 'X': return oracle::sx();
      case 'Y': m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
      default: return oracle::sz();
    }
    return m;
  };
  for (const auto& t : terms) {
    REQUIRE(t.ops.size() == 3);
    rebuilt += t.coefficient * oracle::kron2(single(t.ops[0]), oracle::kron2(single(t.ops[1]), single(t.ops[2])));
  }
  CHECK((rebuilt - r.witness->matrix()).cwiseAbs().maxCoeff() < 1e-11);

  const auto j = witness_to_json(r, w.op());
  CHECK(j["method"] == "ppt");
  CHECK(j["verdict"] == "quantum_memory");
  CHECK(j["normalization"] == "spectral_norm");
  CHECK(j["decomposition"]["basis"] == "pauli");
  const auto z = operator_from_json(j["witness"]);
  CHECK(spectral_norm(z) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hs_inner(z, w.op()).real() == doctest::Approx(j["value"].get<double>()).epsilon(1e-10));
}
