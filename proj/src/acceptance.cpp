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

#include "qmem/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

#include "qmem/cli.hpp"
#include "qmem/detect.hpp"
#include "qmem/ising.hpp"
#include "qmem/process.hpp"

namespace qmem::acceptance {

namespace {

using std::numbers::pi;
using Clock = std::chrono::steady_clock;

struct NamedWitness {
  std::string name;
  TensorOperator z;
};

struct SdpTally {
  int solved = 0;
  std::vector<std::string> failures;

  void add(const std::string& what, const std::optional<SolverDiagnostics>& d) {
    ++solved;
    if (!d || !d->verified) failures.push_back(what + (d ? ": " + d->verify_summary : ": no diagnostics"));
  }
  void add_status(const std::string& what, const std::string& status) {
    ++solved;
    const bool ok = status == "optimal" || status == "infeasible";
    if (!ok) failures.push_back(what + ": status " + status);
  }
};

struct Context {
  Options options;
  std::ostream* log = nullptr;
  std::vector<std::pair<double, double>> detection_points;
  std::vector<NamedWitness> witnesses;
  SdpTally tally;
  bool ran_sdp_criteria = false;
};

class Recorder {
 public:
  Recorder(CriterionResult& r, std::ostream* log) : r_(r), log_(log) {}
  void note(const std::string& line) {
    r_.details.push_back(line);
    if (log_) *log_ << "    " << line << '\n' << std::flush;
  }
  void check(bool ok, const std::string& line) {
    if (!ok) {
      r_.passed = false;
      note("FAIL " + line);
    }
  }

 private:
  CriterionResult& r_;
  std::ostream* log_;
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string at(double j, double h, double t = 1.0) {
  return "(" + num(j) + ", " + num(h) + ", " + num(t) + ")";
}

double lattice_distance(double j, double h, const std::vector<std::pair<double, double>>& lattice) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& [lj, lh] : lattice) d = std::min(d, std::hypot(j - lj, h - lh));
  return d;
}

Matrix random_hermitian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Matrix a(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) a(r, c) = Complex(g(rng), g(rng));
  }
  return a + a.adjoint();
}

Matrix random_isometry(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Matrix a(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) a(r, c) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(rows, cols);
}

// ---------------------------------------------------------------------------

void markovian_lattice(Context&, Recorder& rec) {
  const std::vector<std::pair<double, double>> points{
      {0.0, 0.0}, {pi, 0.0}, {2 * pi, 0.0}, {pi / 2, 0.0}, {pi, pi / 2 * std::sqrt(3.0)}, {0.0, 1.7}};
  for (const auto& [j, h] : points) {
    const auto w = ising::process_matrix(j, h, 1.0);
    const double md = markov_distance(w);
    const double lam = ppt_min_eig(w);
    rec.note(at(j, h) + " markov_distance " + num(md) + ", ppt_min_eig " + num(lam));
    rec.check(md <= 1e-9, at(j, h) + " markov_distance above 1e-9");
    rec.check(lam >= -1e-9, at(j, h) + " ppt_min_eig below -1e-9");
  }
}

void h0_classical(Context& ctx, Recorder& rec) {
  for (double j : {0.5, 1.0, 2.3}) {
    for (double t : {0.7, 1.0}) {
      const auto w = ising::process_matrix(j, 0.0, t);
      const double diff = max_abs(w.op() - ising::analytic_h0(j, t).op());
      const double lam = ppt_min_eig(w);
      const auto r = dps2_feasibility(w);
      ctx.tally.add("dps2 " + at(j, 0.0, t), r.diagnostics);
      const auto status = r.diagnostics ? r.diagnostics->status : sdp::Status::numerical_failure;
      const bool feasible = status == sdp::Status::optimal && r.diagnostics->verified &&
                            r.verdict == Verdict::inconclusive;
      rec.note(at(j, 0.0, t) + " closed-form diff " + num(diff) + ", ppt_min_eig " + num(lam) + ", dps2 " +
               sdp::to_string(status));
      rec.check(diff <= 1e-10, at(j, 0.0, t) + " closed form mismatch");
      rec.check(lam >= -1e-10, at(j, 0.0, t) + " ppt_min_eig below -1e-10");
      rec.check(feasible, at(j, 0.0, t) + " dps2 not a verified feasible solve");
    }
  }
}

void detection(Context& ctx, Recorder& rec) {
  const auto lattice = ising::markovian_points(10.5, 10.5);
  std::mt19937_64 rng(ctx.options.seed);
  std::uniform_real_distribution<double> u(0.3, 10.0);
  ctx.detection_points.clear();
  while (ctx.detection_points.size() < 20) {
    const double j = u(rng);
    const double h = u(rng);
    if (lattice_distance(j, h, lattice) > 0.2) ctx.detection_points.emplace_back(j, h);
  }
  for (const auto& [j, h] : ctx.detection_points) {
    const auto w = ising::process_matrix(j, h, 1.0);
    const double lam = ppt_min_eig(w);
    const auto ppt = ppt_witness(w);
    const auto dps = dps2_feasibility(w);
    ctx.tally.add("dps2 " + at(j, h), dps.diagnostics);
    const auto status = dps.diagnostics ? dps.diagnostics->status : sdp::Status::numerical_failure;
    rec.note(at(j, h) + " ppt_min_eig " + num(lam) + ", dps2 " + sdp::to_string(status) + " Tr(ZW) " +
             num(dps.value));
    rec.check(lam < -1e-6, at(j, h) + " ppt_min_eig not below -1e-6");
    rec.check(ppt.verdict == Verdict::quantum_memory && ppt.witness.has_value(), at(j, h) + " ppt_witness inconclusive");
    rec.check(std::abs(ppt.value - lam) <= 1e-9, at(j, h) + " ppt_witness value differs from lambda_min");
    rec.check(status == sdp::Status::infeasible && dps.diagnostics->verified && dps.verdict == Verdict::quantum_memory,
              at(j, h) + " dps2 not a verified infeasibility");
    if (ppt.witness) ctx.witnesses.push_back({"ppt " + at(j, h), *ppt.witness});
    if (dps.witness) ctx.witnesses.push_back({"dps2 " + at(j, h), *dps.witness});
  }
}

void duality(Context& ctx, Recorder& rec) {
  if (ctx.detection_points.empty()) {
    rec.check(false, "no detection points (criterion 3 not run)");
    return;
  }
  double worst = 0.0;
  for (const auto& [j, h] : ctx.detection_points) {
    const auto w = ising::process_matrix(j, h, 1.0);
    const double lam = ppt_min_eig(w);
    const auto r = witness_sdp(w);
    ctx.tally.add("ppt_sdp " + at(j, h), r.diagnostics);
    const bool ok = r.diagnostics && r.diagnostics->status == sdp::Status::optimal;
    const double err = ok ? std::abs(r.diagnostics->optimum + lam) : std::numeric_limits<double>::infinity();
    worst = std::max(worst, err);
    rec.check(ok, at(j, h) + " witness SDP not optimal");
    rec.check(err <= 1e-6, at(j, h) + " |optimum + lambda_min| = " + num(err));
    if (r.witness) ctx.witnesses.push_back({"ppt_sdp " + at(j, h), *r.witness});
  }
  rec.note("max |optimum + lambda_min| over " + std::to_string(ctx.detection_points.size()) + " points: " + num(worst));
}

void soundness(Context& ctx, Recorder& rec) {
  if (ctx.witnesses.empty()) {
    rec.check(false, "no witnesses were emitted (criteria 3 and 4 not run)");
    return;
  }
  const auto samples = classical_memory_samples(1000, ctx.options.seed ^ 0x5eedULL);
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& nw : ctx.witnesses) {
    const auto v = validate_witness(nw.z, samples, 1e-9);
    worst = std::min(worst, v.min_value);
    rec.check(v.passed(), nw.name + " negative on " + std::to_string(v.failures.size()) + " samples, min " +
                              num(v.min_value));
  }
  rec.note(std::to_string(ctx.witnesses.size()) + " witnesses x 1000 samples, min Tr(Z W_cl) " + num(worst));
}

void phase_diagram(Context& ctx, Recorder& rec, double& ppt_seconds, double& dps_seconds) {
  const auto start = Clock::now();
  cli::SweepConfig config;
  config.j_range = {0.0, 10.0, 1.0 / 15.0};
  config.h_range = {0.0, 10.0, 1.0 / 15.0};
  config.t = 1.0;
  config.methods = {cli::SweepMethod::ppt, cli::SweepMethod::markov_distance};
  config.workers = ctx.options.workers;
  const auto table = cli::sweep(config);
  ppt_seconds = std::chrono::duration<double>(Clock::now() - start).count();

  const auto lattice = ising::markovian_points(10.5, 10.5);
  auto on_markovian_set = [&](double j, double h) {
    return j == 0.0 || lattice_distance(j, h, lattice) <= 1e-9;
  };

  int far_points = 0;
  int far_failures = 0;
  int h0_literal = 0;
  int h0_inconclusive = 0;
  int on_grid = 0;
  double on_grid_max = 0.0;
  int zeros = 0;
  int zero_mismatch = 0;
  double min_value = 0.0;
  for (const auto& row : table) {
    const bool far = lattice_distance(row.j, row.h, lattice) > 0.2 && row.j > 0.2;
    if (row.method == "ppt") {
      min_value = std::min(min_value, row.value);
      if (far && row.h > 0.2) {
        ++far_points;
        if (!(row.value < 0.0 && row.verdict == "quantum_memory")) {
          ++far_failures;
          if (far_failures <= 5) rec.note("FAIL " + at(row.j, row.h) + " ppt value " + num(row.value));
        }
      } else if (far && row.h == 0.0) {
        ++h0_literal;
        if (row.verdict != "quantum_memory") ++h0_inconclusive;
      }
      if (on_markovian_set(row.j, row.h)) {
        ++on_grid;
        on_grid_max = std::max(on_grid_max, std::abs(row.value));
      }
    } else {
      const bool zero = row.value <= 1e-9;
      zeros += zero;
      if (zero != on_markovian_set(row.j, row.h)) {
        ++zero_mismatch;
        if (zero_mismatch <= 5) rec.note("FAIL markov_distance " + num(row.value) + " at " + at(row.j, row.h));
      }
    }
  }
  rec.note("151x151 ppt + markov_distance sweep in " + num(ppt_seconds) + " s, min ppt value " + num(min_value));
  rec.note("ppt < 0 at " + std::to_string(far_points - far_failures) + "/" + std::to_string(far_points) +
           " points farther than 0.2 from the lattice and both axes");
  rec.note("h = 0 row: " + std::to_string(h0_inconclusive) + "/" + std::to_string(h0_literal) +
           " points beyond 0.2 of the lattice are inconclusive (classical memory, excluded)");
  rec.note("on-grid Markovian points: " + std::to_string(on_grid) + ", max |ppt value| " + num(on_grid_max));
  rec.note("markov_distance zeros: " + std::to_string(zeros) + ", mismatches with the Markovian set: " +
           std::to_string(zero_mismatch));
  rec.check(far_failures == 0, std::to_string(far_failures) + " far points without a negative ppt value");
  rec.check(on_grid > 0 && on_grid_max <= 1e-6, "ppt value above 1e-6 at an on-grid Markovian point");
  rec.check(zero_mismatch == 0, "markov_distance zero set differs from the Markovian set");

  double lattice_max = 0.0;
  for (const auto& [j, h] : ising::markovian_points(10.0, 10.0)) {
    lattice_max = std::max(lattice_max, markov_distance(ising::process_matrix(j, h, 1.0)));
  }
  rec.note("max markov_distance over markovian_points(10, 10): " + num(lattice_max));
  rec.check(lattice_max <= 1e-9, "markov_distance above 1e-9 at a markovian_points output");
  rec.check(ppt_seconds < 120.0, "ppt sweep exceeded 120 s");

  const auto dps_start = Clock::now();
  config.methods = {cli::SweepMethod::ppt, cli::SweepMethod::dps2};
  config.stride = 5;
  const auto strided = cli::sweep(config);
  dps_seconds = std::chrono::duration<double>(Clock::now() - dps_start).count();
  int points = 0;
  int disagree = 0;
  int certified = 0;
  for (std::size_t k = 0; k + 1 < strided.size(); k += 2) {
    const auto& p = strided[k];
    const auto& d = strided[k + 1];
    ++points;
    ctx.tally.add_status("dps2 " + at(d.j, d.h), d.status);
    certified += d.verdict == "quantum_memory";
    if (p.verdict != d.verdict) {
      ++disagree;
      if (disagree <= 5) {
        rec.note("FAIL disagreement at " + at(p.j, p.h) + ": ppt " + p.verdict + " (" + num(p.value) + "), dps2 " +
                 d.verdict + " [" + d.status + "]");
      }
    }
  }
  rec.note(std::to_string(points) + "-point stride grid: dps2 certifies " + std::to_string(certified) +
           ", disagreements with ppt " + std::to_string(disagree) + ", " + num(dps_seconds) + " s");
  rec.check(points == 31 * 31, "stride grid is not 31x31");
  rec.check(disagree == 0, "dps2 and ppt verdicts disagree");
  rec.check(dps_seconds < 900.0, "dps2 stride sweep exceeded 900 s");
}

void self_verification(Context& ctx, Recorder& rec) {
  rec.note(std::to_string(ctx.tally.solved) + " SDPs solved in criteria 2-6, " +
           std::to_string(ctx.tally.failures.size()) + " failed verification");
  for (std::size_t k = 0; k < ctx.tally.failures.size() && k < 10; ++k) rec.note("FAIL " + ctx.tally.failures[k]);
  rec.check(ctx.ran_sdp_criteria && ctx.tally.solved > 0, "criteria 2-6 did not run");
  rec.check(ctx.tally.failures.empty(), "unverified SDP results");

  // Weak duality and the infeasibility certificate at 1e-7 on two reference solves.
  const auto w = ising::process_matrix(1.0, 1.0, 1.0);
  const auto wp = witness_sdp_problem(w.op());
  const auto wr = sdp::solve(wp);
  const auto wv = sdp::verify(wp, wr, 1e-7, 1e-7);
  rec.check(wv.passed(), "witness SDP at (1, 1, 1): " + wv.summary());
  const auto dp = dps2_problem(w.op());
  const auto dr = sdp::solve(dp.problem);
  const auto dv = sdp::verify(dp.problem, dr, 1e-7, 1e-7);
  rec.check(dr.status == sdp::Status::infeasible && dv.passed(), "dps2 certificate at (1, 1, 1): " + dv.summary());
  rec.note("reference solves at (1, 1, 1): witness SDP " + sdp::to_string(wr.status) + ", dps2 " +
           sdp::to_string(dr.status));
}

void structural(Context& ctx, Recorder& rec) {
  std::mt19937_64 rng(ctx.options.seed + 8);
  const auto space = process_space();
  const std::vector<std::string> ai{kAI};
  const std::vector<std::string> bi{kBI};
  const std::vector<std::string> ao_bi{kAO, kBI};
  std::uniform_real_distribution<double> u(0.0, 10.0);

  auto random_valid = [&](int k) {
    if (k % 2 == 0) return ising::process_matrix(u(rng), u(rng), 0.1 + u(rng) / 5.0);
    return classical_memory_process(random_classical_memory(rng(), 1 + k % 4));
  };

  // sz sz 1 shifts the A_I A_O marginal without touching Tr W: a pure comb-condition violation of 0.1.
  int comb_bad = 0;
  int perturb_missed = 0;
  double perturb_error = 0.0;
  const Matrix zz1 = kron(kron(TensorOperator::on(kAI, pauli::z()), TensorOperator::on(kAO, pauli::z())),
                          TensorOperator::on(kBI, pauli::identity()))
                         .matrix();
  for (int k = 0; k < 100; ++k) {
    const auto w = random_valid(k);
    comb_bad += !validate_comb(w.op()).valid();
    const auto bent = validate_comb(TensorOperator(w.op().space(), w.op().matrix() + 0.1 * zz1));
    perturb_missed += bent.comb();
    perturb_error = std::max(perturb_error, std::abs(bent.comb_violation - 0.1));
  }
  rec.note("comb validation: " + std::to_string(comb_bad) + "/100 valid processes rejected, " +
           std::to_string(perturb_missed) + "/100 comb-violating perturbations accepted, violation error " +
           num(perturb_error));
  rec.check(comb_bad == 0 && perturb_missed == 0 && perturb_error <= 1e-9, "comb validation");

  double idem = 0.0;
  double adj = 0.0;
  for (int k = 0; k < 100; ++k) {
    const TensorOperator x(space, random_hermitian(rng, 8));
    const TensorOperator y(space, random_hermitian(rng, 8));
    const auto lx = project_L(x);
    idem = std::max(idem, max_abs(project_L(lx) - lx) / (1.0 + max_abs(x)));
    adj = std::max(adj, std::abs(hs_inner(lx, y) - hs_inner(x, project_L(y))) / (1.0 + frobenius_norm(x) * frobenius_norm(y)));
  }
  rec.note("L projector: idempotence defect " + num(idem) + ", self-adjointness defect " + num(adj));
  rec.check(idem <= 1e-12 && adj <= 1e-12, "L projector");

  double involution = 0.0;
  const std::vector<std::vector<std::string>> subsets{{kAI}, {kAO}, {kBI}, {kAI, kAO}, {kAO, kBI}, {kAI, kAO, kBI}};
  for (int k = 0; k < 100; ++k) {
    std::normal_distribution<double> g;
    Matrix m(8, 8);
    for (int r = 0; r < 8; ++r) {
      for (int c = 0; c < 8; ++c) m(r, c) = Complex(g(rng), g(rng));
    }
    const TensorOperator x(space, m);
    const auto& s = subsets[k % subsets.size()];
    involution = std::max(involution, max_abs(partial_transpose(partial_transpose(x, s), s) - x));
  }
  rec.note("partial transpose involution defect " + num(involution));
  rec.check(involution == 0.0, "partial transpose is not an involution");

  double norm_err = 0.0;
  double min_p = 0.0;
  for (int k = 0; k < 100; ++k) {
    const auto w = random_valid(k);
    const int na = 2 + k % 3;
    const int nb = 2 + (k / 3) % 3;
    const Matrix va = random_isometry(rng, 2 * na, 2);
    const Matrix vb = random_isometry(rng, nb, 2);
    std::vector<InstrumentElement> inst_a;
    std::vector<InstrumentElement> inst_b;
    for (int i = 0; i < na; ++i) {
      Matrix kraus(2, 2);
      for (int o = 0; o < 2; ++o) kraus.row(o) = va.row(o * na + i);
      inst_a.push_back(InstrumentElement::from_kraus(kraus, kAI, kAO));
    }
    for (int i = 0; i < nb; ++i) {
      const Matrix row = vb.row(i);
      inst_b.push_back(InstrumentElement::effect(row.adjoint() * row));
    }
    rec.check(is_complete_instrument(inst_a) && is_complete_instrument(inst_b), "random instrument incomplete");
    double total = 0.0;
    for (const auto& a : inst_a) {
      for (const auto& b : inst_b) {
        const double p = prob_rule(w, a, b);
        min_p = std::min(min_p, p);
        total += p;
      }
    }
    norm_err = std::max(norm_err, std::abs(total - 1.0));
  }
  rec.note("probability rule: max |sum p - 1| " + num(norm_err) + ", min p " + num(min_p));
  rec.check(norm_err <= 1e-9 && min_p >= -1e-12, "probability normalization");

  int differing = 0;
  for (int k = 0; k < 100; ++k) {
    cli::SweepConfig c;
    const double j0 = u(rng);
    const double h0 = u(rng);
    c.j_range = {j0, j0 + 0.5, 0.25};
    c.h_range = {h0, h0 + 0.5, 0.25};
    c.t = 0.5 + u(rng) / 10.0;
    c.methods = {cli::SweepMethod::ppt, cli::SweepMethod::markov_distance};
    if (k % 10 == 0) c.methods.push_back(cli::SweepMethod::ppt_sdp);
    c.workers = 1;
    const auto serial = cli::to_csv(cli::sweep(c));
    c.workers = 4;
    const auto parallel = cli::to_csv(cli::sweep(c));
    differing += serial != parallel;
  }
  rec.note("determinism: " + std::to_string(differing) + "/100 sweeps differ between 1 and 4 workers");
  rec.check(differing == 0, "sweep output depends on the worker count");
}

struct Criterion {
  int id;
  const char* name;
  double budget;
  std::function<void(Context&, Recorder&, CriterionResult&)> body;
};

}  // namespace

std::string summary_line(const CriterionResult& r) {
  char buf[256];
  if (r.budget_seconds > 0.0) {
    std::snprintf(buf, sizeof buf, "criterion %d [%s]: %s (%.2f s, budget %.0f s)", r.id, r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.seconds, r.budget_seconds);
  } else {
    std::snprintf(buf, sizeof buf, "criterion %d [%s]: %s (%.2f s)", r.id, r.name.c_str(),
                  r.passed ? "PASS" : "FAIL", r.seconds);
  }
  return buf;
}

std::vector<CriterionResult> run(const Options& options, std::ostream* log) {
  Context ctx;
  ctx.options = options;
  ctx.log = log;
  double ppt_seconds = 0.0;
  double dps_seconds = 0.0;

  const std::vector<Criterion> criteria{
      {1, "markovian lattice", 1.0, [](Context& c, Recorder& r, CriterionResult&) { markovian_lattice(c, r); }},
      {2, "h=0 classical memory", 30.0, [](Context& c, Recorder& r, CriterionResult&) { h0_classical(c, r); }},
      {3, "quantum memory detection", 300.0, [](Context& c, Recorder& r, CriterionResult&) { detection(c, r); }},
      {4, "sdp/eigen duality", 60.0, [](Context& c, Recorder& r, CriterionResult&) { duality(c, r); }},
      {5, "witness soundness", 120.0, [](Context& c, Recorder& r, CriterionResult&) { soundness(c, r); }},
      {6, "phase diagram", 1020.0,
       [&](Context& c, Recorder& r, CriterionResult&) { phase_diagram(c, r, ppt_seconds, dps_seconds); }},
      {7, "solver self-verification", 0.0, [](Context& c, Recorder& r, CriterionResult&) { self_verification(c, r); }},
      {8, "structural properties", 120.0, [](Context& c, Recorder& r, CriterionResult&) { structural(c, r); }},
  };

  auto selected = [&](int id) {
    return options.only.empty() || std::find(options.only.begin(), options.only.end(), id) != options.only.end();
  };

  std::vector<CriterionResult> results;
  for (const auto& c : criteria) {
    if (!selected(c.id)) continue;
    if (c.id >= 2 && c.id <= 6) ctx.ran_sdp_criteria = true;
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.budget_seconds = c.budget;
    r.passed = true;
    if (log) *log << "criterion " << c.id << " [" << c.name << "] running\n" << std::flush;
    Recorder rec(r, log);
    const auto start = Clock::now();
    try {
      c.body(ctx, rec, r);
    } catch (const std::exception& e) {
      rec.check(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.budget > 0.0 && r.seconds > c.budget) rec.check(false, "runtime " + num(r.seconds) + " s over budget");
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace qmem::acceptance
