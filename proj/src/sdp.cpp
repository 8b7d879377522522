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

#include "qmem/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qmem::sdp {

namespace {

using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Blocks = std::vector<RMat>;

struct Entry {
  int block;
  int row;
  int col;
  double value;
};

// Real symmetric form of the problem. Every complex block of side n becomes a
// real block of side 2n holding embed(H) / 2, so that Tr(A_r Y) = Tr(A X) for
// the structured Y = embed(X) and all objective and constraint values match.
struct RealProblem {
  std::vector<int> sizes;
  Blocks c;
  bool has_objective = false;
  std::vector<std::vector<Entry>> a;
  RVec b;
};

bool is_zero_block(const Matrix& m) { return m.size() == 0; }

void append_embedded(const Matrix& h, int block, std::vector<Entry>& out) {
  const int n = static_cast<int>(h.rows());
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const double re = 0.5 * h(p, q).real();
      const double im = 0.5 * h(p, q).imag();
      if (re != 0.0) {
        out.push_back({block, p, q, re});
        out.push_back({block, n + p, n + q, re});
      }
      if (im != 0.0) {
        out.push_back({block, p, n + q, -im});
        out.push_back({block, n + p, q, im});
      }
    }
  }
}

RMat embed_dense(const Matrix& h) {
  const int n = static_cast<int>(h.rows());
  RMat out(2 * n, 2 * n);
  const Matrix hs = 0.5 * (h + h.adjoint());
  const RMat re = 0.5 * hs.real();
  const RMat im = 0.5 * hs.imag();
  out.topLeftCorner(n, n) = re;
  out.bottomRightCorner(n, n) = re;
  out.topRightCorner(n, n) = -im;
  out.bottomLeftCorner(n, n) = im;
  return out;
}

// Orthogonal projection onto the complex-structured subspace, read back as a
// complex matrix. PSD is preserved.
Matrix unembed(const RMat& y) {
  const int n = static_cast<int>(y.rows()) / 2;
  const RMat p = y.topLeftCorner(n, n);
  const RMat q = y.topRightCorner(n, n);
  const RMat qt = y.bottomLeftCorner(n, n);
  const RMat r = y.bottomRightCorner(n, n);
  Matrix out(n, n);
  out.real() = 0.5 * (p + r);
  out.imag() = 0.5 * (qt - q);
  return out;
}

RealProblem to_real(const Problem& p) {
  RealProblem rp;
  for (int n : p.blocks) rp.sizes.push_back(2 * n);
  rp.has_objective = p.objective.has_value();
  for (std::size_t k = 0; k < p.blocks.size(); ++k) {
    const int n = rp.sizes[k];
    if (rp.has_objective && !is_zero_block((*p.objective)[k])) {
      rp.c.push_back(embed_dense((*p.objective)[k]));
    } else {
      rp.c.push_back(RMat::Zero(n, n));
    }
  }
  if (rp.has_objective) {
    bool all_zero = true;
    for (const auto& blk : rp.c) all_zero = all_zero && blk.isZero(0.0);
    rp.has_objective = !all_zero;
  }
  rp.a.resize(p.constraints.size());
  rp.b.resize(static_cast<Eigen::Index>(p.constraints.size()));
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    const auto& con = p.constraints[k];
    for (std::size_t blk = 0; blk < con.lhs.size(); ++blk) {
      if (!is_zero_block(con.lhs[blk])) append_embedded(con.lhs[blk], static_cast<int>(blk), rp.a[k]);
    }
    rp.b(static_cast<Eigen::Index>(k)) = con.rhs;
  }
  return rp;
}

double inner(const Blocks& a, const Blocks& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].array() * b[k].array()).sum();
  return s;
}

double fro(const Blocks& a) { return std::sqrt(inner(a, a)); }

Blocks identity_blocks(const std::vector<int>& sizes) {
  Blocks out;
  for (int n : sizes) out.push_back(RMat::Identity(n, n));
  return out;
}

Blocks zero_blocks(const std::vector<int>& sizes) {
  Blocks out;
  for (int n : sizes) out.push_back(RMat::Zero(n, n));
  return out;
}

void axpy(Blocks& y, double alpha, const Blocks& x) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += alpha * x[k];
}

Blocks scaled(const Blocks& x, double alpha) {
  Blocks out = x;
  for (auto& blk : out) blk *= alpha;
  return out;
}

RMat sym(const RMat& m) { return 0.5 * (m + m.transpose()); }

class Operators {
 public:
  explicit Operators(const RealProblem& rp) : rp_(rp) {}

  RVec apply(const Blocks& x) const {
    RVec out(static_cast<Eigen::Index>(rp_.a.size()));
    for (std::size_t k = 0; k < rp_.a.size(); ++k) {
      double s = 0.0;
      for (const auto& e : rp_.a[k]) s += e.value * x[e.block](e.col, e.row);
      out(static_cast<Eigen::Index>(k)) = s;
    }
    return out;
  }

  Blocks adjoint(const RVec& y) const {
    Blocks out = zero_blocks(rp_.sizes);
    for (std::size_t k = 0; k < rp_.a.size(); ++k) {
      const double yk = y(static_cast<Eigen::Index>(k));
      if (yk == 0.0) continue;
      for (const auto& e : rp_.a[k]) out[e.block](e.row, e.col) += yk * e.value;
    }
    return out;
  }

  // M_kl = Tr(A_k X A_l S^{-1})
  RMat schur(const Blocks& x, const Blocks& s_inv) const {
    const auto m = static_cast<Eigen::Index>(rp_.a.size());
    RMat out(m, m);
    Blocks p = zero_blocks(rp_.sizes);
    std::vector<char> touched(rp_.sizes.size(), 0);
    for (Eigen::Index l = 0; l < m; ++l) {
      std::fill(touched.begin(), touched.end(), 0);
      for (const auto& f : rp_.a[static_cast<std::size_t>(l)]) {
        if (!touched[f.block]) {
          p[f.block].setZero();
          touched[f.block] = 1;
        }
        p[f.block].noalias() += f.value * x[f.block].col(f.row) * s_inv[f.block].row(f.col);
      }
      for (Eigen::Index k = 0; k < m; ++k) {
        double s = 0.0;
        for (const auto& e : rp_.a[static_cast<std::size_t>(k)]) {
          if (touched[e.block]) s += e.value * p[e.block](e.col, e.row);
        }
        out(k, l) = s;
      }
    }
    return 0.5 * (out + out.transpose());
  }

 private:
  const RealProblem& rp_;
};

// Largest alpha with x + alpha * dx >= 0, or +inf.
double max_step(const Blocks& x, const Blocks& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    Eigen::LLT<RMat> llt(x[k]);
    if (llt.info() != Eigen::Success) return 0.0;
    RMat w = llt.matrixL().solve(dx[k]);
    w = llt.matrixL().solve(w.transpose()).transpose();
    Eigen::SelfAdjointEigenSolver<RMat> eig(sym(w), Eigen::EigenvaluesOnly);
    const double lmin = eig.eigenvalues()(0);
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

struct Direction {
  Blocks dx;
  Blocks ds;
  RVec dy;
  double dtau = 0.0;
  double dkappa = 0.0;
};

double min_block_eigenvalue(const BlockMatrix& blocks) {
  double lmin = std::numeric_limits<double>::infinity();
  for (const auto& blk : blocks) {
    if (blk.size() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (blk + blk.adjoint()), Eigen::EigenvaluesOnly);
    lmin = std::min(lmin, eig.eigenvalues()(0));
  }
  return lmin;
}

Matrix block_or_zero(const BlockMatrix& blocks, std::size_t k, int n) {
  if (k < blocks.size() && blocks[k].size() != 0) return blocks[k];
  return Matrix::Zero(n, n);
}

nlohmann::json block_json(const Matrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ii = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return {{"re", re}, {"im", im}};
}

nlohmann::json blocks_json(const BlockMatrix& blocks) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& b : blocks) out.push_back(block_json(b));
  return out;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::max_iterations: return "max_iterations";
    case Status::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

double block_inner(const BlockMatrix& a, const BlockMatrix& x) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.size() && k < x.size(); ++k) {
    if (a[k].size() == 0 || x[k].size() == 0) continue;
    s += (a[k].array() * x[k].transpose().array()).sum();
  }
  return s.real();
}

BlockMatrix block_zero(const std::vector<int>& blocks) {
  BlockMatrix out;
  for (int n : blocks) out.push_back(Matrix::Zero(n, n));
  return out;
}

void validate(const Problem& p) {
  if (p.blocks.empty()) throw std::invalid_argument("sdp: no blocks");
  long real_dim = 0;
  for (int n : p.blocks) {
    if (n < 1) throw std::invalid_argument("sdp: block sizes must be positive");
    real_dim += static_cast<long>(n) * n;
  }
  if (static_cast<long>(p.constraints.size()) > real_dim) {
    throw std::invalid_argument("sdp: more constraints than variable dimensions");
  }
  auto check_blocks = [&](const BlockMatrix& bm, const std::string& what) {
    if (bm.size() != p.blocks.size()) throw std::invalid_argument("sdp: " + what + " has wrong block count");
    for (std::size_t k = 0; k < bm.size(); ++k) {
      if (bm[k].size() == 0) continue;
      if (bm[k].rows() != p.blocks[k] || bm[k].cols() != p.blocks[k]) {
        throw std::invalid_argument("sdp: " + what + " block " + std::to_string(k) + " has wrong shape");
      }
      if ((bm[k] - bm[k].adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
        throw NotHermitianError("sdp: " + what + " block " + std::to_string(k) + " is not Hermitian");
      }
    }
  };
  if (p.objective) check_blocks(*p.objective, "objective");
  for (std::size_t k = 0; k < p.constraints.size(); ++k) {
    check_blocks(p.constraints[k].lhs, "constraint " + std::to_string(k));
    if (!std::isfinite(p.constraints[k].rhs)) throw std::invalid_argument("sdp: non-finite rhs");
  }
}

Result solve(const Problem& problem, const Options& opt) {
  validate(problem);
  const RealProblem rp = to_real(problem);
  const Operators ops(rp);
  const auto m = static_cast<Eigen::Index>(rp.a.size());

  double nu = 1.0;
  for (int n : rp.sizes) nu += n;
  const double b_norm = rp.b.norm();
  const double c_norm = fro(rp.c);

  Blocks x = identity_blocks(rp.sizes);
  Blocks s = identity_blocks(rp.sizes);
  RVec y = RVec::Zero(m);
  double tau = 1.0;
  double kappa = 1.0;

  Result result;
  result.status = Status::max_iterations;

  auto finish_optimal = [&](int it) {
    result.status = Status::optimal;
    result.iterations = it;
    for (std::size_t k = 0; k < rp.sizes.size(); ++k) {
      result.x.push_back(unembed(x[k] / tau));
      result.s.push_back(2.0 * unembed(s[k] / tau));
    }
    result.y.assign(y.data(), y.data() + y.size());
    for (auto& v : result.y) v /= tau;
  };
  // Breakdown close to the solution still yields an answer for verify() to judge.
  auto breakdown = [&](int it) {
    if (result.primal_residual <= opt.stall_tolerance && result.dual_residual <= opt.stall_tolerance &&
        result.gap <= opt.stall_tolerance) {
      finish_optimal(it);
    } else {
      result.status = Status::numerical_failure;
    }
    return result;
  };

  for (int it = 0; it <= opt.max_iterations; ++it) {
    const RVec ax = ops.apply(x);
    const Blocks aty = ops.adjoint(y);
    const RVec rp_res = ax - rp.b * tau;
    Blocks rd = scaled(rp.c, tau);
    axpy(rd, -1.0, aty);
    axpy(rd, -1.0, s);
    const double cx = inner(rp.c, x);
    const double by = rp.b.dot(y);
    const double rg = by - cx - kappa;
    const double mu = (inner(x, s) + tau * kappa) / nu;

    result.primal_objective = cx / tau;
    result.dual_objective = by / tau;
    result.primal_residual = rp_res.norm() / tau / (1.0 + b_norm);
    result.dual_residual = fro(rd) / tau / (1.0 + c_norm);
    result.gap = std::abs(cx - by) / tau / (1.0 + std::abs(cx / tau));
    result.iterations = it;

    if (result.primal_residual <= opt.tolerance && result.dual_residual <= opt.tolerance &&
        result.gap <= opt.tolerance) {
      finish_optimal(it);
      return result;
    }

    // Rays of the embedding: tau -> 0 with kappa > 0.
    if (by > 0.0) {
      Blocks cert = aty;
      axpy(cert, 1.0, s);
      if (fro(cert) / by <= opt.infeasibility_tolerance ||
          (tau / kappa <= opt.ray_ratio && fro(cert) / by <= 10 * opt.infeasibility_tolerance)) {
        result.status = Status::infeasible;
        result.y.assign(y.data(), y.data() + y.size());
        for (auto& v : result.y) v /= by;
        const Blocks slack = ops.adjoint(-y / by);
        for (const auto& blk : slack) result.s.push_back(2.0 * unembed(blk));
        return result;
      }
    }
    if (cx < 0.0) {
      if (ax.norm() / -cx <= opt.infeasibility_tolerance) {
        result.status = Status::unbounded;
        for (const auto& blk : x) result.x.push_back(unembed(blk / -cx));
        return result;
      }
    }
    if (it == opt.max_iterations) break;

    Blocks s_inv;
    for (const auto& blk : s) {
      Eigen::LLT<RMat> llt(blk);
      if (llt.info() != Eigen::Success) return breakdown(it);
      s_inv.push_back(llt.solve(RMat::Identity(blk.rows(), blk.cols())));
    }

    const RMat schur = ops.schur(x, s_inv);
    Eigen::LLT<RMat> schur_llt(schur);
    if (schur_llt.info() != Eigen::Success) {
      // Lost definiteness near the solution: shift the diagonal slightly.
      const double scale = std::max(schur.diagonal().cwiseAbs().maxCoeff(), 1.0);
      bool ok = false;
      for (double shift = 1e-14; shift <= 1e-8 && !ok; shift *= 100.0) {
        schur_llt.compute(schur + shift * scale * RMat::Identity(m, m));
        ok = schur_llt.info() == Eigen::Success;
      }
      if (!ok) return breakdown(it);
    }
    auto schur_solve = [&](const RVec& rhs) -> RVec { return schur_llt.solve(rhs); };

    auto hkm = [&](const Blocks& mat) {
      Blocks out;
      for (std::size_t k = 0; k < mat.size(); ++k) out.push_back(sym(x[k] * mat[k] * s_inv[k]));
      return out;
    };

    RVec g = RVec::Zero(m);
    double cc = 0.0;
    if (rp.has_objective) {
      const Blocks hc = hkm(rp.c);
      g = ops.apply(hc);
      cc = inner(rp.c, hc);
    }
    const RVec v = schur_solve(g + rp.b);

    auto direction = [&](double sigma, double eta, const Direction* pred) {
      Blocks gterm;
      for (std::size_t k = 0; k < x.size(); ++k) {
        RMat blk = sigma * mu * s_inv[k] - x[k];
        if (pred) blk -= sym(pred->dx[k] * pred->ds[k] * s_inv[k]);
        gterm.push_back(std::move(blk));
      }
      const double corr_tk = pred ? pred->dtau * pred->dkappa : 0.0;
      Blocks r0 = gterm;
      axpy(r0, -eta, hkm(rd));
      const RVec rhs1 = -eta * rp_res - ops.apply(r0);
      const double rhs2 =
          -eta * rg + inner(rp.c, r0) + (sigma * mu - tau * kappa - corr_tk) / tau;
      const RVec u = schur_solve(rhs1);
      const RVec bg = rp.b - g;
      Direction d;
      d.dtau = (rhs2 - bg.dot(u)) / (bg.dot(v) + cc + kappa / tau);
      d.dy = u + v * d.dtau;
      d.ds = scaled(rp.c, d.dtau);
      axpy(d.ds, -1.0, ops.adjoint(d.dy));
      axpy(d.ds, eta, rd);
      d.dx = gterm;
      axpy(d.dx, -1.0, hkm(d.ds));
      d.dkappa = (sigma * mu - tau * kappa - corr_tk - kappa * d.dtau) / tau;
      return d;
    };

    auto step_length = [&](const Direction& d) {
      double a = std::min(max_step(x, d.dx), max_step(s, d.ds));
      if (d.dtau < 0.0) a = std::min(a, -tau / d.dtau);
      if (d.dkappa < 0.0) a = std::min(a, -kappa / d.dkappa);
      return a;
    };

    const Direction pred = direction(0.0, 1.0, nullptr);
    const double alpha_pred = std::min(1.0, step_length(pred));
    double mu_aff = 0.0;
    {
      Blocks xa = x;
      Blocks sa = s;
      axpy(xa, alpha_pred, pred.dx);
      axpy(sa, alpha_pred, pred.ds);
      mu_aff = (inner(xa, sa) + (tau + alpha_pred * pred.dtau) * (kappa + alpha_pred * pred.dkappa)) / nu;
    }
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);
    const Direction d = direction(sigma, 1.0 - sigma, &pred);
    const double alpha = std::min(1.0, opt.step_fraction * step_length(d));
    if (!(alpha > 1e-12) || !std::isfinite(alpha)) return breakdown(it);

    axpy(x, alpha, d.dx);
    axpy(s, alpha, d.ds);
    y += alpha * d.dy;
    tau += alpha * d.dtau;
    kappa += alpha * d.dkappa;
    for (auto& blk : x) blk = sym(blk);
    for (auto& blk : s) blk = sym(blk);
  }

  result.status = Status::max_iterations;
  result.iterations = opt.max_iterations;
  return result;
}

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.passed ? "ok   " : "FAIL ") << c.name << " = " << c.value << " (tol " << c.tolerance << ")\n";
  }
  return os.str();
}

VerifyReport verify(const Problem& p, const Result& r, double residual_tol, double gap_tol) {
  VerifyReport report;
  auto add = [&](std::string name, double value, double tol, bool ok) {
    report.checks.push_back({std::move(name), value, tol, ok});
  };

  BlockMatrix c = p.objective ? *p.objective : BlockMatrix(p.blocks.size());
  for (std::size_t k = 0; k < p.blocks.size(); ++k) c[k] = block_or_zero(c, k, p.blocks[k]);

  auto weighted_sum = [&](const std::vector<double>& y) {
    BlockMatrix out = block_zero(p.blocks);
    for (std::size_t k = 0; k < p.constraints.size() && k < y.size(); ++k) {
      for (std::size_t blk = 0; blk < p.blocks.size(); ++blk) {
        const auto& a = p.constraints[k].lhs[blk];
        if (a.size() != 0) out[blk] += y[k] * a;
      }
    }
    return out;
  };

  switch (r.status) {
    case Status::optimal: {
      if (r.x.size() != p.blocks.size() || r.y.size() != p.constraints.size()) {
        add("result shape", 1.0, 0.0, false);
        break;
      }
      double res2 = 0.0;
      double b2 = 0.0;
      for (std::size_t k = 0; k < p.constraints.size(); ++k) {
        const double d = block_inner(p.constraints[k].lhs, r.x) - p.constraints[k].rhs;
        res2 += d * d;
        b2 += p.constraints[k].rhs * p.constraints[k].rhs;
      }
      const double pres = std::sqrt(res2) / (1.0 + std::sqrt(b2));
      add("primal residual", pres, residual_tol, pres <= residual_tol);

      const double xmin = min_block_eigenvalue(r.x);
      add("primal psd", std::max(0.0, -xmin), residual_tol, xmin >= -residual_tol);

      BlockMatrix slack = c;
      const BlockMatrix ay = weighted_sum(r.y);
      double c_norm2 = 0.0;
      for (std::size_t k = 0; k < slack.size(); ++k) {
        slack[k] -= ay[k];
        c_norm2 += c[k].squaredNorm();
      }
      const double smin = min_block_eigenvalue(slack);
      const double dres = std::max(0.0, -smin) / (1.0 + std::sqrt(c_norm2));
      add("dual psd", dres, residual_tol, dres <= residual_tol);

      const double pobj = block_inner(c, r.x);
      double dobj = 0.0;
      for (std::size_t k = 0; k < p.constraints.size(); ++k) dobj += r.y[k] * p.constraints[k].rhs;
      const double scale = 1.0 + std::abs(pobj);
      add("duality gap", std::abs(pobj - dobj) / scale, gap_tol, std::abs(pobj - dobj) <= gap_tol * scale);
      add("weak duality", dobj - pobj, gap_tol * scale, dobj <= pobj + gap_tol * scale);
      break;
    }
    case Status::infeasible: {
      if (r.y.size() != p.constraints.size()) {
        add("certificate shape", 1.0, 0.0, false);
        break;
      }
      double by = 0.0;
      for (std::size_t k = 0; k < p.constraints.size(); ++k) by += r.y[k] * p.constraints[k].rhs;
      add("certificate b^T y > 0", by, 0.0, by > 0.0);
      if (by > 0.0) {
        std::vector<double> yn = r.y;
        for (auto& v : yn) v /= by;
        BlockMatrix cert = weighted_sum(yn);
        for (auto& blk : cert) blk = -blk;
        const double smin = min_block_eigenvalue(cert);
        add("certificate psd", std::max(0.0, -smin), residual_tol, smin >= -residual_tol);
      }
      break;
    }
    case Status::unbounded: {
      if (r.x.size() != p.blocks.size()) {
        add("ray shape", 1.0, 0.0, false);
        break;
      }
      const double cx = block_inner(c, r.x);
      add("ray objective < 0", cx, 0.0, cx < 0.0);
      double res2 = 0.0;
      for (const auto& con : p.constraints) {
        const double d = block_inner(con.lhs, r.x);
        res2 += d * d;
      }
      const double rel = cx < 0.0 ? std::sqrt(res2) / -cx : std::sqrt(res2);
      add("ray residual", rel, residual_tol, rel <= residual_tol);
      const double xmin = min_block_eigenvalue(r.x);
      add("ray psd", std::max(0.0, -xmin), residual_tol, xmin >= -residual_tol);
      break;
    }
    default:
      add("status " + to_string(r.status), 1.0, 0.0, false);
  }
  return report;
}

nlohmann::json to_json(const Problem& p) {
  nlohmann::json cons = nlohmann::json::array();
  for (const auto& c : p.constraints) {
    BlockMatrix lhs;
    for (std::size_t k = 0; k < p.blocks.size(); ++k) lhs.push_back(block_or_zero(c.lhs, k, p.blocks[k]));
    cons.push_back({{"lhs", blocks_json(lhs)}, {"rhs", c.rhs}});
  }
  nlohmann::json obj = nullptr;
  if (p.objective) obj = blocks_json(*p.objective);
  return {{"blocks", p.blocks}, {"objective", obj}, {"constraints", cons}};
}

nlohmann::json to_json(const Result& r) {
  return {{"status", to_string(r.status)},
          {"blocks", blocks_json(r.x)},
          {"y", r.y},
          {"slack", blocks_json(r.s)},
          {"primal_objective", r.primal_objective},
          {"dual_objective", r.dual_objective},
          {"iterations", r.iterations},
          {"primal_residual", r.primal_residual},
          {"dual_residual", r.dual_residual},
          {"gap", r.gap}};
}

}  // namespace qmem::sdp
