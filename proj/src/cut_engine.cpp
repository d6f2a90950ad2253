// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/cut_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace bicut {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Variable offsets of the cut-generating program.
struct Layout {
  int n1 = 0, n2 = 0, mb = 0, mt = 0, nr = 0;
  int alpha = 0, beta = 0, tau = 0, pi1 = 0, pi2 = 0, pt1 = 0, pt2 = 0, sigma = 0, rho = 0;
  int nv = 0;
  int multipliers = 0;

  explicit Layout(const CGLPDescription& d) {
    n1 = static_cast<int>(d.x_star.size());
    n2 = static_cast<int>(d.y_star.size());
    mb = d.bar.rows();
    mt = static_cast<int>(d.ht.size());
    nr = static_cast<int>(d.disjunction.c_tilde.size());
    alpha = 0;
    beta = alpha + n1;
    tau = beta + n2;
    pi1 = tau + 1;
    pi2 = pi1 + mb;
    pt1 = pi2 + mb;
    pt2 = pt1 + mt;
    sigma = pt2 + mt;
    rho = sigma + 1;
    nv = rho + nr;
    multipliers = nv - pi1;
  }
};

void check_description(const CGLPDescription& d) {
  const auto n1 = d.x_star.size();
  const auto n2 = d.y_star.size();
  const auto& dj = d.disjunction;
  if (d.bar.Mbar.cols() != n1 || d.bar.Nbar.cols() != n2 || d.bar.Mbar.rows() != d.bar.hbar.size() ||
      d.bar.Nbar.rows() != d.bar.hbar.size()) {
    throw std::invalid_argument("CG-SOCP: bar-system dimension mismatch");
  }
  if (d.Mt.rows() != d.ht.size() || d.Nt.rows() != d.ht.size() ||
      (d.ht.size() > 0 && (d.Mt.cols() != n1 || d.Nt.cols() != n2))) {
    throw std::invalid_argument("CG-SOCP: conic rows dimension mismatch");
  }
  int total = 0;
  for (int q : d.cones) total += q;
  if (total != d.ht.size()) throw std::invalid_argument("CG-SOCP: cone sizes do not match rows");
  if (dj.d1_a.size() != n1 || dj.D_tilde.cols() != n2 || dj.D_tilde.rows() != dj.c_tilde.size()) {
    throw std::invalid_argument("CG-SOCP: disjunction dimension mismatch");
  }
  if (d.lb.size() != n1 + n2 || d.ub.size() != n1 + n2) {
    throw std::invalid_argument("CG-SOCP: box dimension mismatch");
  }
}

// Projects the multiplier part of a solution onto the sign constraints and
// cones.
Vector project_multipliers(const Vector& raw, const Layout& L, const std::vector<int>& cones) {
  Vector v = raw;
  for (int i = 0; i < 2 * L.mb; ++i) v[L.pi1 + i] = std::max(0.0, v[L.pi1 + i]);
  for (int base : {L.pt1, L.pt2}) {
    int off = base;
    for (int q : cones) {
      v.segment(off, q) = lorentz_project(v.segment(off, q));
      off += q;
    }
  }
  v[L.sigma] = std::min(0.0, v[L.sigma]);
  v.segment(L.rho, L.nr) = lorentz_project(v.segment(L.rho, L.nr));
  return v;
}

// Lower bound of delta'z over lb <= z <= ub.
double box_minimum(const Vector& delta, const Vector& lb, const Vector& ub) {
  double total = 0.0;
  for (int j = 0; j < delta.size(); ++j) total += std::min(delta[j] * lb[j], delta[j] * ub[j]);
  return total;
}

}  // namespace

Disjunction build_disjunction(const Instance& inst, const Vector& y_hat) {
  if (y_hat.size() != inst.n2) throw std::invalid_argument("y_hat has wrong dimension");
  if (!is_integral(y_hat, 0.0)) throw std::invalid_argument("y_hat must be integral");
  Disjunction d;
  d.y_hat = y_hat;
  d.q_hat = evaluate_q(inst, y_hat);
  d.d1_a = inst.a;
  d.d1_rhs = inst.f - inst.b.dot(y_hat) - 1.0;
  const int n3 = inst.n3();
  d.D_tilde.resize(n3 + 2, inst.n2);
  d.D_tilde.row(0) = -0.5 * inst.g.transpose();
  d.D_tilde.middleRows(1, n3) = inst.V;
  d.D_tilde.row(n3 + 1) = 0.5 * inst.g.transpose();
  d.c_tilde = Vector::Zero(n3 + 2);
  d.c_tilde[0] = (-1.0 - d.q_hat) / 2.0;
  d.c_tilde[n3 + 1] = (-1.0 + d.q_hat) / 2.0;
  return d;
}

CGLPDescription describe(const PolyhedralRelaxation& relax, const Vector& lb, const Vector& ub,
                         std::span<const LinearRow> local_cuts, bool root,
                         const Disjunction& disjunction, const Point& point, double eps) {
  CGLPDescription d;
  d.bar = bar_system(relax, lb, ub, local_cuts);
  d.Mt = relax.conic.coef.leftCols(relax.n1);
  d.Nt = relax.conic.coef.rightCols(relax.n2);
  d.ht = relax.conic.rhs;
  d.cones = relax.conic.cones;
  d.disjunction = disjunction;
  d.x_star = point.x;
  d.y_star = point.y;
  d.lb = lb;
  d.ub = ub;
  d.root = root;
  d.eps = eps;
  return d;
}

ConeProgram assemble_cgsocp(const CGLPDescription& d) {
  check_description(d);
  const Layout L(d);
  const auto& dj = d.disjunction;
  const Matrix& Mb = d.bar.Mbar;
  const Matrix& Nb = d.bar.Nbar;

  ConeProgram cp;
  cp.sense = Sense::maximize;
  cp.c = Vector::Zero(L.nv);
  cp.c.segment(L.alpha, L.n1) = -d.x_star;
  cp.c.segment(L.beta, L.n2) = -d.y_star;
  cp.c[L.tau] = 1.0;

  // (eq1)-(eq4) as  alpha - ... = 0,  beta - ... = 0.
  const int p = 2 * L.n1 + 2 * L.n2;
  cp.A = Matrix::Zero(p, L.nv);
  cp.b = Vector::Zero(p);
  int r = 0;
  cp.A.block(r, L.alpha, L.n1, L.n1).setIdentity();
  cp.A.block(r, L.pi1, L.n1, L.mb) = -Mb.transpose();
  if (L.mt > 0) cp.A.block(r, L.pt1, L.n1, L.mt) = -d.Mt.transpose();
  cp.A.block(r, L.sigma, L.n1, 1) = -dj.d1_a;
  r += L.n1;
  cp.A.block(r, L.alpha, L.n1, L.n1).setIdentity();
  cp.A.block(r, L.pi2, L.n1, L.mb) = -Mb.transpose();
  if (L.mt > 0) cp.A.block(r, L.pt2, L.n1, L.mt) = -d.Mt.transpose();
  r += L.n1;
  cp.A.block(r, L.beta, L.n2, L.n2).setIdentity();
  cp.A.block(r, L.pi1, L.n2, L.mb) = -Nb.transpose();
  if (L.mt > 0) cp.A.block(r, L.pt1, L.n2, L.mt) = -d.Nt.transpose();
  r += L.n2;
  cp.A.block(r, L.beta, L.n2, L.n2).setIdentity();
  cp.A.block(r, L.pi2, L.n2, L.mb) = -Nb.transpose();
  if (L.mt > 0) cp.A.block(r, L.pt2, L.n2, L.mt) = -d.Nt.transpose();
  cp.A.block(r, L.rho, L.n2, L.nr) = -dj.D_tilde.transpose();

  // Cone rows h - G x:
  //   orthant: (eq5), (eq6), pi1, pi2, -sigma;
  //   Lorentz: pt1 blocks, pt2 blocks, rho, (1, multipliers).
  const int nonneg = 2 + 2 * L.mb + 1;
  const int m = nonneg + 2 * L.mt + L.nr + 1 + L.multipliers;
  cp.G = Matrix::Zero(m, L.nv);
  cp.h = Vector::Zero(m);
  r = 0;
  cp.G(r, L.tau) = 1.0;
  cp.G.block(r, L.pi1, 1, L.mb) = -d.bar.hbar.transpose();
  if (L.mt > 0) cp.G.block(r, L.pt1, 1, L.mt) = -d.ht.transpose();
  cp.G(r, L.sigma) = -dj.d1_rhs;
  ++r;
  cp.G(r, L.tau) = 1.0;
  cp.G.block(r, L.pi2, 1, L.mb) = -d.bar.hbar.transpose();
  if (L.mt > 0) cp.G.block(r, L.pt2, 1, L.mt) = -d.ht.transpose();
  cp.G.block(r, L.rho, 1, L.nr) = -dj.c_tilde.transpose();
  ++r;
  cp.G.block(r, L.pi1, 2 * L.mb, 2 * L.mb) = -Matrix::Identity(2 * L.mb, 2 * L.mb);
  r += 2 * L.mb;
  cp.G(r, L.sigma) = 1.0;
  ++r;
  cp.G.block(r, L.pt1, 2 * L.mt + 0, 2 * L.mt) = -Matrix::Identity(2 * L.mt, 2 * L.mt);
  r += 2 * L.mt;
  cp.G.block(r, L.rho, L.nr, L.nr) = -Matrix::Identity(L.nr, L.nr);
  r += L.nr;
  cp.h[r] = 1.0;
  ++r;
  cp.G.block(r, L.pi1, L.multipliers, L.multipliers) =
      -Matrix::Identity(L.multipliers, L.multipliers);

  cp.cones.nonneg = nonneg;
  cp.cones.lorentz.clear();
  for (int k = 0; k < 2; ++k) {
    for (int q : d.cones) cp.cones.lorentz.push_back(q);
  }
  cp.cones.lorentz.push_back(L.nr);
  cp.cones.lorentz.push_back(1 + L.multipliers);
  return cp;
}

Vector cgsocp_multipliers(const ConicResult& result, const CGLPDescription& desc) {
  const Layout L(desc);
  return result.x.segment(L.pi1, L.multipliers);
}

std::optional<Cut> extract_cut(const ConicResult& result, const CGLPDescription& d,
                               std::string* diagnostic) {
  const Layout L(d);
  if (result.status != ConicStatus::optimal) {
    if (diagnostic) *diagnostic = "CG-SOCP solver status " + std::string(to_string(result.status));
    return std::nullopt;
  }
  if (result.x.size() != L.nv) throw std::invalid_argument("CG-SOCP result has wrong size");
  const auto& dj = d.disjunction;
  const Vector v = project_multipliers(result.x, L, d.cones);
  const auto pi1 = v.segment(L.pi1, L.mb);
  const auto pi2 = v.segment(L.pi2, L.mb);
  const auto pt1 = v.segment(L.pt1, L.mt);
  const auto pt2 = v.segment(L.pt2, L.mt);
  const double sigma = v[L.sigma];
  const auto rho = v.segment(L.rho, L.nr);

  // Each term gives an exactly valid inequality for its disjunct over P.
  const int n = L.n1 + L.n2;
  Vector coef1(n), coef2(n);
  coef1.head(L.n1) = d.bar.Mbar.transpose() * pi1 + sigma * dj.d1_a;
  coef1.tail(L.n2) = d.bar.Nbar.transpose() * pi1;
  coef2.head(L.n1) = d.bar.Mbar.transpose() * pi2;
  coef2.tail(L.n2) = d.bar.Nbar.transpose() * pi2 + dj.D_tilde.transpose() * rho;
  double tau1 = d.bar.hbar.dot(pi1) + sigma * dj.d1_rhs;
  double tau2 = d.bar.hbar.dot(pi2) + dj.c_tilde.dot(rho);
  if (L.mt > 0) {
    coef1.head(L.n1) += d.Mt.transpose() * pt1;
    coef1.tail(L.n2) += d.Nt.transpose() * pt1;
    coef2.head(L.n1) += d.Mt.transpose() * pt2;
    coef2.tail(L.n2) += d.Nt.transpose() * pt2;
    tau1 += d.ht.dot(pt1);
    tau2 += d.ht.dot(pt2);
  }

  Cut cut;
  cut.alpha = result.x.segment(L.alpha, L.n1);
  cut.beta = result.x.segment(L.beta, L.n2);
  Vector coef(n);
  coef << cut.alpha, cut.beta;
  tau1 += box_minimum(coef - coef1, d.lb, d.ub);
  tau2 += box_minimum(coef - coef2, d.lb, d.ub);
  cut.tau = std::min(tau1, tau2);
  cut.scope = d.root ? CutScope::global : CutScope::local;
  cut.violation_at_source = cut.tau - cut.alpha.dot(d.x_star) - cut.beta.dot(d.y_star);
  if (!(cut.violation_at_source > d.eps)) {
    if (diagnostic) *diagnostic = "violation below threshold";
    return std::nullopt;
  }
  return cut;
}

SeparationResult separate(const Point& point, Strategy strategy, const SeparationContext& ctx) {
  SeparationResult out;
  const Instance& inst = ctx.inst;
  const double q_star = evaluate_q(inst, point.y);

  auto try_candidate = [&](const Vector& y_hat) -> std::optional<Cut> {
    const auto t0 = Clock::now();
    const Disjunction dj = build_disjunction(inst, y_hat);
    const CGLPDescription desc =
        describe(ctx.relax, ctx.lb, ctx.ub, ctx.local_cuts, ctx.root, dj, point, ctx.eps);
    const ConicResult res = solve_conic(assemble_cgsocp(desc));
    ++out.socp_solves;
    auto cut = extract_cut(res, desc, &out.diagnostic);
    out.t_socp += seconds_since(t0);
    return cut;
  };

  FollowerQuery query;
  query.x_star = point.x;
  query.cutoff = q_star;
  query.deadline = ctx.deadline;
  const auto t0 = Clock::now();
  if (strategy == Strategy::O) {
    query.mode = FollowerMode::to_optimality;
    const FollowerResult fr = solve_follower(inst, query);
    out.t_follower += seconds_since(t0);
    out.follower_status = fr.status;
    if (fr.status == FollowerStatus::optimal) {
      out.candidate = true;
      out.cut = try_candidate(fr.best_y);
    }
    return out;
  }

  query.mode = FollowerMode::stream;
  const FollowerResult fr = solve_follower(inst, query, [&](const Vector& y_hat, double) {
    out.candidate = true;
    out.cut = try_candidate(y_hat);
    return !out.cut.has_value();
  });
  out.t_follower += seconds_since(t0) - out.t_socp;
  out.follower_status = fr.status;
  return out;
}

}  // namespace bicut
