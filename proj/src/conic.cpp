// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "bicut/conic.hpp"

#include <Eigen/LU>
#include <Eigen/SparseCore>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bicut {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Block {
  int offset;
  int size;
};

// Cone layout helpers.  All vector operations act blockwise on a vector of
// length ConeDims::total().
class Cone {
 public:
  explicit Cone(const ConeDims& dims) : nonneg_(dims.nonneg) {
    int offset = dims.nonneg;
    for (int q : dims.lorentz) {
      blocks_.push_back({offset, q});
      offset += q;
    }
    total_ = offset;
  }

  int total() const { return total_; }
  int nonneg() const { return nonneg_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  Vector identity() const {
    Vector e = Vector::Zero(total_);
    e.head(nonneg_).setOnes();
    for (const auto& b : blocks_) e[b.offset] = 1.0;
    return e;
  }

  // Smallest "eigenvalue" of v: min over orthant coordinates and t - |u|.
  double min_eigen(const Vector& v) const {
    double m = kInf;
    for (int i = 0; i < nonneg_; ++i) m = std::min(m, v[i]);
    for (const auto& b : blocks_) {
      m = std::min(m, v[b.offset] - v.segment(b.offset + 1, b.size - 1).norm());
    }
    return m;
  }

  Vector jordan_product(const Vector& u, const Vector& v) const {
    Vector w(total_);
    w.head(nonneg_) = u.head(nonneg_).cwiseProduct(v.head(nonneg_));
    for (const auto& b : blocks_) {
      const auto uu = u.segment(b.offset, b.size);
      const auto vv = v.segment(b.offset, b.size);
      w[b.offset] = uu.dot(vv);
      w.segment(b.offset + 1, b.size - 1) =
          uu[0] * vv.tail(b.size - 1) + vv[0] * uu.tail(b.size - 1);
    }
    return w;
  }

  // Solves lambda o x = v for x.
  Vector jordan_divide(const Vector& lambda, const Vector& v) const {
    Vector x(total_);
    x.head(nonneg_) = v.head(nonneg_).cwiseQuotient(lambda.head(nonneg_));
    for (const auto& b : blocks_) {
      const double l0 = lambda[b.offset];
      const auto l1 = lambda.segment(b.offset + 1, b.size - 1);
      const double v0 = v[b.offset];
      const auto v1 = v.segment(b.offset + 1, b.size - 1);
      const double det = l0 * l0 - l1.squaredNorm();
      const double x0 = (l0 * v0 - l1.dot(v1)) / det;
      x[b.offset] = x0;
      x.segment(b.offset + 1, b.size - 1) = (v1 - x0 * l1) / l0;
    }
    return x;
  }

  // Largest step a <= cap with u + a d in K (u interior).
  double max_step(const Vector& u, const Vector& d, double cap) const {
    double a = cap;
    for (int i = 0; i < nonneg_; ++i) {
      if (d[i] < 0.0) a = std::min(a, -u[i] / d[i]);
    }
    for (const auto& b : blocks_) a = std::min(a, lorentz_step(u, d, b));
    return a;
  }

 private:
  static double lorentz_step(const Vector& u, const Vector& d, const Block& b) {
    const double u0 = u[b.offset];
    const double d0 = d[b.offset];
    const auto u1 = u.segment(b.offset + 1, b.size - 1);
    const auto d1 = d.segment(b.offset + 1, b.size - 1);
    double step = kInf;
    if (d0 < 0.0) step = -u0 / d0;
    const double qa = d0 * d0 - d1.squaredNorm();
    const double qb = 2.0 * (u0 * d0 - u1.dot(d1));
    const double qc = std::max(0.0, u0 * u0 - u1.squaredNorm());
    // First positive root of qa a^2 + qb a + qc.
    double root = kInf;
    if (std::abs(qa) < 1e-300) {
      if (qb < 0.0) root = -qc / qb;
    } else {
      const double disc = qb * qb - 4.0 * qa * qc;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double t = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
        double r1 = t / qa;
        double r2 = t != 0.0 ? qc / t : kInf;
        if (r1 > r2) std::swap(r1, r2);
        if (r1 > 0.0) {
          root = r1;
        } else if (r2 > 0.0) {
          root = r2;
        }
      }
    }
    return std::min(step, root);
  }

  int nonneg_;
  int total_ = 0;
  std::vector<Block> blocks_;
};

// Nesterov-Todd scaling W with W z = W^{-1} s = lambda.
struct Scaling {
  Vector orthant;            // sqrt(s / z)
  std::vector<double> beta;  // per Lorentz block
  std::vector<Vector> w;     // normalized NT point, w'Jw = 1
  Vector lambda;
};

double j_norm(const Eigen::Ref<const Vector>& v) {
  const double r = v.tail(v.size() - 1).norm();
  return std::sqrt(std::max(0.0, (v[0] - r) * (v[0] + r)));
}

Scaling compute_scaling(const Cone& cone, const Vector& s, const Vector& z) {
  Scaling sc;
  const int l = cone.nonneg();
  sc.orthant = (s.head(l).array() / z.head(l).array()).sqrt();
  sc.lambda.resize(cone.total());
  sc.lambda.head(l) = (s.head(l).array() * z.head(l).array()).sqrt();
  for (const auto& b : cone.blocks()) {
    const auto sb = s.segment(b.offset, b.size);
    const auto zb = z.segment(b.offset, b.size);
    const double sn = j_norm(sb);
    const double zn = j_norm(zb);
    const Vector sbar = sb / sn;
    const Vector zbar = zb / zn;
    const double gamma = std::sqrt(std::max(0.0, (1.0 + sbar.dot(zbar)) / 2.0));
    Vector w(b.size);
    w[0] = (sbar[0] + zbar[0]) / (2.0 * gamma);
    w.tail(b.size - 1) = (sbar.tail(b.size - 1) - zbar.tail(b.size - 1)) / (2.0 * gamma);
    sc.beta.push_back(std::sqrt(sn / zn));
    sc.w.push_back(std::move(w));
  }
  // lambda = W z, filled below by the caller through apply_w.
  return sc;
}

// H(w) v = [w0 v0 + w1'v1; v1 + (w1'v1 / (1 + w0) + v0) w1].
void apply_hyperbolic(const Vector& w, double sign, Eigen::Ref<Vector> v) {
  const int k = static_cast<int>(w.size());
  const double w0 = w[0];
  const double v0 = v[0];
  const double w1v1 = sign * w.tail(k - 1).dot(v.tail(k - 1));
  v[0] = w0 * v0 + w1v1;
  v.tail(k - 1) += sign * (w1v1 / (1.0 + w0) + v0) * w.tail(k - 1);
}

Vector apply_w(const Cone& cone, const Scaling& sc, const Vector& v) {
  Vector out = v;
  out.head(cone.nonneg()) = sc.orthant.cwiseProduct(v.head(cone.nonneg()));
  for (std::size_t k = 0; k < cone.blocks().size(); ++k) {
    const auto& b = cone.blocks()[k];
    auto seg = out.segment(b.offset, b.size);
    apply_hyperbolic(sc.w[k], 1.0, seg);
    seg *= sc.beta[k];
  }
  return out;
}

Vector apply_w_inverse(const Cone& cone, const Scaling& sc, const Vector& v) {
  Vector out = v;
  out.head(cone.nonneg()) = v.head(cone.nonneg()).cwiseQuotient(sc.orthant);
  for (std::size_t k = 0; k < cone.blocks().size(); ++k) {
    const auto& b = cone.blocks()[k];
    auto seg = out.segment(b.offset, b.size);
    apply_hyperbolic(sc.w[k], -1.0, seg);
    seg /= sc.beta[k];
  }
  return out;
}

// Reduced KKT system  [G'W^{-2}G  A'; A  0]  with W fixed for one iteration.
class KktSolver {
 public:
  KktSolver(const SparseRows& G, const Matrix& A, const Cone& cone)
      : G_(G), Gt_(G.transpose()), A_(A), cone_(cone) {
    n_ = static_cast<int>(G.cols());
    p_ = static_cast<int>(A.rows());
  }

  void factor(const Scaling& sc) {
    sc_ = &sc;
    full_ready_ = false;
    pivot_ready_ = false;
    values_ready_ = false;
    if (sparse_first()) return;
    H_.setZero(n_, n_);
    const int l = cone_.nonneg();
    if (l > 0) {
      const Vector d = sc.orthant.array().square().inverse();
      for (int i = 0; i < l; ++i) {
        for (SparseRows::InnerIterator a(G_, i); a; ++a) {
          for (SparseRows::InnerIterator c(G_, i); c; ++c) {
            H_(a.col(), c.col()) += d[i] * a.value() * c.value();
          }
        }
      }
    }
    // Lorentz blocks: H += B'B with B = W^{-1} G_k on the support columns.
    for (std::size_t k = 0; k < cone_.blocks().size(); ++k) {
      const auto& b = cone_.blocks()[k];
      std::vector<int> slot(n_, -1);
      std::vector<int> support;
      for (int r = 0; r < b.size; ++r) {
        for (SparseRows::InnerIterator a(G_, b.offset + r); a; ++a) {
          if (slot[a.col()] < 0) {
            slot[a.col()] = static_cast<int>(support.size());
            support.push_back(static_cast<int>(a.col()));
          }
        }
      }
      Matrix B = Matrix::Zero(b.size, static_cast<Eigen::Index>(support.size()));
      for (int r = 0; r < b.size; ++r) {
        for (SparseRows::InnerIterator a(G_, b.offset + r); a; ++a) B(r, slot[a.col()]) = a.value();
      }
      for (Eigen::Index j = 0; j < B.cols(); ++j) {
        auto col = B.col(j);
        apply_hyperbolic(sc.w[k], -1.0, col);
      }
      B /= sc.beta[k];
      const Matrix BtB = B.transpose() * B;
      for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t j = 0; j < support.size(); ++j) H_(support[i], support[j]) += BtB(i, j);
      }
    }
    Matrix K = Matrix::Zero(n_ + p_, n_ + p_);
    const double reg = 1e-13 * (1.0 + H_.diagonal().cwiseAbs().maxCoeff());
    K.topLeftCorner(n_, n_) = H_;
    K.topLeftCorner(n_, n_).diagonal().array() += reg;
    K.topRightCorner(n_, p_) = A_.transpose();
    K.bottomLeftCorner(p_, n_) = A_;
    K.bottomRightCorner(p_, p_).diagonal().setConstant(-reg);
    lu_.compute(K);
  }

  // Solves  A'dy + G'dz = r1,  A dx = r2,  G dx - W^2 dz = r3.
  void solve(const Vector& r1, const Vector& r2, const Vector& r3, Vector& dx, Vector& dy,
             Vector& dz) {
    const double scale = 1.0 + std::max({r1.lpNorm<Eigen::Infinity>(), r2.lpNorm<Eigen::Infinity>(),
                                         apply_w_inverse(cone_, *sc_, r3).lpNorm<Eigen::Infinity>()});
    if (!sparse_first()) {
      const bool have_reduced = !pivot_ready_;
      double err = kInf;
      if (have_reduced) {
        reduced_solve(r1, r2, r3, dx, dy, dz);
        err = refine(r1, r2, r3, dx, dy, dz, Path::kReduced);
        if (err <= kAccept * scale) return;
        factor_pivoted();
      }
      Vector px, py, pz;
      pivoted_solve(r1, r2, r3, px, py, pz);
      const double pivot_err = refine(r1, r2, r3, px, py, pz, Path::kPivoted);
      if (!have_reduced || pivot_err < err || std::isnan(err)) {
        dx = std::move(px);
        dy = std::move(py);
        dz = std::move(pz);
      }
      return;
    }
    if (!full_ready_) factor_full();
    Vector fx, fy, fz;
    full_solve(r1, r2, r3, fx, fy, fz);
    double full_err = refine(r1, r2, r3, fx, fy, fz, Path::kFull);
    if (!(full_err <= kAcceptFactored * scale)) {
      if (!pivot_ready_) factor_pivoted();
      Vector px, py, pz;
      pivoted_solve(r1, r2, r3, px, py, pz);
      const double pivot_err = refine(r1, r2, r3, px, py, pz, Path::kPivoted);
      if (pivot_err < full_err || std::isnan(full_err)) {
        fx = std::move(px);
        fy = std::move(py);
        fz = std::move(pz);
        full_err = pivot_err;
      }
    }
    dx = std::move(fx);
    dy = std::move(fy);
    dz = std::move(fz);
  }

 private:
  enum class Path { kReduced, kFull, kPivoted };

  static constexpr double kAccept = 1e-6;
  static constexpr double kAcceptFactored = 1e-9;
  static constexpr int kSparseSize = 200;

  bool sparse_first() const { return n_ + p_ + cone_.total() >= kSparseSize; }

  double residual(const Vector& r1, const Vector& r2, const Vector& r3, const Vector& dx,
                  const Vector& dy, const Vector& dz, Vector& e1, Vector& e2, Vector& e3) const {
    e1 = r1 - A_.transpose() * dy - Gt_ * dz;
    e2 = r2 - A_ * dx;
    e3 = r3 - G_ * dx + apply_w(cone_, *sc_, apply_w(cone_, *sc_, dz));
    return std::max({e1.lpNorm<Eigen::Infinity>(), e2.lpNorm<Eigen::Infinity>(),
                     apply_w_inverse(cone_, *sc_, e3).lpNorm<Eigen::Infinity>()});
  }

  // Iterative refinement against the unreduced system; returns the final error.
  double refine(const Vector& r1, const Vector& r2, const Vector& r3, Vector& dx, Vector& dy,
                Vector& dz, Path path) const {
    const double scale = 1.0 + std::max({r1.lpNorm<Eigen::Infinity>(), r2.lpNorm<Eigen::Infinity>(),
                                         apply_w_inverse(cone_, *sc_, r3).lpNorm<Eigen::Infinity>()});
    Vector e1, e2, e3;
    double err = residual(r1, r2, r3, dx, dy, dz, e1, e2, e3);
    for (int it = 0; it < 5 && err > 1e-15 * scale; ++it) {
      Vector cx, cy, cz;
      switch (path) {
        case Path::kReduced: reduced_solve(e1, e2, e3, cx, cy, cz); break;
        case Path::kFull: full_solve(e1, e2, e3, cx, cy, cz); break;
        case Path::kPivoted: pivoted_solve(e1, e2, e3, cx, cy, cz); break;
      }
      const Vector nx = dx + cx, ny = dy + cy, nz = dz + cz;
      Vector f1, f2, f3;
      const double next = residual(r1, r2, r3, nx, ny, nz, f1, f2, f3);
      if (!(next < err)) break;
      dx = nx;
      dy = ny;
      dz = nz;
      e1 = std::move(f1);
      e2 = std::move(f2);
      e3 = std::move(f3);
      err = next;
    }
    return err;
  }

  void reduced_solve(const Vector& r1, const Vector& r2, const Vector& r3, Vector& dx, Vector& dy,
                     Vector& dz) const {
    const Vector t = apply_w_inverse(cone_, *sc_, apply_w_inverse(cone_, *sc_, r3));
    Vector rhs(n_ + p_);
    rhs.head(n_) = r1 + Gt_ * t;
    rhs.tail(p_) = r2;
    Vector sol = lu_.solve(rhs);
    for (int it = 0; it < 2; ++it) {
      Vector res(n_ + p_);
      res.head(n_) = rhs.head(n_) - H_ * sol.head(n_) - A_.transpose() * sol.tail(p_);
      res.tail(p_) = rhs.tail(p_) - A_ * sol.head(n_);
      sol += lu_.solve(res);
    }
    dx = sol.head(n_);
    dy = sol.tail(p_);
    dz = apply_w_inverse(cone_, *sc_, apply_w_inverse(cone_, *sc_, G_ * dx - r3));
  }

  // Sparse [0 A' G'; A 0 0; G 0 -W^2] in (dx, dy, dz, t).  A Lorentz block
  // has W^2 = beta^2 (2 w w' - J); its rank-one part is carried by
  // t_k = sqrt(2) beta w'dz_k, giving the rows  G_k dx + beta^2 J dz_k
  // - sqrt(2) beta w t_k = r3_k  and  -sqrt(2) beta w'dz_k + t_k = 0.
  void factor_full() {
    fill_values();
    if (!ldlt_pattern_ready_) {
      ldlt_.analyzePattern(K_);
      ldlt_pattern_ready_ = true;
    }
    ldlt_.factorize(K_);
    full_ok_ = ldlt_.info() == Eigen::Success;
    full_ready_ = true;
  }

  void factor_pivoted() {
    if (!values_ready_) fill_values();
    if (!pivot_pattern_ready_) {
      lu_full_.analyzePattern(K_);
      pivot_pattern_ready_ = true;
    }
    lu_full_.factorize(K_);
    pivot_ok_ = lu_full_.info() == Eigen::Success;
    pivot_ready_ = true;
  }

  void fill_values() {
    if (!pattern_ready_) build_full_pattern();
    const int l = cone_.nonneg();
    for (int i = 0; i < l; ++i) *dynamic_[i] = -sc_->orthant[i] * sc_->orthant[i];
    std::size_t next = static_cast<std::size_t>(l);
    for (std::size_t k = 0; k < cone_.blocks().size(); ++k) {
      const auto& b = cone_.blocks()[k];
      const double beta = sc_->beta[k];
      const double b2 = beta * beta;
      const double lift = std::sqrt(2.0) * beta;
      for (int r = 0; r < b.size; ++r) {
        const double v = -lift * sc_->w[k][r];
        *dynamic_[next++] = r == 0 ? b2 : -b2;
        *dynamic_[next++] = v;
        *dynamic_[next++] = v;
      }
    }
    values_ready_ = true;
  }

  // Structure of the unreduced system; the scaling entries are filled in by
  // factor_full through dynamic_.
  void build_full_pattern() {
    const int m = cone_.total();
    const int nb = static_cast<int>(cone_.blocks().size());
    const int N = n_ + p_ + m + nb;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(2 * (G_.nonZeros() + A_.size()) + 3 * m + 2 * nb + n_ + p_);
    double big = 1.0;
    for (int i = 0; i < p_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const double v = A_(i, j);
        if (v == 0.0) continue;
        t.emplace_back(n_ + i, j, v);
        t.emplace_back(j, n_ + i, v);
        big = std::max(big, std::abs(v));
      }
    }
    for (int i = 0; i < m; ++i) {
      for (SparseRows::InnerIterator a(G_, i); a; ++a) {
        t.emplace_back(n_ + p_ + i, a.col(), a.value());
        t.emplace_back(a.col(), n_ + p_ + i, a.value());
        big = std::max(big, std::abs(a.value()));
      }
    }
    const double reg = 1e-10 * big;
    for (int j = 0; j < n_; ++j) t.emplace_back(j, j, reg);
    for (int i = 0; i < p_; ++i) t.emplace_back(n_ + i, n_ + i, -reg);
    for (int i = 0; i < m; ++i) t.emplace_back(n_ + p_ + i, n_ + p_ + i, 0.0);
    for (int k = 0; k < nb; ++k) {
      const auto& b = cone_.blocks()[k];
      const int tk = n_ + p_ + m + k;
      for (int r = 0; r < b.size; ++r) {
        t.emplace_back(n_ + p_ + b.offset + r, tk, 0.0);
        t.emplace_back(tk, n_ + p_ + b.offset + r, 0.0);
      }
      t.emplace_back(tk, tk, 1.0);
    }
    K_.resize(N, N);
    K_.setFromTriplets(t.begin(), t.end());
    K_.makeCompressed();
    dynamic_.clear();
    const int l = cone_.nonneg();
    for (int i = 0; i < l; ++i) dynamic_.push_back(&K_.coeffRef(n_ + p_ + i, n_ + p_ + i));
    for (int k = 0; k < nb; ++k) {
      const auto& b = cone_.blocks()[k];
      const int tk = n_ + p_ + m + k;
      for (int r = 0; r < b.size; ++r) {
        const int row = n_ + p_ + b.offset + r;
        dynamic_.push_back(&K_.coeffRef(row, row));
        dynamic_.push_back(&K_.coeffRef(row, tk));
        dynamic_.push_back(&K_.coeffRef(tk, row));
      }
    }
    pattern_ready_ = true;
  }

  void full_solve(const Vector& r1, const Vector& r2, const Vector& r3, Vector& dx, Vector& dy,
                  Vector& dz) const {
    if (!full_ok_) return fail_solve(dx, dy, dz);
    split(ldlt_.solve(stack(r1, r2, r3)), dx, dy, dz);
  }

  void pivoted_solve(const Vector& r1, const Vector& r2, const Vector& r3, Vector& dx, Vector& dy,
                     Vector& dz) const {
    if (!pivot_ok_) return fail_solve(dx, dy, dz);
    split(lu_full_.solve(stack(r1, r2, r3)), dx, dy, dz);
  }

  Vector stack(const Vector& r1, const Vector& r2, const Vector& r3) const {
    Vector rhs(K_.rows());
    rhs << r1, r2, r3, Vector::Zero(K_.rows() - n_ - p_ - r3.size());
    return rhs;
  }

  void split(const Vector& sol, Vector& dx, Vector& dy, Vector& dz) const {
    dx = sol.head(n_);
    dy = sol.segment(n_, p_);
    dz = sol.segment(n_ + p_, cone_.total());
  }

  void fail_solve(Vector& dx, Vector& dy, Vector& dz) const {
    dx = Vector::Constant(n_, kInf);
    dy = Vector::Zero(p_);
    dz = Vector::Zero(cone_.total());
  }

  const SparseRows& G_;
  SparseRows Gt_;
  const Matrix& A_;
  const Cone& cone_;
  const Scaling* sc_ = nullptr;
  int n_;
  int p_;
  Matrix H_;
  Eigen::PartialPivLU<Matrix> lu_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_full_;
  bool values_ready_ = false;
  bool ldlt_pattern_ready_ = false;
  bool pivot_ready_ = false;
  bool pivot_ok_ = false;
  bool pivot_pattern_ready_ = false;
  bool full_ready_ = false;
  bool full_ok_ = false;
  bool pattern_ready_ = false;
  Eigen::SparseMatrix<double> K_;
  std::vector<double*> dynamic_;
};

double safe_norm(const Vector& v) { return v.size() == 0 ? 0.0 : v.norm(); }

void validate(const ConeProgram& cp) {
  const int n = cp.num_vars();
  const int m = cp.cones.total();
  if (cp.A.cols() != n && cp.A.rows() > 0) throw std::invalid_argument("A has wrong column count");
  if (cp.A.rows() != cp.b.size()) throw std::invalid_argument("A and b disagree");
  if (cp.G.rows() != m || cp.G.cols() != n || cp.h.size() != m) {
    throw std::invalid_argument("G, h and cone dimensions disagree");
  }
  if (cp.cones.nonneg < 0) throw std::invalid_argument("negative orthant dimension");
  for (int q : cp.cones.lorentz) {
    if (q < 1) throw std::invalid_argument("Lorentz block of dimension < 1");
  }
}

struct Equilibration {
  Vector col;
  Vector row_a;
  Vector row_g;
};

// Ruiz scaling of [A; G] by columns and rows; a Lorentz block shares one
// row factor so the cone is preserved.
Equilibration equilibrate(const ConeProgram& cp, ConeProgram& out) {
  const int n = cp.num_vars();
  const int p = static_cast<int>(cp.b.size());
  const int m = static_cast<int>(cp.h.size());
  Equilibration eq{Vector::Ones(n), Vector::Ones(p), Vector::Ones(m)};
  out = cp;
  if (p == 0) out.A.resize(0, n);
  auto factor = [](double v) { return v > 0.0 ? std::clamp(1.0 / std::sqrt(v), 1e-4, 1e4) : 1.0; };
  for (int round = 0; round < 15; ++round) {
    Vector dc = Vector::Zero(n);
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      if (p > 0) v = out.A.col(j).cwiseAbs().maxCoeff();
      if (m > 0) v = std::max(v, out.G.col(j).cwiseAbs().maxCoeff());
      dc[j] = factor(v);
    }
    Vector da(p), dg(m);
    for (int i = 0; i < p; ++i) da[i] = factor(out.A.row(i).cwiseAbs().maxCoeff());
    const int l = cp.cones.nonneg;
    for (int i = 0; i < l; ++i) dg[i] = factor(out.G.row(i).cwiseAbs().maxCoeff());
    int offset = l;
    for (int q : cp.cones.lorentz) {
      const double f = factor(out.G.middleRows(offset, q).cwiseAbs().maxCoeff());
      dg.segment(offset, q).setConstant(f);
      offset += q;
    }
    if (p > 0) out.A = da.asDiagonal() * out.A * dc.asDiagonal();
    if (m > 0) out.G = dg.asDiagonal() * out.G * dc.asDiagonal();
    eq.col.array() *= dc.array();
    eq.row_a.array() *= da.array();
    eq.row_g.array() *= dg.array();
    const double spread = std::max({(dc.array() - 1.0).abs().maxCoeff(),
                                    p > 0 ? (da.array() - 1.0).abs().maxCoeff() : 0.0,
                                    m > 0 ? (dg.array() - 1.0).abs().maxCoeff() : 0.0});
    if (spread < 1e-2) break;
  }
  out.b = eq.row_a.cwiseProduct(cp.b);
  out.h = eq.row_g.cwiseProduct(cp.h);
  out.c = eq.col.cwiseProduct(cp.c);
  return eq;
}

}  // namespace

int ConeDims::total() const {
  int t = nonneg;
  for (int q : lorentz) t += q;
  return t;
}

std::string_view to_string(ConicStatus status) {
  switch (status) {
    case ConicStatus::optimal: return "optimal";
    case ConicStatus::infeasible: return "infeasible";
    case ConicStatus::unbounded: return "unbounded";
    case ConicStatus::max_iter: return "max_iter";
  }
  return "unknown";
}

ConeProgram ConeProgram::from_standard_form(Vector c, Matrix A, Vector b, int free_vars,
                                            int nonneg_vars, std::vector<int> lorentz_blocks,
                                            Sense sense) {
  ConeProgram cp;
  cp.sense = sense;
  const int n = static_cast<int>(c.size());
  cp.cones.nonneg = nonneg_vars;
  cp.cones.lorentz = std::move(lorentz_blocks);
  const int m = cp.cones.total();
  if (free_vars + m != n) throw std::invalid_argument("variable partition does not match c");
  cp.c = std::move(c);
  cp.A = std::move(A);
  if (cp.A.rows() == 0) cp.A.resize(0, n);
  cp.b = std::move(b);
  cp.G = Matrix::Zero(m, n);
  cp.G.rightCols(m) = -Matrix::Identity(m, m);
  cp.h = Vector::Zero(m);
  return cp;
}

ConicResult solve_core(const ConeProgram& cp, const ConicOptions& options) {
  const int n = cp.num_vars();
  const int p = static_cast<int>(cp.b.size());
  const Cone cone(cp.cones);
  const int m = cone.total();
  const double nu = cp.cones.degree();

  const Vector c = cp.sense == Sense::maximize ? Vector(-cp.c) : cp.c;
  const Matrix A = p > 0 ? cp.A : Matrix(0, n);
  const Vector& b = cp.b;
  const Vector& h = cp.h;
  const SparseRows G = cp.G.sparseView();
  const Vector e = cone.identity();

  const double scale_p = 1.0 + std::max(safe_norm(b), safe_norm(h));
  const double scale_d = 1.0 + safe_norm(c);

  KktSolver kkt(G, A, cone);
  Vector x, y, z, s;
  double tau = 1.0;
  double kappa = 1.0;

  {
    Scaling unit;
    unit.orthant = Vector::Ones(cone.nonneg());
    for (const auto& blk : cone.blocks()) {
      unit.beta.push_back(1.0);
      unit.w.push_back(Vector::Unit(blk.size, 0));
    }
    kkt.factor(unit);
    Vector dy, dz;
    kkt.solve(Vector::Zero(n), b, h, x, dy, dz);
    s = -dz;
    const double ap = -cone.min_eigen(s);
    if (m > 0 && ap >= -1e-8 * (1.0 + safe_norm(s))) s += (1.0 + ap) * e;
    Vector dx;
    kkt.solve(-c, Vector::Zero(p), Vector::Zero(m), dx, y, z);
    const double ad = -cone.min_eigen(z);
    if (m > 0 && ad >= -1e-8 * (1.0 + safe_norm(z))) z += (1.0 + ad) * e;
  }

  ConicResult result;
  auto fill = [&](ConicStatus status, double t) {
    result.status = status;
    result.x = x / t;
    result.s = s / t;
    result.y = y / t;
    result.z = z / t;
    const double pobj = c.dot(result.x);
    const double dobj = -(b.dot(result.y) + h.dot(result.z));
    const double sign = cp.sense == Sense::maximize ? -1.0 : 1.0;
    result.objective = sign * pobj;
    result.dual_objective = sign * dobj;
    Vector rp(p + m);
    rp.head(p) = A * result.x - b;
    rp.tail(m) = G * result.x + result.s - h;
    result.primal_residual = safe_norm(rp) / scale_p;
    result.dual_residual = safe_norm(A.transpose() * result.y + G.transpose() * result.z + c) / scale_d;
    result.gap = std::max(std::abs(result.s.dot(result.z)), std::abs(pobj - dobj)) /
                 (1.0 + std::abs(pobj) + std::abs(dobj));
  };

  struct Snapshot {
    Vector x, s, y, z;
    double tau = 1.0;
    double merit = kInf;
  } best;

  int iter = 0;
  for (;; ++iter) {
    const Vector rx = A.transpose() * y + G.transpose() * z + c * tau;
    const Vector ry = A * x - b * tau;
    const Vector rz = s + G * x - h * tau;
    const double cx = c.dot(x);
    const double byhz = b.dot(y) + h.dot(z);
    const double rt = kappa + cx + byhz;
    const double mu = (s.dot(z) + kappa * tau) / (nu + 1.0);

    // Convergence tests on the de-homogenized iterate.
    const double pres =
        std::sqrt(ry.squaredNorm() + rz.squaredNorm()) / tau / scale_p;
    const double dres = safe_norm(rx) / tau / scale_d;
    const double pobj = cx / tau;
    const double dobj = -byhz / tau;
    const double gap = std::max(s.dot(z) / (tau * tau), std::abs(pobj - dobj)) /
                       (1.0 + std::abs(pobj) + std::abs(dobj));
    const double merit = std::max({pres, dres, gap});
    if (merit < best.merit) best = {x, s, y, z, tau, merit};

    if (pres <= options.tolerance && dres <= options.tolerance && gap <= options.tolerance) {
      fill(ConicStatus::optimal, tau);
      break;
    }
    if (byhz < 0.0) {
      const double res = safe_norm(A.transpose() * y + G.transpose() * z) / -byhz;
      if (res <= options.tolerance * scale_d && tau < kappa) {
        fill(ConicStatus::infeasible, -byhz);
        result.x.setZero();
        result.s.setZero();
        break;
      }
    }
    if (cx < 0.0) {
      Vector r(p + m);
      r.head(p) = A * x;
      r.tail(m) = G * x + s;
      const double res = safe_norm(r) / -cx;
      if (res <= options.tolerance * scale_p && tau < kappa) {
        fill(ConicStatus::unbounded, -cx);
        result.y.setZero();
        result.z.setZero();
        break;
      }
    }
    if (iter >= options.max_iterations) {
      x = best.x;
      s = best.s;
      y = best.y;
      z = best.z;
      fill(best.merit <= options.fallback_tolerance ? ConicStatus::optimal : ConicStatus::max_iter,
           best.tau);
      break;
    }

    Scaling sc = compute_scaling(cone, s, z);
    sc.lambda = apply_w(cone, sc, z);
    if (!sc.lambda.allFinite()) {
      x = best.x;
      s = best.s;
      y = best.y;
      z = best.z;
      fill(best.merit <= options.fallback_tolerance ? ConicStatus::optimal : ConicStatus::max_iter,
           best.tau);
      break;
    }
    kkt.factor(sc);

    Vector x1, y1, z1;
    kkt.solve(-c, b, h, x1, y1, z1);
    const double denom1 = c.dot(x1) + b.dot(y1) + h.dot(z1);

    auto direction = [&](double sigma, const Vector& rhs_s, double rhs_k, Vector& dx, Vector& dy,
                         Vector& dz, Vector& ds, double& dtau, double& dkappa) {
      const Vector ls = cone.jordan_divide(sc.lambda, rhs_s);
      const Vector wls = apply_w(cone, sc, ls);
      Vector x2, y2, z2;
      kkt.solve(-(1.0 - sigma) * rx, -(1.0 - sigma) * ry, -(1.0 - sigma) * rz - wls, x2, y2, z2);
      const double bt = -(1.0 - sigma) * rt - rhs_k / tau;
      dtau = (bt - (c.dot(x2) + b.dot(y2) + h.dot(z2))) / (denom1 - kappa / tau);
      dx = x2 + dtau * x1;
      dy = y2 + dtau * y1;
      dz = z2 + dtau * z1;
      ds = -(1.0 - sigma) * rz - G * dx + h * dtau;
      dkappa = (rhs_k - kappa * dtau) / tau;
    };

    auto step_length = [&](const Vector& ds, const Vector& dz, double dtau, double dkappa) {
      double a = cone.max_step(s, ds, kInf);
      a = std::min(a, cone.max_step(z, dz, kInf));
      if (dtau < 0.0) a = std::min(a, -tau / dtau);
      if (dkappa < 0.0) a = std::min(a, -kappa / dkappa);
      return a;
    };

    // Predictor.
    Vector dx, dy, dz, ds;
    double dtau, dkappa;
    const Vector ll = cone.jordan_product(sc.lambda, sc.lambda);
    direction(0.0, -ll, -kappa * tau, dx, dy, dz, ds, dtau, dkappa);
    const double a_aff = std::min(1.0, step_length(ds, dz, dtau, dkappa));
    const double sigma = std::pow(1.0 - a_aff, 3);

    // Corrector.
    const Vector corr =
        cone.jordan_product(apply_w_inverse(cone, sc, ds), apply_w(cone, sc, dz));
    const Vector rhs_s = -ll - corr + sigma * mu * e;
    const double rhs_k = -kappa * tau - dkappa * dtau + sigma * mu;
    direction(sigma, rhs_s, rhs_k, dx, dy, dz, ds, dtau, dkappa);
    const double a_max = step_length(ds, dz, dtau, dkappa);
    const double alpha = std::min(1.0, 0.99 * a_max);
    if (!(alpha > 1e-12) || !dx.allFinite()) {
      x = best.x;
      s = best.s;
      y = best.y;
      z = best.z;
      fill(best.merit <= options.fallback_tolerance ? ConicStatus::optimal : ConicStatus::max_iter,
           best.tau);
      break;
    }

    x += alpha * dx;
    y += alpha * dy;
    z += alpha * dz;
    s += alpha * ds;
    tau += alpha * dtau;
    kappa += alpha * dkappa;
  }
  result.iterations = iter;
  return result;
}

ConicResult solve_conic(const ConeProgram& cp, const ConicOptions& options) {
  validate(cp);
  ConeProgram scaled;
  const Equilibration eq = equilibrate(cp, scaled);
  ConicResult r = solve_core(scaled, options);
  r.x = eq.col.cwiseProduct(r.x);
  r.s = r.s.cwiseQuotient(eq.row_g);
  r.y = eq.row_a.cwiseProduct(r.y);
  r.z = eq.row_g.cwiseProduct(r.z);
  if (r.status != ConicStatus::optimal && r.status != ConicStatus::max_iter) return r;

  const bool maximize = cp.sense == Sense::maximize;
  const Vector c = maximize ? Vector(-cp.c) : cp.c;
  const int p = static_cast<int>(cp.b.size());
  const int m = static_cast<int>(cp.h.size());
  const double pobj = c.dot(r.x);
  const double dobj = -(cp.b.dot(r.y) + cp.h.dot(r.z));
  r.objective = maximize ? -pobj : pobj;
  r.dual_objective = maximize ? -dobj : dobj;
  Vector rp(p + m);
  if (p > 0) rp.head(p) = cp.A * r.x - cp.b;
  rp.tail(m) = cp.G * r.x + r.s - cp.h;
  Vector rd = c + cp.G.transpose() * r.z;
  if (p > 0) rd += cp.A.transpose() * r.y;
  r.primal_residual = safe_norm(rp) / (1.0 + std::max(safe_norm(cp.b), safe_norm(cp.h)));
  r.dual_residual = safe_norm(rd) / (1.0 + safe_norm(c));
  r.gap = std::max(std::abs(r.s.dot(r.z)), std::abs(pobj - dobj)) /
          (1.0 + std::abs(pobj) + std::abs(dobj));
  return r;
}

Vector lorentz_project(const Vector& v) {
  if (v.size() == 0) return v;
  const double t = v[0];
  const double r = v.tail(v.size() - 1).norm();
  if (r <= t) return v;
  if (r <= -t) return Vector::Zero(v.size());
  Vector out(v.size());
  const double scale = (t + r) / 2.0;
  out[0] = scale;
  out.tail(v.size() - 1) = (scale / r) * v.tail(v.size() - 1);
  return out;
}

}  // namespace bicut
