#include "curvcone/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>

#include <Eigen/Sparse>

namespace curvcone {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Packed upper triangles of all blocks, off-diagonals scaled by sqrt(2) so the
// Euclidean dot product equals the trace pairing.
struct Layout {
  std::vector<int> dims;
  std::vector<int> offsets;
  int total = 0;
  int order = 0;

  explicit Layout(const std::vector<int>& d) : dims(d) {
    for (int n : d) {
      offsets.push_back(total);
      total += n * (n + 1) / 2;
      order += n;
    }
  }

  int index(int b, int i, int j) const {
    if (i > j) std::swap(i, j);
    return offsets[static_cast<std::size_t>(b)] + j * (j + 1) / 2 + i;
  }

  VectorXd svec(const std::vector<MatrixXd>& x) const {
    VectorXd v(total);
    for (std::size_t b = 0; b < dims.size(); ++b)
      for (int j = 0; j < dims[b]; ++j)
        for (int i = 0; i <= j; ++i)
          v(index(static_cast<int>(b), i, j)) = (i == j) ? x[b](i, i) : M_SQRT2 * x[b](i, j);
    return v;
  }

  std::vector<MatrixXd> smat(const VectorXd& v) const {
    std::vector<MatrixXd> x;
    for (std::size_t b = 0; b < dims.size(); ++b) {
      MatrixXd m(dims[b], dims[b]);
      for (int j = 0; j < dims[b]; ++j) {
        for (int i = 0; i <= j; ++i) {
          double e = v(index(static_cast<int>(b), i, j));
          if (i == j) {
            m(i, i) = e;
          } else {
            m(i, j) = m(j, i) = e / M_SQRT2;
          }
        }
      }
      x.push_back(std::move(m));
    }
    return x;
  }

  VectorXd identity() const {
    VectorXd v = VectorXd::Zero(total);
    for (std::size_t b = 0; b < dims.size(); ++b)
      for (int i = 0; i < dims[b]; ++i) v(index(static_cast<int>(b), i, i)) = 1;
    return v;
  }
};

struct Data {
  Layout layout{{}};
  SpMat a;     // m x total
  MatrixXd bf; // m x nfree
  VectorXd b;
  VectorXd c;  // svec of the objective matrix
  VectorXd cf;
};

double coeff_scale(const SdpEntry& e) { return e.i == e.j ? e.value : M_SQRT2 * e.value; }

Data assemble(const SdpProblem& p) {
  Data d;
  d.layout = Layout(p.block_dims);
  const int m = static_cast<int>(p.constraints.size());
  std::vector<Eigen::Triplet<double>> trip;
  d.bf = MatrixXd::Zero(m, p.num_free);
  d.b.resize(m);
  for (int k = 0; k < m; ++k) {
    const auto& con = p.constraints[static_cast<std::size_t>(k)];
    for (const auto& e : con.entries) trip.emplace_back(k, d.layout.index(e.block, e.i, e.j), coeff_scale(e));
    for (const auto& [var, v] : con.free_coeffs) d.bf(k, var) += v;
    d.b(k) = con.rhs;
  }
  d.a.resize(m, d.layout.total);
  d.a.setFromTriplets(trip.begin(), trip.end());
  d.c = VectorXd::Zero(d.layout.total);
  d.cf = VectorXd::Zero(p.num_free);
  if (p.objective) {
    for (const auto& e : p.objective->entries) d.c(d.layout.index(e.block, e.i, e.j)) += coeff_scale(e);
    for (const auto& [var, v] : p.objective->free_costs) d.cf(var) += v;
  }
  return d;
}

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

double min_eig(const MatrixXd& m) {
  if (m.rows() == 0) return kInf;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Largest step keeping M + alpha dM positive semidefinite (+inf if unbounded).
double max_step(const std::vector<MatrixXd>& m, const std::vector<MatrixXd>& dm) {
  double alpha = kInf;
  for (std::size_t b = 0; b < m.size(); ++b) {
    Eigen::LLT<MatrixXd> llt(m[b]);
    if (llt.info() != Eigen::Success) return 0;
    MatrixXd t = llt.matrixL().solve(dm[b]);
    t = llt.matrixL().solve(t.transpose()).transpose();
    double lo = min_eig(sym(t));
    if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
  }
  return alpha;
}

// Independent rows and free columns of the constraint system.
struct Prepared {
  Data data;
  std::vector<int> rows;
  std::vector<int> free_cols;
  int orig_rows = 0;
  int orig_free = 0;
  bool consistent = true;
  VectorXd inconsistency;  // residual direction in original row space
};

Prepared prepare(const SdpProblem& p) {
  Data full = assemble(p);
  Prepared out;
  out.orig_rows = static_cast<int>(p.constraints.size());
  out.orig_free = p.num_free;
  const int m = out.orig_rows;

  // Free columns.
  std::vector<int> free_cols;
  if (p.num_free > 0 && m > 0) {
    Eigen::ColPivHouseholderQR<MatrixXd> qr(full.bf);
    qr.setThreshold(1e-10);
    const auto rank = qr.rank();
    for (Eigen::Index k = 0; k < rank; ++k) free_cols.push_back(qr.colsPermutation().indices()(k));
    std::sort(free_cols.begin(), free_cols.end());
  }
  MatrixXd bsel(m, static_cast<int>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) bsel.col(static_cast<int>(k)) = full.bf.col(free_cols[k]);

  // Rows: rank-revealing QR of the transposed system.
  std::vector<int> rows;
  if (m > 0) {
    MatrixXd sys(m, full.layout.total + bsel.cols());
    sys << MatrixXd(full.a), bsel;
    Eigen::ColPivHouseholderQR<MatrixXd> qr(sys.transpose());
    qr.setThreshold(1e-10);
    const auto rank = qr.rank();
    for (Eigen::Index k = 0; k < rank; ++k) rows.push_back(qr.colsPermutation().indices()(k));
    std::sort(rows.begin(), rows.end());

    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(sys);
    cod.setThreshold(1e-10);
    VectorXd z = cod.solve(full.b);
    VectorXd r = full.b - sys * z;
    if (r.norm() > 1e-9 * (1 + full.b.norm())) {
      out.consistent = false;
      out.inconsistency = r;
    }
  }

  Data& d = out.data;
  d.layout = full.layout;
  const int mr = static_cast<int>(rows.size());
  std::vector<Eigen::Triplet<double>> trip;
  SpMat at = full.a.transpose();  // column k = row k of a
  for (int k = 0; k < mr; ++k)
    for (SpMat::InnerIterator it(at, rows[static_cast<std::size_t>(k)]); it; ++it) trip.emplace_back(k, it.row(), it.value());
  d.a.resize(mr, full.layout.total);
  d.a.setFromTriplets(trip.begin(), trip.end());
  d.bf.resize(mr, static_cast<int>(free_cols.size()));
  d.b.resize(mr);
  for (int k = 0; k < mr; ++k) {
    d.b(k) = full.b(rows[static_cast<std::size_t>(k)]);
    for (std::size_t f = 0; f < free_cols.size(); ++f) d.bf(k, static_cast<int>(f)) = full.bf(rows[static_cast<std::size_t>(k)], free_cols[f]);
  }
  d.c = full.c;
  d.cf.resize(static_cast<int>(free_cols.size()));
  for (std::size_t f = 0; f < free_cols.size(); ++f) d.cf(static_cast<int>(f)) = full.cf(free_cols[f]);
  out.rows = std::move(rows);
  out.free_cols = std::move(free_cols);
  return out;
}

struct IpmState {
  VectorXd x, s, y, w;
};

struct IpmOutcome {
  IpmState st;
  bool converged = false;
  bool diverged = false;
  int iters = 0;
  double relp = kInf, reld = kInf, relgap = kInf;
};

// Schur complement M_ij = <A_i, X A_j S^-1> assembled column by column.
MatrixXd schur(const Data& d, const std::vector<MatrixXd>& x, const std::vector<MatrixXd>& sinv) {
  const Layout& L = d.layout;
  const int m = static_cast<int>(d.a.rows());
  MatrixXd z = MatrixXd::Zero(m, L.total);
  // Column owners.
  std::vector<int> block_of(static_cast<std::size_t>(L.total));
  std::vector<std::pair<int, int>> pos(static_cast<std::size_t>(L.total));
  for (std::size_t b = 0; b < L.dims.size(); ++b)
    for (int j = 0; j < L.dims[b]; ++j)
      for (int i = 0; i <= j; ++i) {
        int c = L.index(static_cast<int>(b), i, j);
        block_of[static_cast<std::size_t>(c)] = static_cast<int>(b);
        pos[static_cast<std::size_t>(c)] = {i, j};
      }
  VectorXd krow;
  for (int c = 0; c < L.total; ++c) {
    if (d.a.col(c).nonZeros() == 0) continue;
    const int b = block_of[static_cast<std::size_t>(c)];
    const auto [p, q] = pos[static_cast<std::size_t>(c)];
    const MatrixXd& X = x[static_cast<std::size_t>(b)];
    const MatrixXd& Y = sinv[static_cast<std::size_t>(b)];
    const int nb = L.dims[static_cast<std::size_t>(b)];
    const int off = L.offsets[static_cast<std::size_t>(b)];
    const double wpq = p == q ? 0.5 : M_SQRT1_2;
    krow.resize(nb * (nb + 1) / 2);
    for (int s = 0; s < nb; ++s) {
      for (int r = 0; r <= s; ++r) {
        const double wrs = r == s ? 0.5 : M_SQRT1_2;
        krow(s * (s + 1) / 2 + r) =
            wpq * wrs * (X(q, r) * Y(s, p) + X(q, s) * Y(r, p) + X(p, r) * Y(s, q) + X(p, s) * Y(r, q));
      }
    }
    for (SpMat::InnerIterator it(d.a, c); it; ++it) z.row(it.row()).segment(off, krow.size()) += it.value() * krow.transpose();
  }
  MatrixXd mm = z * d.a.transpose();
  return sym(mm);
}

IpmOutcome run_ipm(const Data& d, int max_iters, int watch = -1, double watch_bound = kInf) {
  const Layout& L = d.layout;
  const int m = static_cast<int>(d.a.rows());
  const int nf = static_cast<int>(d.bf.cols());
  const double order = std::max(1, L.order);

  // Standard scaled starting point.
  double xi = std::max(10.0, std::sqrt(order));
  double eta = std::max(10.0, std::sqrt(order));
  for (int k = 0; k < m; ++k) {
    double an = d.a.row(k).norm();
    xi = std::max(xi, order * (1 + std::abs(d.b(k))) / (1 + an));
    eta = std::max(eta, an);
  }
  eta = std::max(eta, d.c.norm());
  IpmOutcome out;
  IpmState& st = out.st;
  st.x = xi * L.identity();
  st.s = eta * L.identity();
  st.y = VectorXd::Zero(m);
  st.w = VectorXd::Zero(nf);

  const double bnorm = 1 + d.b.norm();
  const double cnorm = 1 + d.c.norm() + d.cf.norm();
  const double eps = 1e-10;

  for (int iter = 0; iter <= max_iters; ++iter) {
    out.iters = iter;
    VectorXd rp = d.b - d.a * st.x - d.bf * st.w;
    VectorXd rd = d.c - d.a.transpose() * st.y - st.s;
    VectorXd rf = d.cf - d.bf.transpose() * st.y;
    double pobj = d.c.dot(st.x) + d.cf.dot(st.w);
    double dobj = d.b.dot(st.y);
    double mu = st.x.dot(st.s) / order;
    out.relp = rp.norm() / bnorm;
    out.reld = (rd.norm() + rf.norm()) / cnorm;
    out.relgap = std::max(std::abs(pobj - dobj), st.x.dot(st.s)) / (1 + std::abs(pobj) + std::abs(dobj));
    if (watch >= 0 && st.w(watch) > watch_bound) {
      out.diverged = true;
      return out;
    }
    if (out.relp < eps && out.reld < eps && out.relgap < eps) {
      out.converged = true;
      return out;
    }
    if (iter == max_iters) break;

    std::vector<MatrixXd> X = L.smat(st.x);
    std::vector<MatrixXd> S = L.smat(st.s);
    std::vector<MatrixXd> Sinv;
    for (const auto& sb : S) {
      Eigen::LLT<MatrixXd> llt(sb);
      if (llt.info() != Eigen::Success) return out;
      Sinv.push_back(llt.solve(MatrixXd::Identity(sb.rows(), sb.cols())));
    }
    std::vector<MatrixXd> Rd = L.smat(rd);

    MatrixXd M = schur(d, X, Sinv);
    Eigen::LDLT<MatrixXd> ldlt;
    // With free variables M may be singular (rows touching only free
    // columns); the bordered system [M B; B^T 0] stays nonsingular.
    Eigen::PartialPivLU<MatrixXd> kkt;
    if (nf > 0) {
      MatrixXd k(m + nf, m + nf);
      k << M, d.bf, d.bf.transpose(), MatrixXd::Zero(nf, nf);
      kkt.compute(k);
    } else {
      ldlt.compute(M);
      if (ldlt.info() != Eigen::Success) return out;
    }

    // Solves the Newton system for a given complementarity right-hand side.
    auto direction = [&](const std::vector<MatrixXd>& rc, VectorXd& dx, VectorXd& ds, VectorXd& dy, VectorXd& dw) {
      std::vector<MatrixXd> t(rc.size());
      for (std::size_t b = 0; b < rc.size(); ++b) t[b] = rc[b] - sym(X[b] * Rd[b] * Sinv[b]);
      VectorXd h = rp - d.a * L.svec(t);
      if (nf > 0) {
        VectorXd rhs(m + nf);
        rhs << h, rf;
        VectorXd sol = kkt.solve(rhs);
        dy = sol.head(m);
        dw = sol.tail(nf);
      } else {
        dw.resize(0);
        dy = ldlt.solve(h);
      }
      ds = rd - d.a.transpose() * dy;
      std::vector<MatrixXd> dsb = L.smat(ds);
      std::vector<MatrixXd> dxb(rc.size());
      for (std::size_t b = 0; b < rc.size(); ++b) dxb[b] = rc[b] - sym(X[b] * dsb[b] * Sinv[b]);
      dx = L.svec(dxb);
    };

    VectorXd dxa, dsa, dya, dwa;
    std::vector<MatrixXd> rc(X.size());
    for (std::size_t b = 0; b < X.size(); ++b) rc[b] = -X[b];
    direction(rc, dxa, dsa, dya, dwa);
    std::vector<MatrixXd> dXa = L.smat(dxa), dSa = L.smat(dsa);
    double ap = std::min(1.0, max_step(X, dXa));
    double ad = std::min(1.0, max_step(S, dSa));
    double mua = (st.x + ap * dxa).dot(st.s + ad * dsa) / order;
    double sigma = mu > 0 ? std::clamp(std::pow(mua / mu, 3.0), 0.0, 1.0) : 0.0;

    for (std::size_t b = 0; b < X.size(); ++b)
      rc[b] = sigma * mu * Sinv[b] - X[b] - sym(dXa[b] * dSa[b] * Sinv[b]);
    VectorXd dx, ds, dy, dw;
    direction(rc, dx, ds, dy, dw);
    if (!dx.allFinite() || !dy.allFinite()) return out;
    const double gamma = 0.9 + 0.09 * std::min(ap, ad);
    ap = std::min(1.0, gamma * max_step(X, L.smat(dx)));
    ad = std::min(1.0, gamma * max_step(S, L.smat(ds)));
    if (ap < 1e-12 && ad < 1e-12) return out;
    st.x += ap * dx;
    st.w += ap * dw;
    st.y += ad * dy;
    st.s += ad * ds;
  }
  return out;
}

SdpPoint to_point(const Prepared& pr, const VectorXd& x, const VectorXd& w) {
  SdpPoint pt;
  pt.blocks = pr.data.layout.smat(x);
  pt.free = VectorXd::Zero(pr.orig_free);
  for (std::size_t f = 0; f < pr.free_cols.size(); ++f) pt.free(pr.free_cols[f]) = w(static_cast<int>(f));
  return pt;
}

VectorXd to_rows(const Prepared& pr, const VectorXd& y) {
  VectorXd out = VectorXd::Zero(pr.orig_rows);
  for (std::size_t k = 0; k < pr.rows.size(); ++k) out(pr.rows[k]) = y(static_cast<int>(k));
  return out;
}

// Min-norm solution of the affine system plus tau * (dx, dw), with tau chosen
// so every block has min eigenvalue at least 1. Needs dx positive definite.
std::optional<SdpPoint> lift_along(const Prepared& pr, const VectorXd& dx, const VectorXd& dw) {
  const Data& d = pr.data;
  const Layout& L = d.layout;
  const int m = static_cast<int>(d.a.rows());
  const int nf = static_cast<int>(d.bf.cols());
  double dlo = kInf;
  for (const auto& blk : L.smat(dx)) dlo = std::min(dlo, min_eig(blk));
  if (!(dlo > 0)) return std::nullopt;
  VectorXd z = VectorXd::Zero(L.total + nf);
  if (m > 0) {
    MatrixXd sys(m, L.total + nf);
    sys << MatrixXd(d.a), d.bf;
    z = sys.completeOrthogonalDecomposition().solve(d.b);
  }
  VectorXd x0 = z.head(L.total);
  double lo = kInf;
  for (const auto& blk : L.smat(x0)) lo = std::min(lo, min_eig(blk));
  const double tau = (std::isfinite(lo) ? std::max(0.0, -lo) + 1 : 1) / dlo;
  return to_point(pr, x0 + tau * dx, z.tail(nf) + tau * dw);
}

struct SlackInternal {
  SlackResult result;
  VectorXd y_reduced;
};

SlackInternal slack_impl(const Prepared& pr, int max_iters) {
  const Data& d = pr.data;
  const Layout& L = d.layout;
  const int m = static_cast<int>(d.a.rows());
  const int nf = static_cast<int>(d.bf.cols());
  SlackInternal out;
  SlackResult& res = out.result;

  VectorXd a = d.a * L.identity();
  // Is the identity direction absorbed by the free variables?
  bool identity_free = m == 0;
  VectorXd beta;
  if (!identity_free) {
    if (nf > 0) {
      beta = d.bf.colPivHouseholderQr().solve(a);
      identity_free = (a - d.bf * beta).norm() <= 1e-10 * (1 + a.norm());
    } else {
      identity_free = a.norm() <= 1e-12;
      beta = VectorXd::Zero(0);
    }
  }
  if (identity_free) {
    VectorXd dw = nf > 0 && beta.size() == nf ? VectorXd(-beta) : VectorXd::Zero(nf);
    res.t = kInf;
    res.unbounded = true;
    res.converged = true;
    res.point = *lift_along(pr, L.identity(), dw);
    res.y = VectorXd::Zero(pr.orig_rows);
    out.y_reduced = VectorXd::Zero(m);
    return out;
  }

  Data sd = d;
  sd.bf.resize(m, nf + 1);
  sd.bf << d.bf, a;
  sd.c = VectorXd::Zero(L.total);
  sd.cf = VectorXd::Zero(nf + 1);
  sd.cf(nf) = -1;
  const double bound = 1e7 * (1 + d.b.lpNorm<Eigen::Infinity>());
  IpmOutcome ipm = run_ipm(sd, max_iters, nf, bound);
  const double t = ipm.st.w(nf);
  res.t = ipm.diverged ? kInf : t;
  res.unbounded = ipm.diverged;
  res.converged = ipm.converged || ipm.diverged;
  res.iterations = ipm.iters;
  res.primal_residual = ipm.relp;
  res.dual_residual = ipm.reld;
  res.gap = ipm.relgap;
  res.point = to_point(pr, ipm.st.x + t * L.identity(), ipm.st.w.head(nf));
  if (ipm.diverged) {
    // The iterate is huge; its normalized kernel component gives a direction
    // along which a moderate interior point can be reached.
    VectorXd dir(L.total + nf);
    dir << ipm.st.x + t * L.identity(), ipm.st.w.head(nf);
    dir /= dir.norm();
    MatrixXd sys(m, L.total + nf);
    sys << MatrixXd(d.a), d.bf;
    dir -= sys.transpose() * (sys * sys.transpose()).ldlt().solve(sys * dir);
    if (auto lifted = lift_along(pr, dir.head(L.total), dir.tail(nf))) res.point = *lifted;
  }
  res.y = to_rows(pr, ipm.st.y);
  out.y_reduced = ipm.st.y;
  return out;
}

// Min-norm correction of a point onto the affine constraints.
void polish(const Prepared& pr, SdpPoint& pt) {
  const Data& d = pr.data;
  const int m = static_cast<int>(d.a.rows());
  if (m == 0) return;
  const int nf = static_cast<int>(d.bf.cols());
  MatrixXd sys(m, d.layout.total + nf);
  sys << MatrixXd(d.a), d.bf;
  Eigen::LDLT<MatrixXd> gram(sys * sys.transpose());
  for (int round = 0; round < 2; ++round) {
    VectorXd x = d.layout.svec(pt.blocks);
    VectorXd w(nf);
    for (int f = 0; f < nf; ++f) w(f) = pt.free(pr.free_cols[static_cast<std::size_t>(f)]);
    VectorXd r = d.b - d.a * x - d.bf * w;
    VectorXd delta = sys.transpose() * gram.solve(r);
    x += delta.head(d.layout.total);
    w += delta.tail(nf);
    pt = to_point(pr, x, w);
  }
}

}  // namespace

void SdpProblem::validate() const {
  for (int n : block_dims)
    if (n <= 0) throw std::invalid_argument("SdpProblem: block dimension must be positive");
  if (num_free < 0) throw std::invalid_argument("SdpProblem: negative free variable count");
  auto check_entry = [&](const SdpEntry& e) {
    if (e.block < 0 || e.block >= static_cast<int>(block_dims.size()))
      throw std::invalid_argument("SdpProblem: block index out of range");
    const int n = block_dims[static_cast<std::size_t>(e.block)];
    if (e.i < 0 || e.j < e.i || e.j >= n) throw std::invalid_argument("SdpProblem: entry index out of range");
    if (!std::isfinite(e.value)) throw std::invalid_argument("SdpProblem: non-finite coefficient");
  };
  auto check_free = [&](const std::pair<int, double>& f) {
    if (f.first < 0 || f.first >= num_free) throw std::invalid_argument("SdpProblem: free index out of range");
  };
  for (const auto& c : constraints) {
    for (const auto& e : c.entries) check_entry(e);
    for (const auto& f : c.free_coeffs) check_free(f);
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("SdpProblem: non-finite right-hand side");
  }
  if (objective) {
    for (const auto& e : objective->entries) check_entry(e);
    for (const auto& f : objective->free_costs) check_free(f);
  }
}

std::string to_string(SdpVerdict v) {
  switch (v) {
    case SdpVerdict::kFeasible: return "FEASIBLE";
    case SdpVerdict::kInfeasible: return "INFEASIBLE";
    case SdpVerdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

double constraint_residual(const SdpProblem& problem, const SdpPoint& point) {
  double worst = 0;
  for (const auto& con : problem.constraints) {
    double acc = 0;
    for (const auto& e : con.entries) {
      const MatrixXd& x = point.blocks[static_cast<std::size_t>(e.block)];
      acc += (e.i == e.j ? 1.0 : 2.0) * e.value * x(e.i, e.j);
    }
    for (const auto& [var, v] : con.free_coeffs) acc += v * point.free(var);
    worst = std::max(worst, std::abs(acc - con.rhs));
  }
  return worst;
}

double min_eigenvalue(const SdpPoint& point) {
  double lo = kInf;
  for (const auto& b : point.blocks) lo = std::min(lo, min_eig(b));
  return lo;
}

SlackResult min_eig_slack(const SdpProblem& problem, int max_iters) {
  problem.validate();
  Prepared pr = prepare(problem);
  if (!pr.consistent) throw std::domain_error("inconsistent affine constraints");
  return slack_impl(pr, max_iters).result;
}

SdpStatus solve(const SdpProblem& problem, double feas_tol, int max_iters) {
  if (!(feas_tol > 0)) throw std::invalid_argument("feas_tol must be positive");
  problem.validate();
  Prepared pr = prepare(problem);
  SdpStatus status;
  if (!pr.consistent) {
    double norm = pr.inconsistency.norm();
    if (norm >= feas_tol) {
      status.verdict = SdpVerdict::kInfeasible;
      status.dual_ray = VectorXd(pr.inconsistency / norm);
      status.ray_margin = norm;
    }
    return status;
  }

  SlackInternal slack = slack_impl(pr, max_iters);
  const SlackResult& sr = slack.result;
  status.t_star = sr.t;
  status.iterations = sr.iterations;
  status.primal_residual = sr.primal_residual;
  status.dual_residual = sr.dual_residual;
  status.gap = sr.gap;

  SdpPoint pt = sr.point;
  polish(pr, pt);
  if (min_eigenvalue(pt) >= -feas_tol && constraint_residual(problem, pt) <= feas_tol) {
    status.verdict = SdpVerdict::kFeasible;
    status.point = pt;
    if (problem.objective) {
      IpmOutcome opt = run_ipm(pr.data, max_iters);
      if (opt.converged) {
        SdpPoint best = to_point(pr, opt.st.x, opt.st.w);
        polish(pr, best);
        if (min_eigenvalue(best) >= -feas_tol && constraint_residual(problem, best) <= feas_tol) status.point = best;
      }
    }
    return status;
  }

  // Farkas ray: W = -A*(y) >= 0 with B^T y = 0 and b.y > 0.
  const Data& d = pr.data;
  VectorXd y = slack.y_reduced;
  if (y.size() > 0 && y.allFinite()) {
    if (d.bf.cols() > 0) {
      VectorXd coef = d.bf.colPivHouseholderQr().solve(y);
      y -= d.bf * coef;
    }
    std::vector<MatrixXd> w = d.layout.smat(-(d.a.transpose() * y));
    double tr = 0;
    double lo = kInf;
    for (const auto& blk : w) {
      tr += blk.trace();
      lo = std::min(lo, min_eig(blk));
    }
    if (tr > 0) {
      double margin = d.b.dot(y) / tr;
      if (lo >= -1e-8 * tr && margin >= feas_tol) {
        status.verdict = SdpVerdict::kInfeasible;
        status.dual_ray = to_rows(pr, y / tr);
        status.ray_margin = margin;
        return status;
      }
    }
  }
  return status;
}

void write_sdp(const SdpProblem& problem, std::ostream& out) {
  out.precision(17);
  out << "sdp-triplet 1\n";
  out << "constraints " << problem.constraints.size() << "\n";
  out << "blocks";
  for (int n : problem.block_dims) out << ' ' << n;
  out << "\n";
  out << "free " << problem.num_free << "\n";
  out << "rhs\n";
  for (const auto& c : problem.constraints) out << c.rhs << "\n";
  out << "entries\n";
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) {
    for (const auto& e : problem.constraints[k].entries)
      out << k + 1 << ' ' << e.block + 1 << ' ' << e.i + 1 << ' ' << e.j + 1 << ' ' << e.value << "\n";
  }
  out << "free-coefficients\n";
  for (std::size_t k = 0; k < problem.constraints.size(); ++k) {
    for (const auto& [var, v] : problem.constraints[k].free_coeffs) out << k + 1 << ' ' << var + 1 << ' ' << v << "\n";
  }
  if (problem.objective) {
    out << "objective\n";
    for (const auto& e : problem.objective->entries)
      out << 0 << ' ' << e.block + 1 << ' ' << e.i + 1 << ' ' << e.j + 1 << ' ' << e.value << "\n";
    for (const auto& [var, v] : problem.objective->free_costs) out << 0 << ' ' << var + 1 << ' ' << v << "\n";
  }
  out << "end\n";
}

}  // namespace curvcone
