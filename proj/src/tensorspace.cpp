#include "curvcone/tensorspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace curvcone {

PluckerBasis::PluckerBasis(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("Plucker basis needs n >= 2");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs_.emplace_back(i, j);
}

int PluckerBasis::index(int i, int j) const {
  if (i < 0 || j <= i || j >= n_) throw std::out_of_range("PluckerBasis::index");
  // Pairs starting with a < i occupy sum_{a<i} (n-1-a) slots.
  return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

std::vector<std::array<int, 4>> wedge4_basis(int n) {
  std::vector<std::array<int, 4>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) out.push_back({i, j, k, l});
  return out;
}

ModCurvOp::ModCurvOp(int n, SymMatRat matrix) : n_(n), m_(std::move(matrix)) {
  if (n < 2) throw std::invalid_argument("operator dimension must be >= 2");
  if (m_.dim() != choose2(n)) throw std::invalid_argument("matrix size does not match C(n,2)");
}

ModCurvOp ModCurvOp::zero(int n) { return ModCurvOp(n, SymMatRat(choose2(n))); }

ModCurvOp ModCurvOp::identity(int n) { return ModCurvOp(n, SymMatRat::identity(choose2(n))); }

CurvOp::CurvOp(const ModCurvOp& op) : ModCurvOp(op) {
  if (!is_bianchi(op)) throw std::invalid_argument("not Bianchi");
}

CurvOp& CurvOp::operator+=(const CurvOp& other) {
  if (n_ != other.n_) throw std::invalid_argument("dimension mismatch");
  m_ += other.m_;
  return *this;
}

CurvOp& CurvOp::operator-=(const CurvOp& other) {
  if (n_ != other.n_) throw std::invalid_argument("dimension mismatch");
  m_ -= other.m_;
  return *this;
}

CurvOp& CurvOp::operator*=(const Rat& s) {
  m_ *= s;
  return *this;
}

namespace {

// Sign of the permutation sorting four distinct values.
int perm_sign(std::array<int, 4> v) {
  int s = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(j)]) s = -s;
  return s;
}

}  // namespace

ModCurvOp wedge4_embed(int n, const std::vector<Rat>& omega) {
  ModCurvOp out = ModCurvOp::zero(n);
  if (n < 4) return out;
  auto quads = wedge4_basis(n);
  if (omega.size() != quads.size()) throw std::invalid_argument("wedge4_embed: coefficient count");
  PluckerBasis basis(n);
  SymMatRat m(basis.size());
  for (std::size_t q = 0; q < quads.size(); ++q) {
    if (omega[q] == 0) continue;
    const auto& [i, j, k, l] = quads[q];
    const std::array<std::array<int, 4>, 3> splits{{{i, j, k, l}, {i, k, j, l}, {i, l, j, k}}};
    for (const auto& s : splits) {
      int a = basis.index(s[0], s[1]);
      int b = basis.index(s[2], s[3]);
      m.set(a, b, m(a, b) + perm_sign(s) * omega[q]);
    }
  }
  return ModCurvOp(n, std::move(m));
}

ModCurvOp wedge4_unit(int n, int which) {
  std::vector<Rat> omega(wedge4_basis(n).size());
  omega.at(static_cast<std::size_t>(which)) = 1;
  return wedge4_embed(n, omega);
}

ModCurvOp hodge_star() { return wedge4_unit(4, 0); }

std::vector<Rat> bianchi_pairings(const ModCurvOp& s) {
  const int n = s.n();
  std::vector<Rat> out;
  if (n < 4) return out;
  PluckerBasis basis(n);
  for (const auto& [i, j, k, l] : wedge4_basis(n)) {
    // Each embedded unit has three symmetric pairs of +-1 entries.
    Rat acc = s(basis.index(i, j), basis.index(k, l)) - s(basis.index(i, k), basis.index(j, l)) +
              s(basis.index(i, l), basis.index(j, k));
    out.push_back(2 * acc);
  }
  return out;
}

bool is_bianchi(const ModCurvOp& s) {
  for (const auto& p : bianchi_pairings(s))
    if (p != 0) return false;
  return true;
}

CurvOp bianchi_project(const ModCurvOp& s) {
  const int n = s.n();
  if (n < 4) return CurvOp(s);
  // The embedded units have disjoint supports and squared norm 6.
  std::vector<Rat> coeff = bianchi_pairings(s);
  for (auto& c : coeff) c /= 6;
  ModCurvOp b = wedge4_embed(n, coeff);
  return CurvOp(ModCurvOp(n, s.matrix() - b.matrix()));
}

namespace {

template <class T>
std::vector<T> wedge_impl(const std::vector<T>& x, const std::vector<T>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("wedge: vector length");
  const int n = static_cast<int>(x.size());
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(choose2(n)));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) out.push_back(x[i] * y[j] - x[j] * y[i]);
  return out;
}

}  // namespace

std::vector<Rat> wedge(const std::vector<Rat>& x, const std::vector<Rat>& y) { return wedge_impl(x, y); }

std::vector<double> wedge(const std::vector<double>& x, const std::vector<double>& y) { return wedge_impl(x, y); }

Rat sec_eval(const ModCurvOp& r, const std::vector<Rat>& x, const std::vector<Rat>& y) {
  if (static_cast<int>(x.size()) != r.n()) throw std::invalid_argument("sec_eval: vector length");
  std::vector<Rat> w = wedge(x, y);
  Rat norm = 0;
  for (const auto& v : w) norm += v * v;
  if (norm == 0) throw std::domain_error("degenerate plane");
  Rat q = 0;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (w[a] == 0) continue;
    for (std::size_t b = 0; b < w.size(); ++b) q += w[a] * r(static_cast<int>(a), static_cast<int>(b)) * w[b];
  }
  return q / norm;
}

double sec_sample_min(const ModCurvOp& r, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sec_sample_min: samples must be positive");
  const int n = r.n();
  const int d = choose2(n);
  std::vector<double> mat(static_cast<std::size_t>(d * d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) mat[static_cast<std::size_t>(a * d + b)] = r(a, b).get_d();

  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; };
  auto gaussian = [&] { return std::sqrt(-2.0 * std::log(uniform())) * std::cos(2.0 * M_PI * uniform()); };

  double best = std::numeric_limits<double>::infinity();
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int s = 0; s < samples; ++s) {
    double nx = 0;
    for (auto& v : x) {
      v = gaussian();
      nx += v * v;
    }
    for (auto& v : x) v /= std::sqrt(nx);
    double dot = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = gaussian();
      dot += x[i] * y[i];
    }
    double ny = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] -= dot * x[i];
      ny += y[i] * y[i];
    }
    if (ny < 1e-24) continue;
    std::vector<double> w = wedge(x, y);
    double q = 0;
    double norm = 0;
    for (int a = 0; a < d; ++a) {
      norm += w[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(a)];
      double row = 0;
      for (int b = 0; b < d; ++b) row += mat[static_cast<std::size_t>(a * d + b)] * w[static_cast<std::size_t>(b)];
      q += w[static_cast<std::size_t>(a)] * row;
    }
    best = std::min(best, q / norm);
  }
  return best;
}

CurvOp apply_bound_reduction(const CurvOp& r, const Rat& k, BoundSide side) {
  CurvOp shifted = k * CurvOp::identity(r.n());
  return side == BoundSide::kLower ? r - shifted : shifted - r;
}

Signature::Signature(int n_, int nu_) : n(n_), nu(nu_) {
  if (n_ < 2 || nu_ < 0 || nu_ > n_) throw std::invalid_argument("signature out of range");
}

ModCurvOp g_wedge_g(const Signature& sig) {
  PluckerBasis basis(sig.n);
  std::vector<Rat> diag;
  for (int k = 0; k < basis.size(); ++k) {
    auto [i, j] = basis.pair(k);
    int gi = i < sig.nu ? -1 : 1;
    int gj = j < sig.nu ? -1 : 1;
    diag.emplace_back(gi * gj);
  }
  return ModCurvOp(sig.n, SymMatRat::diagonal(diag));
}

ModCurvOp psi_Q(const Matrix<Rat>& r, const Signature& sig) {
  const int d = choose2(sig.n);
  if (r.rows() != d || r.cols() != d) throw std::invalid_argument("psi_Q: matrix size does not match C(n,2)");
  ModCurvOp g = g_wedge_g(sig);
  Matrix<Rat> out(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) out(a, b) = g(a, a) * r(a, b);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (out(a, b) != out(b, a)) throw std::invalid_argument("operator is not Q-symmetric");
  return ModCurvOp(sig.n, SymMatRat(std::move(out)));
}

CurvOp random_curvop(int n, std::uint64_t seed, const Rat& magnitude) {
  if (n < 2) throw std::invalid_argument("random_curvop: n must be >= 2");
  if (magnitude < 0) throw std::invalid_argument("random_curvop: negative magnitude");
  constexpr long kGrid = 16;
  Rat scaled = magnitude * kGrid;
  Int top = scaled.get_num() / scaled.get_den();
  const unsigned long span = 2 * top.get_ui() + 1;
  std::mt19937_64 rng(seed);
  const int d = choose2(n);
  SymMatRat m(d);
  for (int a = 0; a < d; ++a) {
    for (int b = a; b < d; ++b) {
      long k = static_cast<long>(rng() % span) - static_cast<long>(top.get_ui());
      m.set(a, b, Rat(k) / kGrid);
    }
  }
  return bianchi_project(ModCurvOp(n, std::move(m)));
}

SymMatRat ricci(const ModCurvOp& r) {
  const int n = r.n();
  PluckerBasis basis(n);
  auto signed_index = [&](int i, int k) -> std::pair<int, int> {
    return i < k ? std::pair{basis.index(i, k), 1} : std::pair{basis.index(k, i), -1};
  };
  SymMatRat ric(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Rat acc = 0;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        auto [a, sa] = signed_index(i, k);
        auto [b, sb] = signed_index(j, k);
        acc += sa * sb * r(a, b);
      }
      ric.set(i, j, acc);
    }
  }
  return ric;
}

}  // namespace curvcone
