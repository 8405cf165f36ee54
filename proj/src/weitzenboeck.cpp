#include "curvcone/weitzenboeck.hpp"

#include <stdexcept>

namespace curvcone {

namespace {

std::vector<Rat> primitive(std::vector<Rat> v) {
  Int den = 1;
  Int num = 0;
  for (const auto& c : v) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  if (num == 0) return v;
  Rat scale = Rat(den) / Rat(num);
  for (auto& c : v) c *= scale;
  return v;
}

}  // namespace

HarmonicBasis harmonic_basis(int n, int p) {
  if (n < 2 || p < 1) throw std::invalid_argument("harmonic_basis: need n >= 2 and p >= 1");
  MonomialIndex top = MonomialIndex::of_degree(n, p);
  MonomialIndex low = MonomialIndex::of_degree(n, p - 2);
  Matrix<Rat> lap(low.size(), top.size());
  for (int c = 0; c < top.size(); ++c) {
    for (int i = 0; i < n; ++i) {
      int a = top[c][static_cast<std::size_t>(i)];
      if (a < 2) continue;
      Exponent e = top[c];
      e[static_cast<std::size_t>(i)] -= 2;
      lap(low.at(e), c) += a * (a - 1);
    }
  }
  HarmonicBasis out;
  out.n = n;
  out.p = p;
  for (auto& v : null_space(std::move(lap))) {
    v = primitive(std::move(v));
    MultiPoly psi(n);
    for (int c = 0; c < top.size(); ++c) psi.add_term(top[c], v[static_cast<std::size_t>(c)]);
    out.basis.push_back(std::move(psi));
  }
  return out;
}

Rat sphere_moment(const Exponent& alpha) {
  const int n = static_cast<int>(alpha.size());
  if (n < 1) throw std::invalid_argument("sphere_moment: empty exponent");
  Int num = 1;
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("sphere_moment: negative exponent");
    if (a % 2 == 1) return 0;
    for (int k = a - 1; k > 1; k -= 2) num *= k;
    total += a;
  }
  Int den = 1;
  for (int k = n; k <= n + total - 2; k += 2) den *= k;
  return Rat(num) / Rat(den);
}

CurvatureTerm curvature_term(const CurvOp& r, int p) {
  if (p < 1 || p > kMaxHarmonicDegree) throw std::invalid_argument("curvature_term: degree out of range");
  return curvature_term(r, harmonic_basis(r.n(), p));
}

CurvatureTerm curvature_term(const CurvOp& r, const HarmonicBasis& hb) {
  const int n = r.n();
  if (hb.n != n) throw std::invalid_argument("curvature_term: basis dimension mismatch");
  const int p = hb.p;
  PluckerBasis pl(n);
  const int npairs = pl.size();
  MonomialIndex mon = MonomialIndex::of_degree(n, p);
  const int d = mon.size();
  const int h = hb.size();

  // u[a][I] = x_i d_j psi_a - x_j d_i psi_a, as coefficient vectors.
  std::vector<std::vector<std::vector<Rat>>> u(static_cast<std::size_t>(h));
  for (int a = 0; a < h; ++a) {
    const MultiPoly& psi = hb.basis[static_cast<std::size_t>(a)];
    std::vector<MultiPoly> grad;
    for (int k = 0; k < n; ++k) grad.push_back(psi.derivative(k));
    for (int idx = 0; idx < npairs; ++idx) {
      auto [i, j] = pl.pair(idx);
      MultiPoly comp = MultiPoly::variable(n, i) * grad[static_cast<std::size_t>(j)] -
                       MultiPoly::variable(n, j) * grad[static_cast<std::size_t>(i)];
      u[static_cast<std::size_t>(a)].push_back(coefficients(comp, mon));
    }
  }

  // Sparse moment matrix over degree-p monomials.
  std::vector<std::vector<std::pair<int, Rat>>> mom(static_cast<std::size_t>(d));
  for (int s = 0; s < d; ++s) {
    for (int t = 0; t < d; ++t) {
      Rat v = sphere_moment(mon[s] + mon[t]);
      if (v != 0) mom[static_cast<std::size_t>(s)].emplace_back(t, v);
    }
  }

  // mw[b][I] = Mom * sum_J R_IJ u[b][J].
  std::vector<std::vector<std::vector<Rat>>> mw(static_cast<std::size_t>(h));
  for (int b = 0; b < h; ++b) {
    for (int I = 0; I < npairs; ++I) {
      std::vector<Rat> w(static_cast<std::size_t>(d));
      for (int J = 0; J < npairs; ++J) {
        const Rat& rij = r(I, J);
        if (rij == 0) continue;
        const auto& ub = u[static_cast<std::size_t>(b)][static_cast<std::size_t>(J)];
        for (int s = 0; s < d; ++s)
          if (ub[static_cast<std::size_t>(s)] != 0) w[static_cast<std::size_t>(s)] += rij * ub[static_cast<std::size_t>(s)];
      }
      std::vector<Rat> out(static_cast<std::size_t>(d));
      for (int s = 0; s < d; ++s) {
        for (const auto& [t, v] : mom[static_cast<std::size_t>(s)])
          if (w[static_cast<std::size_t>(t)] != 0) out[static_cast<std::size_t>(s)] += v * w[static_cast<std::size_t>(t)];
      }
      mw[static_cast<std::size_t>(b)].push_back(std::move(out));
    }
  }

  SymMatRat k(h);
  for (int a = 0; a < h; ++a) {
    for (int b = a; b < h; ++b) {
      Rat acc = 0;
      for (int I = 0; I < npairs; ++I) {
        const auto& ua = u[static_cast<std::size_t>(a)][static_cast<std::size_t>(I)];
        const auto& vb = mw[static_cast<std::size_t>(b)][static_cast<std::size_t>(I)];
        for (int s = 0; s < d; ++s)
          if (ua[static_cast<std::size_t>(s)] != 0) acc += ua[static_cast<std::size_t>(s)] * vb[static_cast<std::size_t>(s)];
      }
      k.set(a, b, acc);
    }
  }
  return CurvatureTerm{n, p, std::move(k)};
}

OuterResult outer_membership(const CurvOp& r, int m) {
  if (m < 0) throw std::invalid_argument("outer_membership: m must be >= 0");
  if (m + 1 > kMaxHarmonicDegree) throw std::invalid_argument("outer_membership: degree cap exceeded");
  for (int p = 1; p <= m + 1; ++p) {
    if (psd_status_elimination(curvature_term(r, p).matrix) == PsdStatus::kNotPsd) return OuterResult{false, p};
  }
  return OuterResult{};
}

}  // namespace curvcone
