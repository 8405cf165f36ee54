#include "curvcone/sturm.hpp"

#include <algorithm>
#include <stdexcept>

#include "curvcone/matrix.hpp"

namespace curvcone {

int SturmSeq::variations(const ExtRat& at) const {
  int count = 0;
  int last = 0;
  for (const auto& p : polys) {
    int s = p.sign_at(at);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

SturmSeq sturm_sequence(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero polynomial");
  SturmSeq seq;
  seq.polys.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return seq;
  seq.polys.push_back(d);
  while (true) {
    const UniPoly& a = seq.polys[seq.polys.size() - 2];
    const UniPoly& b = seq.polys.back();
    UniPoly r = divmod(a, b).second;
    if (r.is_zero()) break;
    seq.polys.push_back(-r);
  }
  return seq;
}

namespace {

// Positive multiple with coprime integer coefficients; sign variations are unchanged.
UniPoly primitive_positive(const UniPoly& p) {
  Int den = 1;
  Int num = 0;
  for (int k = 0; k <= p.degree(); ++k) {
    const Rat& c = p.coeff(k);
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  if (num == 0) return p;
  return p * UniPoly(Rat(den) / Rat(num));
}

// Sturm sequence with every member rescaled; keeps coefficient growth in check.
SturmSeq counting_sequence(const UniPoly& p) {
  SturmSeq seq;
  seq.polys.push_back(primitive_positive(p));
  UniPoly d = seq.polys.back().derivative();
  if (d.is_zero()) return seq;
  seq.polys.push_back(primitive_positive(d));
  while (true) {
    const UniPoly& a = seq.polys[seq.polys.size() - 2];
    const UniPoly& b = seq.polys.back();
    UniPoly r = divmod(a, b).second;
    if (r.is_zero()) break;
    seq.polys.push_back(primitive_positive(-r));
  }
  return seq;
}

}  // namespace

namespace {

int count_with(const SturmSeq& seq, const ExtRat& a, const ExtRat& b) {
  return seq.variations(a) - seq.variations(b);
}

void check_interval(const UniPoly& p, const ExtRat& a, const ExtRat& b) {
  if (!(a < b)) throw std::invalid_argument("count_roots: empty interval");
  if ((a.is_finite() && p.eval(a.value()) == 0) || (b.is_finite() && p.eval(b.value()) == 0)) {
    throw std::domain_error("endpoint vanishes");
  }
}

}  // namespace

int count_roots(const UniPoly& p, const ExtRat& a, const ExtRat& b) {
  if (p.is_zero()) throw std::domain_error("zero polynomial");
  check_interval(p, a, b);
  return count_with(counting_sequence(p.squarefree_part()), a, b);
}

Rat root_bound(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("zero polynomial");
  Rat m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rat(abs(p.coeff(k) / p.leading())));
  Rat bound = 1;
  while (bound <= m + 1) bound *= 2;
  return bound;
}

namespace {

// Splits (lo, hi] into brackets containing one root each, ascending.
void bisect(const SturmSeq& seq, const UniPoly& q, const Rat& lo, const Rat& hi, int count,
            std::vector<std::pair<Rat, Rat>>& out) {
  if (count == 0) return;
  if (count == 1) {
    out.emplace_back(lo, hi);
    return;
  }
  Rat width = hi - lo;
  Rat mid = (lo + hi) / 2;
  // Dyadic nudges away from an exact root; q has finitely many roots.
  Rat step = width / 8;
  while (q.eval(mid) == 0) {
    mid = (lo + hi) / 2 + step;
    step /= 2;
  }
  int left = count_with(seq, ExtRat(lo), ExtRat(mid));
  bisect(seq, q, lo, mid, left, out);
  bisect(seq, q, mid, hi, count - left, out);
}

}  // namespace

IsolatingPartition isolate_family(const std::vector<UniPoly>& family) {
  if (family.empty()) throw std::invalid_argument("isolate_family: empty family");
  std::vector<UniPoly> parts;
  for (const auto& p : family) {
    if (p.is_zero()) throw std::domain_error("zero polynomial");
    UniPoly sf = p.squarefree_part();
    if (std::find(parts.begin(), parts.end(), sf) == parts.end()) parts.push_back(sf);
  }
  UniPoly product(1);
  for (const auto& sf : parts) product *= sf;
  UniPoly q = product.squarefree_part();

  IsolatingPartition out;
  out.points.push_back(ExtRat::neg_inf());
  if (q.degree() >= 1) {
    SturmSeq seq = counting_sequence(q);
    Rat bound = root_bound(q);
    int total = count_with(seq, ExtRat(-bound), ExtRat(bound));
    bisect(seq, q, -bound, bound, total, out.brackets);
    for (std::size_t k = 0; k + 1 < out.brackets.size(); ++k) out.points.emplace_back(out.brackets[k].second);
  }
  out.points.push_back(ExtRat::pos_inf());

  const int intervals = out.num_intervals();
  out.root_flags.assign(static_cast<std::size_t>(intervals), std::vector<bool>(family.size(), false));
  if (!out.brackets.empty()) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      SturmSeq seq = counting_sequence(family[i].squarefree_part());
      for (int j = 0; j < intervals; ++j) {
        const auto& [lo, hi] = out.brackets[static_cast<std::size_t>(j)];
        out.root_flags[static_cast<std::size_t>(j)][i] = count_with(seq, ExtRat(lo), ExtRat(hi)) > 0;
      }
    }
  }
  return out;
}

Rat resultant(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) throw std::domain_error("zero polynomial");
  const int m = p.degree();
  const int n = q.degree();
  const int size = m + n;
  if (size == 0) return 1;
  Matrix<Rat> syl(size, size);
  // n shifted rows of p, then m shifted rows of q; coefficients highest first.
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) syl(r, r + k) = p.coeff(m - k);
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) syl(n + r, r + k) = q.coeff(n - k);
  return determinant(std::move(syl));
}

Rat discriminant_x(const UniPoly& p) {
  if (p.degree() < 1) throw std::domain_error("discriminant of a constant polynomial");
  const long n = p.degree();
  Rat res = resultant(p, p.derivative());
  Rat disc = res / p.leading();
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

}  // namespace curvcone
