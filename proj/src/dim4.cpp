#include "curvcone/dim4.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace curvcone {

namespace {

void require_dim4(const CurvOp& r) {
  if (r.n() != 4) throw std::invalid_argument("operation requires n = 4");
}

// Nonzero sigma_i with their indices.
struct Family {
  std::vector<int> member;
  std::vector<UniPoly> polys;
};

Family nonzero_family(const ParamCharPoly& pc) {
  Family f;
  for (int i = 0; i < 6; ++i) {
    if (pc.sigma[static_cast<std::size_t>(i)].is_zero()) continue;
    f.member.push_back(i);
    f.polys.push_back(pc.sigma[static_cast<std::size_t>(i)]);
  }
  return f;
}

bool all_positive(const std::array<int, 6>& s) {
  for (int v : s)
    if (v <= 0) return false;
  return true;
}

// First interval accepted by the nonnegativity test, if any.
std::optional<int> accepting_interval(const ParamCharPoly& pc, const Family& fam, const IsolatingPartition& part) {
  for (int j = 0; j < part.num_intervals(); ++j) {
    auto left = pc.signs_at(part.points[static_cast<std::size_t>(j)]);
    auto right = pc.signs_at(part.points[static_cast<std::size_t>(j) + 1]);
    bool ok = true;
    for (std::size_t k = 0; k < fam.member.size() && ok; ++k) {
      auto i = static_cast<std::size_t>(fam.member[k]);
      if (left[i] < 0 && right[i] < 0 && !part.root_flags[static_cast<std::size_t>(j)][k]) ok = false;
    }
    if (ok) return j;
  }
  return std::nullopt;
}

std::array<int, 6> signs_from(const ParamCharPoly& pc, const Rat& x) {
  std::array<int, 6> s{};
  for (std::size_t i = 0; i < 6; ++i) s[i] = sgn(pc.sigma[i].eval(x));
  return s;
}

PsdStatus status_from_signs(const std::array<int, 6>& s) {
  bool strict = true;
  for (int v : s) {
    if (v < 0) return PsdStatus::kNotPsd;
    if (v == 0) strict = false;
  }
  return strict ? PsdStatus::kPositiveDefinite : PsdStatus::kPsdSingular;
}

// Halves (lo, hi] keeping the unique root of f; returns true if the midpoint is that root.
bool bisect_step(const UniPoly& f, Rat& lo, Rat& hi) {
  Rat mid = (lo + hi) / 2;
  int sm = sgn(f.eval(mid));
  if (sm == 0) {
    lo = hi = mid;
    return true;
  }
  if (sm == sgn(f.eval(hi))) {
    hi = mid;
  } else {
    lo = mid;
  }
  return false;
}

// Simplest rational in [lo, hi] (Stern-Brocot descent by continued fractions).
Rat simplest_between(Rat lo, Rat hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return 0;
  bool neg = hi < 0;
  if (neg) {
    Rat t = -lo;
    lo = -hi;
    hi = t;
  }
  // Continued-fraction walk on positive interval [lo, hi].
  std::vector<Int> terms;
  Rat a = lo;
  Rat b = hi;
  for (int guard = 0; guard < 4096; ++guard) {
    Int fl = a.get_num() / a.get_den();
    if (Rat(fl) == a) {
      terms.push_back(fl);
      break;
    }
    if (Rat(fl + 1) <= b) {
      terms.push_back(fl + 1);
      break;
    }
    terms.push_back(fl);
    Rat na = 1 / (b - Rat(fl));
    Rat nb = 1 / (a - Rat(fl));
    a = na;
    b = nb;
  }
  Rat value = Rat(terms.back());
  for (int k = static_cast<int>(terms.size()) - 2; k >= 0; --k) value = Rat(terms[static_cast<std::size_t>(k)]) + 1 / value;
  return neg ? Rat(-value) : value;
}

}  // namespace

std::array<int, 6> ParamCharPoly::signs_at(const ExtRat& x) const {
  std::array<int, 6> s{};
  for (std::size_t i = 0; i < 6; ++i) s[i] = sigma[i].sign_at(x);
  return s;
}

ParamCharPoly param_charpoly(const CurvOp& r) {
  require_dim4(r);
  ModCurvOp star = hodge_star();
  Matrix<UniPoly> m(6, 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) m(a, b) = UniPoly{r(a, b), star(a, b)};
  std::vector<UniPoly> c = charpoly_coeffs(m);
  ParamCharPoly out;
  for (int i = 1; i <= 6; ++i) {
    const UniPoly& coeff = c[static_cast<std::size_t>(6 - i)];
    out.sigma[static_cast<std::size_t>(i - 1)] = (i % 2 == 0) ? coeff : -coeff;
  }
  return out;
}

SymMatRat shifted_by_star(const CurvOp& r, const Rat& x) {
  require_dim4(r);
  return r.matrix() + x * hodge_star().matrix();
}

Rat defining_poly(const CurvOp& r, const Rat& k) {
  require_dim4(r);
  CurvOp shifted = apply_bound_reduction(r, k, BoundSide::kLower);
  const UniPoly det = param_charpoly(shifted).sigma[5];
  if (det.degree() != 6) throw std::logic_error("det(R + x*) must have degree 6");
  return discriminant_x(det);
}

bool query_sec_gt(const CurvOp& r) {
  ParamCharPoly pc = param_charpoly(r);
  Family fam = nonzero_family(pc);
  IsolatingPartition part = isolate_family(fam.polys);
  for (const auto& pt : part.points)
    if (all_positive(pc.signs_at(pt))) return true;
  return false;
}

bool query_sec_geq(const CurvOp& r) {
  ParamCharPoly pc = param_charpoly(r);
  Family fam = nonzero_family(pc);
  IsolatingPartition part = isolate_family(fam.polys);
  return accepting_interval(pc, fam, part).has_value();
}

PsdStatus psd_status_at_root(const CurvOp& r, const UniPoly& factor, const Rat& lo, const Rat& hi) {
  if (factor.degree() < 1) throw std::invalid_argument("root factor must be nonconstant");
  if (factor.eval(lo) == 0 || factor.eval(hi) == 0) throw std::domain_error("endpoint vanishes");
  UniPoly f = factor.squarefree_part();
  if (count_roots(f, ExtRat(lo), ExtRat(hi)) != 1) throw std::invalid_argument("bracket does not isolate one root");
  ParamCharPoly pc = param_charpoly(r);
  std::array<int, 6> signs{};
  for (std::size_t i = 0; i < 6; ++i) {
    const UniPoly& s = pc.sigma[i];
    if (s.is_zero()) continue;
    UniPoly g = gcd(f, s);
    if (g.degree() >= 1 && count_roots(g, ExtRat(lo), ExtRat(hi)) > 0) continue;
    // sigma_i(x0) != 0: shrink the bracket until sigma_i has no root in it.
    Rat a = lo;
    Rat b = hi;
    UniPoly ssf = s.squarefree_part();
    while (true) {
      if (a == b) {
        signs[i] = sgn(s.eval(a));
        break;
      }
      if (s.eval(a) != 0 && s.eval(b) != 0 && count_roots(ssf, ExtRat(a), ExtRat(b)) == 0) {
        signs[i] = sgn(s.eval(b));
        break;
      }
      bisect_step(f, a, b);
    }
  }
  return status_from_signs(signs);
}

std::optional<FtCertificate> ft_certificate(const CurvOp& r) {
  ParamCharPoly pc = param_charpoly(r);
  Family fam = nonzero_family(pc);
  IsolatingPartition part = isolate_family(fam.polys);
  auto accepted = accepting_interval(pc, fam, part);
  if (!accepted) return std::nullopt;

  std::vector<Rat> candidates{Rat(0)};
  for (const auto& pt : part.points)
    if (pt.is_finite()) candidates.push_back(pt.value());
  for (const auto& [lo, hi] : part.brackets) {
    candidates.push_back(lo);
    candidates.push_back(hi);
  }
  for (const auto& x : candidates) {
    if (all_positive(signs_from(pc, x))) {
      FtCertificate c;
      c.kind = FtCertificate::Kind::kRationalPoint;
      c.value = x;
      c.strict = true;
      return c;
    }
  }

  const auto j = static_cast<std::size_t>(*accepted);
  if (part.brackets.empty()) return std::nullopt;
  auto [lo, hi] = part.brackets[j];
  UniPoly f;
  for (std::size_t k = 0; k < fam.member.size(); ++k) {
    if (!part.root_flags[j][k]) continue;
    UniPoly sf = fam.polys[k].squarefree_part();
    f = f.is_zero() ? sf : gcd(f, sf);
  }
  if (f.is_zero() || f.degree() < 1) throw std::logic_error("accepting interval without a common root");

  std::optional<Rat> rational;
  if (f.degree() == 1) {
    rational = -f.coeff(0) / f.coeff(1);
  } else {
    Rat a = lo;
    Rat b = hi;
    bool hit = false;
    for (int step = 0; step < 80 && !hit; ++step) hit = bisect_step(f, a, b);
    Rat q = hit ? a : simplest_between(a, b);
    if (f.eval(q) == 0) rational = q;
  }
  if (rational) {
    PsdStatus st = status_from_signs(signs_from(pc, *rational));
    if (st != PsdStatus::kNotPsd) {
      FtCertificate c;
      c.kind = FtCertificate::Kind::kRationalPoint;
      c.value = *rational;
      c.strict = st == PsdStatus::kPositiveDefinite;
      return c;
    }
  }
  FtCertificate c;
  c.kind = FtCertificate::Kind::kIsolatedRoot;
  c.lo = lo;
  c.hi = hi;
  c.factor = f;
  c.strict = psd_status_at_root(r, f, lo, hi) == PsdStatus::kPositiveDefinite;
  return c;
}

bool verify_certificate(const CurvOp& r, const FtCertificate& cert) {
  PsdStatus st = cert.kind == FtCertificate::Kind::kRationalPoint
                     ? psd_status(shifted_by_star(r, cert.value))
                     : psd_status_at_root(r, cert.factor, cert.lo, cert.hi);
  return cert.strict ? st == PsdStatus::kPositiveDefinite : st != PsdStatus::kNotPsd;
}

bool query_bound(const CurvOp& r, const Rat& k, BoundSide side, bool strict) {
  CurvOp shifted = apply_bound_reduction(r, k, side);
  return strict ? query_sec_gt(shifted) : query_sec_geq(shifted);
}

std::string FtCertificate::describe() const {
  std::ostringstream os;
  if (kind == Kind::kRationalPoint) {
    os << "x0 = " << to_string(value);
  } else {
    os << "x0 = root of " << factor.to_string() << " in (" << to_string(lo) << ", " << to_string(hi) << "]";
  }
  os << (strict ? " (positive definite)" : " (positive semidefinite, singular)");
  return os.str();
}

}  // namespace curvcone
