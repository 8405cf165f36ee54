#include "curvcone/multipoly.hpp"

#include <cmath>
#include <stdexcept>

namespace curvcone {

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

int total_degree(const Exponent& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

namespace {

void fill(int var, int remaining, Exponent& cur, std::vector<Exponent>& out) {
  const int nvars = static_cast<int>(cur.size());
  if (var == nvars - 1) {
    cur[static_cast<std::size_t>(var)] = remaining;
    out.push_back(cur);
    cur[static_cast<std::size_t>(var)] = 0;
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[static_cast<std::size_t>(var)] = k;
    fill(var + 1, remaining - k, cur, out);
  }
  cur[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

std::vector<Exponent> monomials_of_degree(int nvars, int degree) {
  std::vector<Exponent> out;
  if (nvars <= 0 || degree < 0) return out;
  Exponent cur(static_cast<std::size_t>(nvars), 0);
  fill(0, degree, cur, out);
  return out;
}

MonomialIndex::MonomialIndex(std::vector<Exponent> monomials) : monomials_(std::move(monomials)) {
  for (std::size_t k = 0; k < monomials_.size(); ++k) {
    if (!lookup_.emplace(monomials_[k], static_cast<int>(k)).second)
      throw std::invalid_argument("MonomialIndex: duplicate monomial");
  }
}

MonomialIndex MonomialIndex::of_degree(int nvars, int degree) {
  return MonomialIndex(monomials_of_degree(nvars, degree));
}

int MonomialIndex::find(const Exponent& e) const {
  auto it = lookup_.find(e);
  return it == lookup_.end() ? -1 : it->second;
}

int MonomialIndex::at(const Exponent& e) const {
  int k = find(e);
  if (k < 0) throw std::out_of_range("monomial not in index");
  return k;
}

MultiPoly MultiPoly::variable(int nvars, int k) {
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(k)] = 1;
  return monomial(e);
}

MultiPoly MultiPoly::constant(int nvars, const Rat& c) {
  return monomial(Exponent(static_cast<std::size_t>(nvars), 0), c);
}

MultiPoly MultiPoly::monomial(const Exponent& e, const Rat& c) {
  MultiPoly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Rat MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat MultiPoly::eval(const std::vector<Rat>& point) const {
  Rat acc = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

double MultiPoly::eval(const std::vector<double>& point) const {
  double acc = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(point[i], e[i]);
    acc += t;
  }
  return acc;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  if (nvars_ == 0) nvars_ = other.nvars_;
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  if (nvars_ == 0) nvars_ = other.nvars_;
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rat& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out(a.nvars_ ? a.nvars_ : b.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

MultiPoly MultiPoly::derivative(int k) const {
  MultiPoly out(nvars_);
  for (const auto& [e, c] : terms_) {
    int d = e[static_cast<std::size_t>(k)];
    if (d == 0) continue;
    Exponent f = e;
    f[static_cast<std::size_t>(k)] -= 1;
    out.add_term(f, c * d);
  }
  return out;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  MultiPoly out = constant(nvars_, 1);
  for (int k = 0; k < e; ++k) out = out * *this;
  return out;
}

std::vector<Rat> coefficients(const MultiPoly& p, const MonomialIndex& index) {
  std::vector<Rat> out(static_cast<std::size_t>(index.size()));
  for (const auto& [e, c] : p.terms()) out[static_cast<std::size_t>(index.at(e))] = c;
  return out;
}

}  // namespace curvcone
