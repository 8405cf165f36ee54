#include "curvcone/unipoly.hpp"

#include <sstream>
#include <stdexcept>

namespace curvcone {

UniPoly::UniPoly(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly::UniPoly(std::initializer_list<Rat> coeffs) : coeffs_(coeffs) { trim(); }

UniPoly::UniPoly(const Rat& constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

UniPoly UniPoly::x() { return UniPoly(std::vector<Rat>{0, 1}); }

UniPoly UniPoly::monomial(const Rat& coeff, int degree) {
  if (coeff == 0) return {};
  std::vector<Rat> c(static_cast<std::size_t>(degree) + 1);
  c.back() = coeff;
  return UniPoly(std::move(c));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat UniPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(k)];
}

const Rat& UniPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("zero polynomial");
  return coeffs_.back();
}

Rat UniPoly::eval(const Rat& at) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= at;
    acc += *it;
  }
  return acc;
}

int UniPoly::sign_at(const ExtRat& at) const {
  if (is_zero()) return 0;
  switch (at.kind()) {
    case ExtRat::Kind::kPosInf: return sgn(leading());
    case ExtRat::Kind::kNegInf: return (degree() % 2 == 0 ? 1 : -1) * sgn(leading());
    case ExtRat::Kind::kFinite: break;
  }
  return sgn(eval(at.value()));
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rat> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  UniPoly out = *this;
  Rat lc = leading();
  for (auto& c : out.coeffs_) c /= lc;
  return out;
}

UniPoly UniPoly::reflect() const {
  UniPoly out = *this;
  for (std::size_t k = 1; k < out.coeffs_.size(); k += 2) out.coeffs_[k] = -out.coeffs_[k];
  return out;
}

UniPoly UniPoly::shift(const Rat& s) const {
  // Horner in the ring: ((a_n)(x+s) + a_{n-1})(x+s) + ...
  UniPoly base{s, 1};
  UniPoly acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * base;
    acc += UniPoly(*it);
  }
  return acc;
}

UniPoly UniPoly::squarefree_part() const {
  if (is_zero()) throw std::domain_error("zero polynomial");
  UniPoly g = gcd(*this, derivative());
  return exact_div(*this, g).monic();
}

UniPoly& UniPoly::operator+=(const UniPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(const UniPoly& other) { return *this = *this * other; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rat> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(c));
}

UniPoly operator-(UniPoly a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

std::string UniPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rat& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rat mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = (mag == 1);
    if (!unit || k == 0) os << curvcone::to_string(mag);
    if (k > 0) {
      if (!unit) os << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
    first = false;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by zero polynomial");
  std::vector<Rat> rem = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rat> quot(static_cast<std::size_t>(a.degree() - db) + 1);
  const Rat& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rat q = rem[static_cast<std::size_t>(k)] / lb;
    quot[static_cast<std::size_t>(k - db)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("polynomial division is not exact");
  return q;
}

}  // namespace curvcone
