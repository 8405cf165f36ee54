#include "curvcone/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace curvcone {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Int parse_int(std::string_view s) {
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Int(digits, 10);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  Int d = parse_int(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  Rat r(parse_int(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) { return value.get_str(10); }

Rat rat_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  Rat r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

Rat round_dyadic(double value, int bits) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  double scaled = std::ldexp(value, bits);
  Int num;
  mpz_set_d(num.get_mpz_t(), std::nearbyint(scaled));
  Int den = 1;
  den <<= bits;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

const Rat& ExtRat::value() const {
  if (kind_ != Kind::kFinite) throw std::logic_error("ExtRat: infinite value has no rational part");
  return value_;
}

std::strong_ordering ExtRat::operator<=>(const ExtRat& other) const {
  auto rank = [](Kind k) { return k == Kind::kNegInf ? 0 : (k == Kind::kFinite ? 1 : 2); };
  if (kind_ != other.kind_ || kind_ != Kind::kFinite) return rank(kind_) <=> rank(other.kind_);
  int c = cmp(value_, other.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string ExtRat::to_string() const {
  switch (kind_) {
    case Kind::kNegInf: return "-inf";
    case Kind::kPosInf: return "+inf";
    case Kind::kFinite: break;
  }
  return curvcone::to_string(value_);
}

}  // namespace curvcone
