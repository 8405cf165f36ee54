#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace curvcone {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "p/q", "-p/q" or an integer. Throws std::invalid_argument on
/// anything else (including a zero denominator).
Rat parse_rat(std::string_view text);

/// Canonical text form: "p/q" when the denominator is not 1, else "p".
std::string to_string(const Rat& value);

inline int sign(const Rat& value) { return sgn(value); }

/// Exact rational from a double (every finite double is a dyadic rational).
Rat rat_from_double(double value);

/// Rounds to the nearest multiple of 2^-bits.
Rat round_dyadic(double value, int bits);

/// A rational extended by the two symbols -inf and +inf, totally ordered.
class ExtRat {
 public:
  enum class Kind { kNegInf, kFinite, kPosInf };

  ExtRat() = default;
  ExtRat(Rat value) : kind_(Kind::kFinite), value_(std::move(value)) {}  // NOLINT
  ExtRat(long value) : ExtRat(Rat(value)) {}                              // NOLINT

  static ExtRat neg_inf() { return ExtRat(Kind::kNegInf); }
  static ExtRat pos_inf() { return ExtRat(Kind::kPosInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::kFinite; }
  /// Only valid for finite values.
  const Rat& value() const;

  std::strong_ordering operator<=>(const ExtRat& other) const;
  bool operator==(const ExtRat& other) const { return (*this <=> other) == 0; }

  std::string to_string() const;

 private:
  explicit ExtRat(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::kFinite;
  Rat value_;
};

}  // namespace curvcone
