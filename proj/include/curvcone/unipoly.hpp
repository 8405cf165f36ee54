#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "curvcone/rational.hpp"

namespace curvcone {

/// Dense univariate polynomial over the rationals, lowest degree first.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs);
  UniPoly(std::initializer_list<Rat> coeffs);
  UniPoly(const Rat& constant);  // NOLINT: a ring element embeds as a constant
  UniPoly(long constant) : UniPoly(Rat(constant)) {}  // NOLINT

  static UniPoly x();
  static UniPoly monomial(const Rat& coeff, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  /// Coefficient of x^k; zero past the degree.
  Rat coeff(int k) const;
  /// Requires a nonzero polynomial.
  const Rat& leading() const;

  Rat eval(const Rat& at) const;
  /// Sign at a finite point, or the limit sign at +-inf.
  int sign_at(const ExtRat& at) const;

  UniPoly derivative() const;
  UniPoly monic() const;
  /// p(-x).
  UniPoly reflect() const;
  /// p(x + s).
  UniPoly shift(const Rat& s) const;
  /// Divides out gcd(p, p'); the result has the same distinct roots, all simple.
  UniPoly squarefree_part() const;

  UniPoly& operator+=(const UniPoly& other);
  UniPoly& operator-=(const UniPoly& other);
  UniPoly& operator*=(const UniPoly& other);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(UniPoly a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(char var = 'x') const;

 private:
  void trim();

  std::vector<Rat> coeffs_;
};

/// Euclidean division: a = q*b + r with deg r < deg b. Throws on b = 0.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

/// Monic gcd (zero when both inputs are zero).
UniPoly gcd(UniPoly a, UniPoly b);

/// Exact quotient; throws if b does not divide a.
UniPoly exact_div(const UniPoly& a, const UniPoly& b);

}  // namespace curvcone
