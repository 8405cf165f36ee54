#pragma once

#include <map>
#include <vector>

#include "curvcone/rational.hpp"

namespace curvcone {

/// Exponent vector of a monomial.
using Exponent = std::vector<int>;

Exponent operator+(const Exponent& a, const Exponent& b);
int total_degree(const Exponent& e);
/// True when a divides b.
bool divides(const Exponent& a, const Exponent& b);

/// All exponents of the given total degree in `nvars` variables, in
/// descending lex order (x_0^d first).
std::vector<Exponent> monomials_of_degree(int nvars, int degree);

/// Dense numbering of a fixed list of monomials.
class MonomialIndex {
 public:
  MonomialIndex() = default;
  explicit MonomialIndex(std::vector<Exponent> monomials);
  /// Degree-homogeneous index in descending lex order.
  static MonomialIndex of_degree(int nvars, int degree);

  int size() const { return static_cast<int>(monomials_.size()); }
  const Exponent& operator[](int k) const { return monomials_[static_cast<std::size_t>(k)]; }
  const std::vector<Exponent>& monomials() const { return monomials_; }
  /// -1 when absent.
  int find(const Exponent& e) const;
  int at(const Exponent& e) const;

 private:
  std::vector<Exponent> monomials_;
  std::map<Exponent, int> lookup_;
};

/// Sparse multivariate polynomial with rational coefficients.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(int nvars) : nvars_(nvars) {}

  static MultiPoly variable(int nvars, int k);
  static MultiPoly constant(int nvars, const Rat& c);
  static MultiPoly monomial(const Exponent& e, const Rat& c = 1);

  int nvars() const { return nvars_; }
  const std::map<Exponent, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat coeff(const Exponent& e) const;
  void add_term(const Exponent& e, const Rat& c);

  Rat eval(const std::vector<Rat>& point) const;
  double eval(const std::vector<double>& point) const;

  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rat& scalar);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const Rat& s, MultiPoly a) { return a *= s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  /// Partial derivative in variable k.
  MultiPoly derivative(int k) const;
  MultiPoly pow(int e) const;

 private:
  int nvars_ = 0;
  std::map<Exponent, Rat> terms_;
};

/// Coefficient vector of a homogeneous polynomial against an index.
/// Throws if a term is missing from the index.
std::vector<Rat> coefficients(const MultiPoly& p, const MonomialIndex& index);

}  // namespace curvcone
