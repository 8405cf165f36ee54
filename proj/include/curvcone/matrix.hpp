#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvcone/rational.hpp"
#include "curvcone/unipoly.hpp"

namespace curvcone {

/// Row-major dense matrix over an arbitrary commutative ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

/// Symmetric rational matrix; `set` writes both (i, j) and (j, i).
class SymMatRat {
 public:
  SymMatRat() = default;
  explicit SymMatRat(int dim);
  /// Throws std::invalid_argument when `m` is not square and symmetric.
  explicit SymMatRat(Matrix<Rat> m);

  static SymMatRat identity(int dim);
  static SymMatRat diagonal(const std::vector<Rat>& diag);

  int dim() const { return m_.rows(); }
  const Rat& operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, const Rat& value);
  const Matrix<Rat>& matrix() const { return m_; }

  SymMatRat& operator+=(const SymMatRat& other);
  SymMatRat& operator-=(const SymMatRat& other);
  SymMatRat& operator*=(const Rat& scalar);
  friend SymMatRat operator+(SymMatRat a, const SymMatRat& b) { return a += b; }
  friend SymMatRat operator-(SymMatRat a, const SymMatRat& b) { return a -= b; }
  friend SymMatRat operator*(const Rat& s, SymMatRat a) { return a *= s; }
  friend SymMatRat operator-(SymMatRat a) { return a *= Rat(-1); }
  bool operator==(const SymMatRat& other) const { return m_ == other.m_; }

  /// Frobenius pairing tr(A B).
  friend Rat frobenius(const SymMatRat& a, const SymMatRat& b);

 private:
  Matrix<Rat> m_;
};

/// Division-free characteristic polynomial (Berkowitz). Returns the
/// coefficients of det(M - lambda*Id), lowest power of lambda first, so the
/// leading coefficient is (-1)^n. Valid over any commutative ring.
template <class Ring>
std::vector<Ring> charpoly_coeffs(const Matrix<Ring>& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly: non-square matrix");
  const int n = m.rows();
  // vect holds det(lambda*Id - A_r) highest power first.
  std::vector<Ring> vect{Ring(1)};
  for (int r = 0; r < n; ++r) {
    // Column of the Toeplitz matrix: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
    std::vector<Ring> col;
    col.reserve(static_cast<std::size_t>(r) + 2);
    col.push_back(Ring(1));
    col.push_back(Ring(0) - m(r, r));
    std::vector<Ring> v(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) v[static_cast<std::size_t>(i)] = m(i, r);
    for (int k = 0; k < r; ++k) {
      Ring dot(0);
      for (int i = 0; i < r; ++i) dot += m(r, i) * v[static_cast<std::size_t>(i)];
      col.push_back(Ring(0) - dot);
      if (k + 1 < r) {
        std::vector<Ring> next(static_cast<std::size_t>(r), Ring(0));
        for (int i = 0; i < r; ++i) {
          for (int j = 0; j < r; ++j) next[static_cast<std::size_t>(i)] += m(i, j) * v[static_cast<std::size_t>(j)];
        }
        v = std::move(next);
      }
    }
    std::vector<Ring> out(static_cast<std::size_t>(r) + 2, Ring(0));
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t j = 0; j < vect.size() && j <= i; ++j) out[i] += col[i - j] * vect[j];
    }
    vect = std::move(out);
  }
  // vect = det(lambda - M), highest first; flip to lowest first and apply (-1)^n.
  std::vector<Ring> result(vect.rbegin(), vect.rend());
  if (n % 2 == 1) {
    for (auto& c : result) c = Ring(0) - c;
  }
  return result;
}

/// det(M - lambda*Id) for a rational matrix.
UniPoly charpoly(const Matrix<Rat>& m);

/// Exact determinant by Gaussian elimination over the rationals.
Rat determinant(Matrix<Rat> m);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<int> rref(Matrix<Rat>& m);

/// Basis of {v : m v = 0}, one vector per free column of the RREF (free
/// variable set to 1, the other free variables 0).
std::vector<std::vector<Rat>> null_space(Matrix<Rat> m);

enum class PsdStatus { kPositiveDefinite, kPsdSingular, kNotPsd };

std::string to_string(PsdStatus status);

/// Exact verdict from the signs of the elementary symmetric functions of the
/// eigenvalues, read off the characteristic polynomial.
PsdStatus psd_status(const SymMatRat& m);

/// The same verdict by exact symmetric elimination with diagonal pivoting.
/// Cheaper for large matrices; used as an independent route.
PsdStatus psd_status_elimination(const SymMatRat& m);

}  // namespace curvcone
