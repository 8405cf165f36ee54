#include "curvcone/matrix.hpp"

#include <algorithm>
#include <utility>

namespace curvcone {

SymMatRat::SymMatRat(int dim) : m_(dim, dim) {}

SymMatRat::SymMatRat(Matrix<Rat> m) : m_(std::move(m)) {
  if (!m_.is_square()) throw std::invalid_argument("SymMatRat: matrix is not square");
  for (int i = 0; i < m_.rows(); ++i) {
    for (int j = i + 1; j < m_.cols(); ++j) {
      if (m_(i, j) != m_(j, i)) throw std::invalid_argument("SymMatRat: matrix is not symmetric");
    }
  }
}

SymMatRat SymMatRat::identity(int dim) { return SymMatRat(Matrix<Rat>::identity(dim)); }

SymMatRat SymMatRat::diagonal(const std::vector<Rat>& diag) {
  SymMatRat out(static_cast<int>(diag.size()));
  for (std::size_t i = 0; i < diag.size(); ++i) out.m_(static_cast<int>(i), static_cast<int>(i)) = diag[i];
  return out;
}

void SymMatRat::set(int i, int j, const Rat& value) {
  m_(i, j) = value;
  m_(j, i) = value;
}

SymMatRat& SymMatRat::operator+=(const SymMatRat& other) {
  if (dim() != other.dim()) throw std::invalid_argument("SymMatRat: dimension mismatch");
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) m_(i, j) += other.m_(i, j);
  return *this;
}

SymMatRat& SymMatRat::operator-=(const SymMatRat& other) {
  if (dim() != other.dim()) throw std::invalid_argument("SymMatRat: dimension mismatch");
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) m_(i, j) -= other.m_(i, j);
  return *this;
}

SymMatRat& SymMatRat::operator*=(const Rat& scalar) {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) m_(i, j) *= scalar;
  return *this;
}

Rat frobenius(const SymMatRat& a, const SymMatRat& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("frobenius: dimension mismatch");
  Rat acc = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) acc += a(i, j) * b(i, j);
  return acc;
}

UniPoly charpoly(const Matrix<Rat>& m) { return UniPoly(charpoly_coeffs(m)); }

Rat determinant(Matrix<Rat> m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: non-square matrix");
  const int n = m.rows();
  Rat det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == 0) continue;
      Rat f = m(r, col) / m(col, col);
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

std::vector<int> rref(Matrix<Rat>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Rat inv = 1 / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rat f = m(r, col);
      for (int j = col; j < m.cols(); ++j) m(r, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<std::vector<Rat>> null_space(Matrix<Rat> m) {
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<Rat>> out;
  for (int free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<Rat> v(static_cast<std::size_t>(m.cols()));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<std::size_t>(pivots[r])] = -m(static_cast<int>(r), free);
    out.push_back(std::move(v));
  }
  return out;
}

std::string to_string(PsdStatus status) {
  switch (status) {
    case PsdStatus::kPositiveDefinite: return "POSITIVE_DEFINITE";
    case PsdStatus::kPsdSingular: return "PSD_SINGULAR";
    case PsdStatus::kNotPsd: return "NOT_PSD";
  }
  return "?";
}

PsdStatus psd_status(const SymMatRat& m) {
  const int n = m.dim();
  if (n == 0) return PsdStatus::kPositiveDefinite;
  // Clear denominators; a positive rescaling leaves the verdict unchanged.
  Int den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m(i, j).get_den_mpz_t());
  Matrix<Int> scaled(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = m(i, j).get_num() * (den / m(i, j).get_den());
  std::vector<Int> c = charpoly_coeffs(scaled);
  // det(M - l) = sum_k (-1)^k e_{n-k} l^k, so e_i = (-1)^{n-i} c_{n-i}.
  bool all_positive = true;
  for (int i = 1; i <= n; ++i) {
    int s = sgn(c[static_cast<std::size_t>(n - i)]);
    if ((n - i) % 2 == 1) s = -s;
    if (s < 0) return PsdStatus::kNotPsd;
    if (s == 0) all_positive = false;
  }
  return all_positive ? PsdStatus::kPositiveDefinite : PsdStatus::kPsdSingular;
}

PsdStatus psd_status_elimination(const SymMatRat& m) {
  const int n = m.dim();
  Matrix<Rat> a = m.matrix();
  std::vector<bool> done(static_cast<std::size_t>(n), false);
  for (int step = 0; step < n; ++step) {
    // Largest remaining diagonal entry as pivot.
    int p = -1;
    for (int i = 0; i < n; ++i) {
      if (done[static_cast<std::size_t>(i)]) continue;
      if (p < 0 || a(i, i) > a(p, p)) p = i;
    }
    if (a(p, p) < 0) return PsdStatus::kNotPsd;
    if (a(p, p) == 0) {
      // All remaining diagonals are <= 0 here; PSD forces the remaining block to vanish.
      for (int i = 0; i < n; ++i) {
        if (done[static_cast<std::size_t>(i)]) continue;
        for (int j = 0; j < n; ++j) {
          if (!done[static_cast<std::size_t>(j)] && a(i, j) != 0) return PsdStatus::kNotPsd;
        }
      }
      return PsdStatus::kPsdSingular;
    }
    done[static_cast<std::size_t>(p)] = true;
    for (int i = 0; i < n; ++i) {
      if (done[static_cast<std::size_t>(i)] || a(i, p) == 0) continue;
      Rat f = a(i, p) / a(p, p);
      for (int j = 0; j < n; ++j) {
        if (!done[static_cast<std::size_t>(j)]) a(i, j) -= f * a(p, j);
      }
    }
  }
  return PsdStatus::kPositiveDefinite;
}

}  // namespace curvcone
