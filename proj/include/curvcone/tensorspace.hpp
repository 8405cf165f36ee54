#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "curvcone/matrix.hpp"
#include "curvcone/rational.hpp"

namespace curvcone {

inline int choose2(int n) { return n * (n - 1) / 2; }

/// Lexicographic Plucker basis of the 2-vectors: (0,1) < (0,2) < ... < (n-2,n-1).
/// Indices are 0-based here; user-facing text uses 1-based pairs.
class PluckerBasis {
 public:
  explicit PluckerBasis(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  int index(int i, int j) const;
  std::pair<int, int> pair(int k) const { return pairs_[static_cast<std::size_t>(k)]; }

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
};

/// 4-subsets i<j<k<l of {0..n-1}, lexicographic.
std::vector<std::array<int, 4>> wedge4_basis(int n);

/// Symmetric form on the 2-vectors of R^n, in the Plucker basis.
class ModCurvOp {
 public:
  ModCurvOp() = default;
  /// Throws when the matrix size is not C(n,2).
  ModCurvOp(int n, SymMatRat matrix);
  static ModCurvOp zero(int n);
  static ModCurvOp identity(int n);

  int n() const { return n_; }
  const SymMatRat& matrix() const { return m_; }
  const Rat& operator()(int i, int j) const { return m_(i, j); }

  bool operator==(const ModCurvOp& other) const { return n_ == other.n_ && m_ == other.m_; }

 protected:
  int n_ = 0;
  SymMatRat m_;
};

/// A ModCurvOp satisfying the first Bianchi identity. Construction checks it.
class CurvOp : public ModCurvOp {
 public:
  CurvOp() = default;
  /// Throws std::invalid_argument("not Bianchi") when the identity fails.
  explicit CurvOp(const ModCurvOp& op);
  CurvOp(int n, SymMatRat matrix) : CurvOp(ModCurvOp(n, std::move(matrix))) {}
  static CurvOp zero(int n) { return CurvOp(ModCurvOp::zero(n)); }
  static CurvOp identity(int n) { return CurvOp(ModCurvOp::identity(n)); }

  CurvOp& operator+=(const CurvOp& other);
  CurvOp& operator-=(const CurvOp& other);
  CurvOp& operator*=(const Rat& s);
  friend CurvOp operator+(CurvOp a, const CurvOp& b) { return a += b; }
  friend CurvOp operator-(CurvOp a, const CurvOp& b) { return a -= b; }
  friend CurvOp operator*(const Rat& s, CurvOp a) { return a *= s; }
};

/// Quadratic form alpha -> <omega, alpha ^ alpha> as a symmetric matrix. The
/// coefficients are over wedge4_basis(n); n < 4 gives the zero map.
ModCurvOp wedge4_embed(int n, const std::vector<Rat>& omega);

/// Embedding of a single basis element of the 4-vectors.
ModCurvOp wedge4_unit(int n, int which);

/// Hodge star for n = 4.
ModCurvOp hodge_star();

/// Frobenius pairings with every embedded 4-vector basis element.
std::vector<Rat> bianchi_pairings(const ModCurvOp& s);
bool is_bianchi(const ModCurvOp& s);

/// Orthogonal projection onto the Bianchi subspace.
CurvOp bianchi_project(const ModCurvOp& s);

/// Wedge coordinates of X ^ Y in the Plucker basis.
std::vector<Rat> wedge(const std::vector<Rat>& x, const std::vector<Rat>& y);
std::vector<double> wedge(const std::vector<double>& x, const std::vector<double>& y);

/// <R(X^Y), X^Y> / |X^Y|^2. Throws std::domain_error("degenerate plane").
Rat sec_eval(const ModCurvOp& r, const std::vector<Rat>& x, const std::vector<Rat>& y);

/// Minimum of sec over pseudorandom planes; deterministic for a seed.
double sec_sample_min(const ModCurvOp& r, int samples, std::uint64_t seed);

enum class BoundSide { kLower, kUpper };

/// Lower: R - k Id; upper: k Id - R.
CurvOp apply_bound_reduction(const CurvOp& r, const Rat& k, BoundSide side);

struct Signature {
  int n;
  int nu;
  /// Throws on nu outside [0, n].
  Signature(int n, int nu);
};

/// G^G for G = diag(-1 (nu times), 1, ..., 1).
ModCurvOp g_wedge_g(const Signature& sig);

/// (G^G) * R. Throws std::invalid_argument unless the product is symmetric.
ModCurvOp psi_Q(const Matrix<Rat>& r, const Signature& sig);

/// Bianchi projection of a random symmetric matrix with entries on the grid
/// (1/16)Z intersected with [-magnitude, magnitude].
CurvOp random_curvop(int n, std::uint64_t seed, const Rat& magnitude = 1);

/// Ric_ij = sum_k <R(e_i ^ e_k), e_j ^ e_k>.
SymMatRat ricci(const ModCurvOp& r);

}  // namespace curvcone
