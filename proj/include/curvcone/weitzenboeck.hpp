#pragma once

#include <optional>
#include <vector>

#include "curvcone/matrix.hpp"
#include "curvcone/multipoly.hpp"
#include "curvcone/tensorspace.hpp"

namespace curvcone {

/// Largest polynomial degree accepted by the curvature term.
inline constexpr int kMaxHarmonicDegree = 6;

struct HarmonicBasis {
  int n = 0;
  int p = 0;
  /// Harmonic polynomials with primitive integer coefficients.
  std::vector<MultiPoly> basis;

  int size() const { return static_cast<int>(basis.size()); }
};

/// Null space of the Laplacian on degree-p forms, free columns in descending lex order.
HarmonicBasis harmonic_basis(int n, int p);

/// Mean of x^alpha over the unit sphere in R^n, n = alpha.size().
Rat sphere_moment(const Exponent& alpha);

struct CurvatureTerm {
  int n = 0;
  int p = 0;
  SymMatRat matrix;
};

/// K_ab = mean over the sphere of <R(x ^ grad psi_a), x ^ grad psi_b>.
CurvatureTerm curvature_term(const CurvOp& r, int p);
CurvatureTerm curvature_term(const CurvOp& r, const HarmonicBasis& basis);

struct OuterResult {
  bool member = true;
  /// First degree p whose term is not PSD.
  std::optional<int> failing_p;
};

/// Exact test of K(R, p) >= 0 for p = 1 .. m+1.
OuterResult outer_membership(const CurvOp& r, int m);

}  // namespace curvcone
