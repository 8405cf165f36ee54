#pragma once

#include <utility>
#include <vector>

#include "curvcone/rational.hpp"
#include "curvcone/unipoly.hpp"

namespace curvcone {

/// Signed remainder sequence p, p', -rem(p, p'), ...
struct SturmSeq {
  std::vector<UniPoly> polys;

  /// Number of sign changes at a point (zeros skipped); +-inf use limit signs.
  int variations(const ExtRat& at) const;
};

/// Standard Sturm sequence of (p, p'). Throws std::domain_error("zero polynomial").
/// Repeated roots are not removed here; callers wanting the canonical
/// chain pass `p.squarefree_part()`.
SturmSeq sturm_sequence(const UniPoly& p);

/// Number of distinct real roots of p in (a, b]. Requires a < b and that
/// neither finite endpoint is a root; throws "endpoint vanishes" otherwise.
int count_roots(const UniPoly& p, const ExtRat& a, const ExtRat& b);

/// Common root-isolating partition for a family of nonzero polynomials.
///
/// points[0] = -inf, points.back() = +inf; no family member vanishes at a
/// finite point; interval j = (points[j], points[j+1]) holds exactly one
/// real number that is a root of some member (unless the family has no real
/// roots at all, in which case there is a single interval and no flags).
struct IsolatingPartition {
  std::vector<ExtRat> points;
  /// root_flags[j][i]: member i has a root in interval j.
  std::vector<std::vector<bool>> root_flags;
  /// brackets[j] = (lo, hi): finite dyadic bracket inside interval j around
  /// its unique root point; lo and hi are not roots of any member.
  std::vector<std::pair<Rat, Rat>> brackets;

  int num_intervals() const { return static_cast<int>(points.size()) - 1; }
};

IsolatingPartition isolate_family(const std::vector<UniPoly>& family);

/// Cauchy bound rounded up to a power of two: every real root r has |r| < bound.
Rat root_bound(const UniPoly& p);

/// Discriminant a_n^{2n-2} prod_{i<j} (r_i - r_j)^2, computed exactly as
/// (-1)^{n(n-1)/2} Res(p, p') / a_n via the Sylvester determinant.
/// Throws std::domain_error for constant p.
Rat discriminant_x(const UniPoly& p);

/// Sylvester resultant Res(p, q); both must be nonzero.
Rat resultant(const UniPoly& p, const UniPoly& q);

}  // namespace curvcone
