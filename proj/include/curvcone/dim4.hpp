#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "curvcone/matrix.hpp"
#include "curvcone/sturm.hpp"
#include "curvcone/tensorspace.hpp"
#include "curvcone/unipoly.hpp"

namespace curvcone {

/// sigma[i-1] = e_i(eigenvalues of R + x*), so that
/// det(R + x* - lambda) = lambda^6 + sum_i (-1)^i sigma_i(x) lambda^(6-i).
struct ParamCharPoly {
  std::array<UniPoly, 6> sigma;

  /// Sign vector of all sigma_i at a point (limit signs at +-inf).
  std::array<int, 6> signs_at(const ExtRat& x) const;
};

ParamCharPoly param_charpoly(const CurvOp& r);

/// R + x* as a rational symmetric matrix.
SymMatRat shifted_by_star(const CurvOp& r, const Rat& x);

/// disc_x det(R - k Id + x*).
Rat defining_poly(const CurvOp& r, const Rat& k = 0);

bool query_sec_gt(const CurvOp& r);
bool query_sec_geq(const CurvOp& r);

struct FtCertificate {
  enum class Kind { kRationalPoint, kIsolatedRoot };
  Kind kind = Kind::kRationalPoint;
  Rat value;
  /// Isolating bracket (lo, hi] and a squarefree factor with exactly one root in it.
  Rat lo, hi;
  UniPoly factor;
  bool strict = false;

  std::string describe() const;
};

std::optional<FtCertificate> ft_certificate(const CurvOp& r);

/// Exact status of R + x0* where x0 is the unique root of `factor` in (lo, hi].
PsdStatus psd_status_at_root(const CurvOp& r, const UniPoly& factor, const Rat& lo, const Rat& hi);

/// Re-checks a certificate from scratch.
bool verify_certificate(const CurvOp& r, const FtCertificate& cert);

bool query_bound(const CurvOp& r, const Rat& k, BoundSide side, bool strict);

}  // namespace curvcone
