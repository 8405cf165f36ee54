#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "curvcone/multipoly.hpp"
#include "curvcone/sdp.hpp"
#include "curvcone/tensorspace.hpp"

namespace curvcone {

/// Thrown when a relaxation would exceed the configured Gram dimension.
class SizeCapError : public std::runtime_error {
 public:
  SizeCapError(int dim, int cap);
  int dim() const { return dim_; }
  int cap() const { return cap_; }

 private:
  int dim_;
  int cap_;
};

/// Gram dimension cap: CURVCONE_MAX_PROBLEM_DIM if set, else 100.
int max_problem_dim();

struct PluckerIdealBasis {
  int n = 0;
  /// One quadratic form per 4-subset, in wedge4_basis order.
  std::vector<ModCurvOp> generators;
};

PluckerIdealBasis plucker_ideal(int n);

/// sum_IJ S_IJ x_I x_J in the C(n,2) Plucker variables.
MultiPoly quad_form_poly(const ModCurvOp& p);

/// Coefficients of (sum x_I^2)^m * P over MonomialIndex::of_degree(C(n,2), 2m+2).
std::vector<Rat> multiply_by_r_power(const ModCurvOp& p, int m);

/// Degree-d slice of the Plucker ideal, reduced to echelon form with respect to
/// lex order. Monomials that are not leading terms of the slice are "standard";
/// every degree-d form is congruent to a unique combination of them.
class IdealReduction {
 public:
  IdealReduction(int n, int degree);

  int degree() const { return degree_; }
  const MonomialIndex& monomials() const { return monomials_; }
  /// Indices into monomials() of the standard monomials, ascending.
  const std::vector<int>& standard() const { return standard_; }
  /// Position of a monomial index within standard(), or -1.
  int standard_position(int monomial) const { return std_pos_[static_cast<std::size_t>(monomial)]; }
  /// Dimension of the ideal slice.
  int rank() const { return static_cast<int>(monomials_.size()) - static_cast<int>(standard_.size()); }

  /// Normal form of one monomial, as (standard position, coefficient) pairs.
  const std::vector<std::pair<int, Rat>>& normal_form(int monomial) const {
    return nf_[static_cast<std::size_t>(monomial)];
  }
  /// Normal form of a coefficient vector over monomials(), indexed by standard position.
  std::vector<Rat> normal_form(const std::vector<Rat>& coeffs) const;

 private:
  int degree_;
  MonomialIndex monomials_;
  std::vector<int> standard_;
  std::vector<int> std_pos_;
  std::vector<std::vector<std::pair<int, Rat>>> nf_;
};

/// Full SOS problem: Gram block over every degree-(m+1) monomial, one free
/// multiplier per (degree-2m monomial, generator), one constraint per
/// degree-(2m+2) monomial.
SdpProblem build_sos_sdp(const ModCurvOp& p, int m);

/// Reduced problem solved in practice: Gram block over the standard monomials of
/// degree m+1, constraints are normal-form coefficients in degree 2m+2.
struct ReducedSos {
  int n = 0;
  int m = 0;
  std::vector<Exponent> gram_monomials;
  SdpProblem problem;
  /// Exact right-hand sides and coefficients, for rational re-verification.
  std::vector<Rat> rhs;
  /// For each constraint: ((a, b), coefficient) entries with a <= b.
  std::vector<std::vector<std::pair<std::pair<int, int>, Rat>>> rows;
  /// A Gram entry (a, b) appearing in that constraint alone, with coefficient 1.
  std::vector<std::pair<int, int>> designated;
};

ReducedSos build_reduced_sos(const ModCurvOp& p, int m);

struct SosCertificate {
  int n = 0;
  int m = 0;
  /// Every degree-(m+1) monomial in descending lex order.
  std::vector<Exponent> monomials;
  Eigen::MatrixXd gram;
  /// Degree-2m monomials; ideal_coeffs(row, k) multiplies monomial(row) * generator k.
  std::vector<Exponent> multiplier_monomials;
  Eigen::MatrixXd ideal_coeffs;
  double residual = 0;
  /// Rounded Gram, corrected onto the constraints exactly, is PSD.
  bool verified_exact = false;
  /// Same rounded Gram plus tol * Id is PSD.
  bool verified_shifted = false;
};

enum class InnerOutcome { kYes, kNoCertificate, kInconclusive };

std::string to_string(InnerOutcome o);

struct InnerResult {
  InnerOutcome outcome = InnerOutcome::kInconclusive;
  std::optional<SosCertificate> certificate;
  double t_star = 0;
  double ray_margin = 0;
};

/// Throws SizeCapError when the degree-(m+1) monomial count exceeds the cap.
InnerResult inner_membership(const ModCurvOp& r, int m, double tol = 1e-7);

/// Coefficient max-norm of r^m P - x^T G x - sum c (x^beta w_k) over degree 2m+2.
double certificate_mismatch(const ModCurvOp& p, const SosCertificate& cert);

}  // namespace curvcone
