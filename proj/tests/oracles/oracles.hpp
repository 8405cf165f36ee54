#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "curvcone/matrix.hpp"
#include "curvcone/sos.hpp"
#include "curvcone/tensorspace.hpp"
#include "curvcone/unipoly.hpp"

// Independent reference computations for the tests. Nothing here calls the
// routine it is used to check.
namespace oracle {

using curvcone::Matrix;
using curvcone::ModCurvOp;
using curvcone::Rat;
using curvcone::SymMatRat;
using curvcone::UniPoly;

/// Real roots of p from the eigenvalues of its companion matrix.
std::vector<double> numeric_real_roots(const UniPoly& p, double imag_tol = 1e-7);

/// Laplace expansion along the first row.
Rat cofactor_det(const Matrix<Rat>& m);
/// det(M - lambda Id) by Laplace expansion over polynomial entries.
UniPoly cofactor_charpoly(const Matrix<Rat>& m);

Eigen::MatrixXd to_eigen(const Matrix<Rat>& m);
double min_eig(const SymMatRat& m);
double min_eig(const Eigen::MatrixXd& m);

/// Mean of x^alpha over S^2 by Gauss-Legendre in z and the trapezoid rule in phi.
double sphere_mean_s2(int a, int b, int c);
/// Mean of x^a y^b over the unit circle (trapezoid rule).
double circle_mean(int a, int b);

/// Ric_ij = sum_k R(e_i ^ e_k, e_j ^ e_k) read off the full antisymmetric 4-tensor.
Matrix<Rat> ricci_from_tensor(const ModCurvOp& r);

/// Random rational with denominator `den` in [-bound, bound].
Rat random_rat(std::mt19937_64& rng, int bound_num, int den);
UniPoly random_poly(std::mt19937_64& rng, int degree, int bound_num, int den);
SymMatRat random_sym(std::mt19937_64& rng, int dim, int bound_num, int den);

/// The Hodge star of R^4, written out by hand in the basis 12,13,14,23,24,34.
SymMatRat hodge4();

/// Outcome of the brute-force sweep of R + x* over x in [-D, D] with step 1/64.
enum class SweepVerdict { kTrue, kFalse, kUndecided };
SweepVerdict dim4_sweep(const ModCurvOp& r);

/// Evaluates r^m P(x) - v(x)^T G v(x) - sum_k c_k(x) omega_k(x) at x, where
/// the pieces are assembled from their definitions in the Plucker coordinates.
double certificate_identity_at(const ModCurvOp& p, const curvcone::SosCertificate& cert, const std::vector<double>& x);

/// Plucker coordinates of X ^ Y written directly from 2x2 minors.
std::vector<double> plucker_coords(const std::vector<double>& x, const std::vector<double>& y);

/// A random n = 4 operator with sec >= 0 that vanishes on some plane: R + x0* is
/// PSD and singular for x0 = <P,*>/6, where P is a PD matrix with one plane killed.
curvcone::CurvOp boundary_curvop4(std::mt19937_64& rng);
/// R + x* is PSD exactly for x - shift in [c (2 + sqrt 2), c (8 - sqrt 2)].
struct SplitCurvOp4 {
  curvcone::CurvOp r;
  Rat shift;
};
SplitCurvOp4 split_curvop4(const Rat& c);

/// The Zoltek form, parsed from its sum-of-monomials expression.
ModCurvOp zoltek_raw();

}  // namespace oracle
