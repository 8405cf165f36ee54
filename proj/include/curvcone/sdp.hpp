#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace curvcone {

/// Coefficient (i, j) = (j, i) = value of one block, with i <= j.
struct SdpEntry {
  int block = 0;
  int i = 0;
  int j = 0;
  double value = 0;
};

/// sum <A_b, X_b> + sum_k f_k w_k = rhs, where w are free scalars.
struct SdpConstraint {
  std::vector<SdpEntry> entries;
  std::vector<std::pair<int, double>> free_coeffs;
  double rhs = 0;
};

struct SdpObjective {
  std::vector<SdpEntry> entries;
  std::vector<std::pair<int, double>> free_costs;
};

/// Primal standard form over a product of PSD blocks and free scalars.
struct SdpProblem {
  std::vector<int> block_dims;
  int num_free = 0;
  std::vector<SdpConstraint> constraints;
  /// Feasibility problem when absent.
  std::optional<SdpObjective> objective;

  /// Throws std::invalid_argument on any index or dimension mismatch.
  void validate() const;
};

struct SdpPoint {
  std::vector<Eigen::MatrixXd> blocks;
  Eigen::VectorXd free;
};

enum class SdpVerdict { kFeasible, kInfeasible, kInconclusive };

std::string to_string(SdpVerdict v);

struct SdpStatus {
  SdpVerdict verdict = SdpVerdict::kInconclusive;
  std::optional<SdpPoint> point;
  /// Multipliers y with -sum y_k A_k >= 0, sum y_k f_k = 0 and b.y > 0.
  std::optional<Eigen::VectorXd> dual_ray;
  double primal_residual = 0;
  double dual_residual = 0;
  double gap = 0;
  /// Best min-eigenvalue slack found.
  double t_star = 0;
  /// b.y / tr(W) of the verified ray; zero when absent.
  double ray_margin = 0;
  int iterations = 0;
};

struct SlackResult {
  /// +inf when the slack is unbounded.
  double t = 0;
  /// X = Z + t I of the slack problem, with free values.
  SdpPoint point;
  /// Dual multipliers of the constraints.
  Eigen::VectorXd y;
  bool converged = false;
  bool unbounded = false;
  int iterations = 0;
  double primal_residual = 0;
  double dual_residual = 0;
  double gap = 0;
};

/// max t such that some point of the affine space has X - t I >= 0.
/// Throws std::domain_error if the affine constraints are inconsistent.
SlackResult min_eig_slack(const SdpProblem& problem, int max_iters = 200);

SdpStatus solve(const SdpProblem& problem, double feas_tol = 1e-7, int max_iters = 200);

/// Max-norm of the constraint residual and min eigenvalue over the blocks.
double constraint_residual(const SdpProblem& problem, const SdpPoint& point);
double min_eigenvalue(const SdpPoint& point);

/// Plain-text sparse triplet dump; see README for the layout.
void write_sdp(const SdpProblem& problem, std::ostream& out);

}  // namespace curvcone
