#pragma once

#include <Eigen/Core>

#include <vector>

namespace sdpg {

/// Midpoint quantile levels tau_hat_i = (2i-1)/(2n) paired with the Huber
/// threshold zeta that together parameterize the quantile Huber loss.
struct QuantileGrid {
  int n = 0;
  Eigen::VectorXd tau_hat;
  double zeta = 1.0;
};

QuantileGrid midpoint_quantiles(int n, double zeta = 1.0);

/// A vector of scalar samples; `sorted` asserts ascending order.
struct SampleVector {
  Eigen::VectorXd values;
  bool sorted = false;
};

/// Huber kernel: 0.5 v^2 for |v| < zeta, else zeta*(|v| - 0.5*zeta).
double huber(double v, double zeta);

/// Derivative of the Huber kernel; at |v| = zeta the quadratic branch is
/// used (the two branches agree there, so this only fixes the convention).
double huber_deriv(double v, double zeta);

/// Quantile Huber loss (1/n^2) sum_i sum_j |tau_hat_i - [v<0]| L_zeta(v)
/// with v = target_j - z_i. The quantile level attaches to the generated
/// samples z, which must be sorted ascending; targets enter only through
/// the j-sum and need no ordering.
double quantile_huber_loss(const SampleVector& z, const SampleVector& z_target,
                           const QuantileGrid& grid);

/// d(loss)/d(z_i), treating targets as constants. At v = 0 the indicator
/// [v<0] is 0; at |v| = zeta the quadratic branch applies.
Eigen::VectorXd quantile_huber_loss_grad(const SampleVector& z,
                                         const SampleVector& z_target,
                                         const QuantileGrid& grid);

// Raw-buffer versions used by the training hot path; z must be ascending.
double quantile_huber_loss_raw(const Eigen::VectorXd& z_sorted,
                               const Eigen::VectorXd& target,
                               const QuantileGrid& grid);
void quantile_huber_loss_grad_raw(const Eigen::VectorXd& z_sorted,
                                  const Eigen::VectorXd& target,
                                  const QuantileGrid& grid, Eigen::VectorXd& grad_out);

/// W_p between two equal-size empirical distributions: sort both ascending
/// and pair ranks, ((1/n) sum |x_i - y_i|^p)^(1/p). Exact 1-D optimal
/// transport for empirical measures; diagnostic use only, not a training
/// loss.
double sorted_wasserstein(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys, double p);

/// Stable ascending sort. perm maps sorted position -> original index, so
/// values[perm[i]] = sorted[i]; ties keep their original relative order.
struct SortResult {
  Eigen::VectorXd values;
  std::vector<int> perm;
};

SortResult sort_ascending(const Eigen::VectorXd& values);

}  // namespace sdpg
