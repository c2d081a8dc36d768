#include "sdpg/distloss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sdpg {

namespace {

void check_pair(const SampleVector& z, const SampleVector& z_target,
                const QuantileGrid& grid) {
  if (z.values.size() != grid.n || z_target.values.size() != grid.n) {
    throw std::invalid_argument("sample vectors must have length n = grid.n");
  }
  if (!z.sorted) {
    throw std::invalid_argument("generated samples must be sorted ascending");
  }
  for (int i = 0; i + 1 < grid.n; ++i) {
    if (z.values[i] > z.values[i + 1]) {
      throw std::invalid_argument("samples flagged sorted are not ascending");
    }
  }
}

}  // namespace

QuantileGrid midpoint_quantiles(int n, double zeta) {
  if (n < 1) throw std::invalid_argument("midpoint_quantiles: n must be >= 1");
  if (zeta <= 0.0) throw std::invalid_argument("midpoint_quantiles: zeta must be > 0");
  QuantileGrid grid;
  grid.n = n;
  grid.zeta = zeta;
  grid.tau_hat.resize(n);
  for (int i = 1; i <= n; ++i) {
    grid.tau_hat[i - 1] = (2.0 * i - 1.0) / (2.0 * n);
  }
  return grid;
}

double huber(double v, double zeta) {
  if (zeta <= 0.0) throw std::invalid_argument("huber: zeta must be > 0");
  if (!std::isfinite(v)) throw std::domain_error("huber: non-finite input");
  const double a = std::abs(v);
  return a < zeta ? 0.5 * v * v : zeta * (a - 0.5 * zeta);
}

double huber_deriv(double v, double zeta) {
  if (zeta <= 0.0) throw std::invalid_argument("huber_deriv: zeta must be > 0");
  if (!std::isfinite(v)) throw std::domain_error("huber_deriv: non-finite input");
  const double a = std::abs(v);
  return a <= zeta ? v : zeta * (v > 0.0 ? 1.0 : -1.0);
}

double quantile_huber_loss_raw(const Eigen::VectorXd& z_sorted,
                               const Eigen::VectorXd& target,
                               const QuantileGrid& grid) {
  const int n = grid.n;
  const double zeta = grid.zeta;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double tau = grid.tau_hat[i];
    for (int j = 0; j < n; ++j) {
      const double v = target[j] - z_sorted[i];
      const double weight = (v < 0.0) ? (1.0 - tau) : tau;
      const double a = std::abs(v);
      const double l = a < zeta ? 0.5 * v * v : zeta * (a - 0.5 * zeta);
      sum += weight * l;
    }
  }
  return sum / (static_cast<double>(n) * n);
}

void quantile_huber_loss_grad_raw(const Eigen::VectorXd& z_sorted,
                                  const Eigen::VectorXd& target,
                                  const QuantileGrid& grid, Eigen::VectorXd& grad_out) {
  const int n = grid.n;
  const double zeta = grid.zeta;
  grad_out.resize(n);
  const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
  for (int i = 0; i < n; ++i) {
    const double tau = grid.tau_hat[i];
    double g = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = target[j] - z_sorted[i];
      const double weight = (v < 0.0) ? (1.0 - tau) : tau;
      const double a = std::abs(v);
      const double lp = a <= zeta ? v : zeta * (v > 0.0 ? 1.0 : -1.0);
      g -= weight * lp;  // d v / d z_i = -1
    }
    grad_out[i] = g * inv_n2;
  }
}

double quantile_huber_loss(const SampleVector& z, const SampleVector& z_target,
                           const QuantileGrid& grid) {
  check_pair(z, z_target, grid);
  return quantile_huber_loss_raw(z.values, z_target.values, grid);
}

Eigen::VectorXd quantile_huber_loss_grad(const SampleVector& z,
                                         const SampleVector& z_target,
                                         const QuantileGrid& grid) {
  check_pair(z, z_target, grid);
  Eigen::VectorXd grad;
  quantile_huber_loss_grad_raw(z.values, z_target.values, grid, grad);
  return grad;
}

double sorted_wasserstein(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys, double p) {
  if (xs.size() == 0 || ys.size() == 0) {
    throw std::invalid_argument("sorted_wasserstein: empty input");
  }
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("sorted_wasserstein: length mismatch");
  }
  if (p < 1.0) throw std::invalid_argument("sorted_wasserstein: p must be >= 1");
  std::vector<double> a(xs.data(), xs.data() + xs.size());
  std::vector<double> b(ys.data(), ys.data() + ys.size());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::pow(std::abs(a[i] - b[i]), p);
  }
  return std::pow(sum / static_cast<double>(a.size()), 1.0 / p);
}

SortResult sort_ascending(const Eigen::VectorXd& values) {
  if (!values.allFinite()) {
    throw std::domain_error("sort_ascending: non-finite values");
  }
  SortResult result;
  result.perm.resize(values.size());
  std::iota(result.perm.begin(), result.perm.end(), 0);
  std::stable_sort(result.perm.begin(), result.perm.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  result.values.resize(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    result.values[i] = values[result.perm[i]];
  }
  return result;
}

}  // namespace sdpg
