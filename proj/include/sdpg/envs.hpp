#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace sdpg {

struct EnvSpec {
  int obs_dim = 0;
  int action_dim = 0;
  Eigen::VectorXd action_low;
  Eigen::VectorXd action_high;
  int max_episode_steps = 1000;
};

struct StepResult {
  Eigen::VectorXd next_obs;
  double reward = 0.0;
  bool done = false;
};

/// Common stepping interface. An instance is single-threaded; deterministic
/// given (seed, action sequence).
class Env {
 public:
  virtual ~Env() = default;
  virtual const EnvSpec& spec() const = 0;
  virtual Eigen::VectorXd reset(std::uint64_t seed) = 0;
  virtual StepResult step(const Eigen::VectorXd& action) = 0;
};

// ---------------------------------------------------------------------------
// Pendulum swing-up. State (theta, theta_dot) with theta = 0 upright;
// torque-limited, reward penalizes angle, speed and effort; 200-step
// episodes ended only by the step limit.
// ---------------------------------------------------------------------------

struct PendulumState {
  double theta = 0.0;
  double theta_dot = 0.0;
};

/// One integration step: theta_dot += (3g/(2l) sin(theta) + 3u/(m l^2)) dt,
/// clipped to [-8, 8]; theta += theta_dot * dt. Torque clips to [-2, 2].
PendulumState pendulum_dynamics(const PendulumState& s, double torque);

/// Reward of the post-update state: -(wrap(theta)^2 + 0.1 theta_dot^2
/// + 0.001 u^2) with wrap into (-pi, pi].
double pendulum_reward(const PendulumState& next, double torque);

double wrap_angle(double theta);

class PendulumEnv final : public Env {
 public:
  PendulumEnv();
  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd reset(std::uint64_t seed) override;
  StepResult step(const Eigen::VectorXd& action) override;

  PendulumState state() const { return state_; }
  void set_state(const PendulumState& s) { state_ = s; }

 private:
  Eigen::VectorXd observe() const;
  EnvSpec spec_;
  PendulumState state_;
  int step_count_ = 0;
};

// ---------------------------------------------------------------------------
// Chain MDP diagnostic: K states visited in order, action ignored, reward
// from state k drawn N(mu_k, sigma_k^2), terminal after K steps. The return
// from s0 has the closed form Normal(sum gamma^k mu_k, sum gamma^2k sigma_k^2).
// ---------------------------------------------------------------------------

struct NormalDist {
  double mean = 0.0;
  double stddev = 0.0;
};

NormalDist chain_return_distribution(const std::vector<double>& mus,
                                     const std::vector<double>& sigmas, double gamma);

class ChainEnv final : public Env {
 public:
  ChainEnv(std::vector<double> mus, std::vector<double> sigmas);
  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd reset(std::uint64_t seed) override;
  StepResult step(const Eigen::VectorXd& action) override;

 private:
  Eigen::VectorXd observe(int state) const;  // one-hot over K states
  EnvSpec spec_;
  std::vector<double> mus_, sigmas_;
  int state_ = 0;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

// ---------------------------------------------------------------------------
// One-step bandit: the return distribution equals the reward distribution, a
// configurable Gaussian mixture optionally shifted by -c * a^2.
// ---------------------------------------------------------------------------

struct MixtureComponent {
  double weight = 1.0;
  double mean = 0.0;
  double stddev = 0.0;
};

/// Inverse CDF of the mixture (weights must sum to 1), by bisection.
double mixture_quantile(const std::vector<MixtureComponent>& components, double tau);

double mixture_cdf(const std::vector<MixtureComponent>& components, double x);

class BanditEnv final : public Env {
 public:
  BanditEnv(std::vector<MixtureComponent> components, double action_quad_coeff);
  const EnvSpec& spec() const override { return spec_; }
  Eigen::VectorXd reset(std::uint64_t seed) override;
  StepResult step(const Eigen::VectorXd& action) override;

  const std::vector<MixtureComponent>& components() const { return components_; }

 private:
  EnvSpec spec_;
  std::vector<MixtureComponent> components_;
  double action_quad_coeff_;
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------

struct EnvConfig {
  std::string name = "pendulum";  // "pendulum" | "chain" | "bandit"
  // chain parameters
  std::vector<double> chain_mus = {1.0, 1.0, 1.0};
  std::vector<double> chain_sigmas = {1.0, 1.0, 1.0};
  // bandit parameters
  std::vector<MixtureComponent> bandit_components = {{0.5, -1.0, 0.1}, {0.5, 1.0, 0.1}};
  double bandit_action_quad_coeff = 0.0;
};

std::unique_ptr<Env> make_env(const EnvConfig& config);

}  // namespace sdpg
