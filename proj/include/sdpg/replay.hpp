#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <mutex>
#include <random>
#include <vector>

namespace sdpg {

/// One environment step. Dimensions must match the pool they are pushed to.
struct Transition {
  Eigen::VectorXd state;
  Eigen::VectorXd action;
  double reward = 0.0;
  Eigen::VectorXd next_state;
  bool done = false;
};

/// Fixed-capacity FIFO pool with uniform sampling (with replacement).
/// Storage is flat and fully reserved at construction; once full, pushes
/// overwrite the oldest entries. Thread contract: one writer (push) and one
/// reader (sample) may interleave; sample sees a consistent prefix of pushes.
class ReplayPool {
 public:
  ReplayPool(std::size_t capacity, int obs_dim, int action_dim, std::uint64_t seed);

  void push(const Transition& t);
  std::vector<Transition> sample(int count);

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }
  int obs_dim() const { return obs_dim_; }
  int action_dim() const { return action_dim_; }

  // Data pointers, exposed so tests can verify there is no reallocation.
  const double* state_data() const { return states_.data(); }
  const double* action_data() const { return actions_.data(); }

  void save(std::ostream& out) const;
  static ReplayPool load(std::istream& in);

 private:
  Transition get_unlocked(std::size_t slot) const;

  std::size_t capacity_;
  int obs_dim_;
  int action_dim_;
  Eigen::MatrixXd states_;       // capacity x obs_dim
  Eigen::MatrixXd actions_;      // capacity x action_dim
  Eigen::VectorXd rewards_;      // capacity
  Eigen::MatrixXd next_states_;  // capacity x obs_dim
  std::vector<std::uint8_t> dones_;
  std::size_t size_ = 0;
  std::size_t head_ = 0;  // next slot to write
  std::mt19937_64 rng_;
  mutable std::mutex mutex_;
};

}  // namespace sdpg
