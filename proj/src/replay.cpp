#include "sdpg/replay.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sdpg/serialize_util.hpp"

namespace sdpg {

ReplayPool::ReplayPool(std::size_t capacity, int obs_dim, int action_dim,
                       std::uint64_t seed)
    : capacity_(capacity),
      obs_dim_(obs_dim),
      action_dim_(action_dim),
      states_(capacity, obs_dim),
      actions_(capacity, action_dim),
      rewards_(capacity),
      next_states_(capacity, obs_dim),
      dones_(capacity, 0),
      rng_(seed) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
  if (obs_dim <= 0 || action_dim <= 0) {
    throw std::invalid_argument("replay dims must be positive");
  }
}

void ReplayPool::push(const Transition& t) {
  if (t.state.size() != obs_dim_ || t.next_state.size() != obs_dim_ ||
      t.action.size() != action_dim_) {
    throw std::invalid_argument("transition dimensions do not match pool");
  }
  std::lock_guard<std::mutex> lock(mutex_);
  states_.row(head_) = t.state.transpose();
  actions_.row(head_) = t.action.transpose();
  rewards_[head_] = t.reward;
  next_states_.row(head_) = t.next_state.transpose();
  dones_[head_] = t.done ? 1 : 0;
  head_ = (head_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

Transition ReplayPool::get_unlocked(std::size_t slot) const {
  Transition t;
  t.state = states_.row(slot).transpose();
  t.action = actions_.row(slot).transpose();
  t.reward = rewards_[slot];
  t.next_state = next_states_.row(slot).transpose();
  t.done = dones_[slot] != 0;
  return t;
}

std::vector<Transition> ReplayPool::sample(int count) {
  if (count <= 0) throw std::invalid_argument("sample count must be positive");
  std::lock_guard<std::mutex> lock(mutex_);
  if (size_ == 0) {
    throw std::runtime_error("replay pool is empty");
  }
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  std::vector<Transition> batch;
  batch.reserve(count);
  for (int i = 0; i < count; ++i) {
    batch.push_back(get_unlocked(pick(rng_)));
  }
  return batch;
}

std::size_t ReplayPool::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return size_;
}

void ReplayPool::save(std::ostream& out) const {
  std::lock_guard<std::mutex> lock(mutex_);
  detail::write_magic(out, "SDPGPOOL");
  detail::write_u32(out, 1);  // version
  detail::write_u64(out, capacity_);
  detail::write_u64(out, size_);
  detail::write_u64(out, head_);
  detail::write_u32(out, static_cast<std::uint32_t>(obs_dim_));
  detail::write_u32(out, static_cast<std::uint32_t>(action_dim_));
  for (std::size_t i = 0; i < size_; ++i) {
    detail::write_row(out, states_.row(i));
    detail::write_row(out, actions_.row(i));
    detail::write_f64(out, rewards_[i]);
    detail::write_row(out, next_states_.row(i));
    out.put(static_cast<char>(dones_[i]));
  }
  std::ostringstream rng_state;
  rng_state << rng_;
  detail::write_string(out, rng_state.str());
}

ReplayPool ReplayPool::load(std::istream& in) {
  detail::expect_magic(in, "SDPGPOOL");
  const auto version = detail::read_u32(in);
  if (version != 1) throw std::runtime_error("unsupported replay pool version");
  const auto capacity = detail::read_u64(in);
  const auto size = detail::read_u64(in);
  const auto head = detail::read_u64(in);
  const int obs_dim = static_cast<int>(detail::read_u32(in));
  const int action_dim = static_cast<int>(detail::read_u32(in));
  ReplayPool pool(capacity, obs_dim, action_dim, 0);
  for (std::size_t i = 0; i < size; ++i) {
    detail::read_row(in, pool.states_.row(i));
    detail::read_row(in, pool.actions_.row(i));
    pool.rewards_[i] = detail::read_f64(in);
    detail::read_row(in, pool.next_states_.row(i));
    pool.dones_[i] = static_cast<std::uint8_t>(in.get());
  }
  pool.size_ = size;
  pool.head_ = head;
  std::istringstream rng_state(detail::read_string(in));
  rng_state >> pool.rng_;
  if (!in) throw std::runtime_error("truncated replay pool file");
  return pool;
}

}  // namespace sdpg
