#pragma once

#include <atomic>
#include <chrono>
#include <optional>

#include "amc/error.hpp"

namespace amc {

// Cooperative wall-clock budget polled from inside the checking kernels.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after(double seconds) {
    Deadline d;
    if (seconds > 0)
      d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(seconds));
    return d;
  }

  bool expired() const { return at_ && Clock::now() >= *at_; }

  // Throws TimeoutError once the budget is spent. Cheap enough for inner loops
  // because the clock is only read every 256 calls.
  void poll() const {
    if (!at_) return;
    if ((++ticks_ & 0xff) == 0 && Clock::now() >= *at_) throw TimeoutError();
  }

 private:
  std::optional<Clock::time_point> at_;
  mutable unsigned ticks_ = 0;
};

}  // namespace amc
