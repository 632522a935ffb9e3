#pragma once

#include <chrono>
#include <cstdint>

namespace scope {

using Nanoseconds = std::chrono::nanoseconds;
using Seconds = std::chrono::duration<double>;
using FractionalNanoseconds = std::chrono::duration<double, std::nano>;

// Time source for the runner. Readings are only ever subtracted from each
// other, so the epoch is irrelevant.
class Clock {
 public:
  virtual ~Clock() = default;

  virtual Nanoseconds wall_now() = 0;
  // CPU time consumed by the whole process.
  virtual Nanoseconds cpu_now() = 0;
  // Called once a timed batch finishes, before the closing readings are taken.
  virtual void batch_finished(std::uint64_t /*iterations*/) {}
};

// Steady wall clock plus per-process CPU clock.
class SystemClock final : public Clock {
 public:
  Nanoseconds wall_now() override;
  Nanoseconds cpu_now() override;
};

// Deterministic clock for tests: time only moves when a batch finishes, by a
// fixed cost per iteration.
class FakeClock final : public Clock {
 public:
  explicit FakeClock(Nanoseconds wall_per_iteration)
      : FakeClock(wall_per_iteration, wall_per_iteration) {}
  FakeClock(Nanoseconds wall_per_iteration, Nanoseconds cpu_per_iteration)
      : wall_per_iter_(wall_per_iteration), cpu_per_iter_(cpu_per_iteration) {}

  Nanoseconds wall_now() override { return wall_; }
  Nanoseconds cpu_now() override { return cpu_; }
  void batch_finished(std::uint64_t iterations) override {
    wall_ += wall_per_iter_ * static_cast<std::int64_t>(iterations);
    cpu_ += cpu_per_iter_ * static_cast<std::int64_t>(iterations);
  }

 private:
  Nanoseconds wall_per_iter_;
  Nanoseconds cpu_per_iter_;
  Nanoseconds wall_{0};
  Nanoseconds cpu_{0};
};

}  // namespace scope
