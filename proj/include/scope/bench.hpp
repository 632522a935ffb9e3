#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scope/clock.hpp"
#include "scope/regex.hpp"
#include "scope/results.hpp"

namespace scope {

inline constexpr std::string_view kHarnessName = "scope";
inline constexpr std::string_view kHarnessVersion = "1.0.0";

// Keeps the compiler from discarding a value computed in a timed loop.
template <class T>
inline void do_not_optimize(T const& value) {
#if defined(__GNUC__) || defined(__clang__)
  asm volatile("" : : "r,m"(value) : "memory");
#else
  static_cast<void>(*static_cast<volatile const char*>(static_cast<const void*>(&value)));
#endif
}

// Forces pending writes to memory to be treated as observable.
inline void clobber_memory() {
#if defined(__GNUC__) || defined(__clang__)
  asm volatile("" : : : "memory");
#endif
}

inline constexpr std::uint64_t kMaxIterations = 1'000'000'000;
inline constexpr Seconds kDefaultMinTime{0.5};

enum class CounterKind {
  Plain,
  Rate,           // divided by the measured time of the batch, in seconds
  AvgIterations,  // divided by the iteration count of the batch
};

struct Counter {
  double value = 0;
  CounterKind kind = CounterKind::Plain;
};

// Handed to a benchmark body. The body runs its timed region inside
//
//   for (auto _ : state) { ... }
//
// which yields exactly iterations() times unless skip_with_error() is called.
class BenchState {
  struct Sentinel {};

 public:
  class Iterator {
   public:
    struct Value {
      ~Value() {}  // non-trivial, so `for (auto _ : state)` draws no unused warning
    };
    Value operator*() const { return {}; }
    Iterator& operator++() {
      --remaining_;
      ++state_->completed_;
      return *this;
    }
    bool operator!=(Sentinel) const {
      if (remaining_ != 0 && !state_->error_) {
        return true;
      }
      state_->stop_timing();
      return false;
    }

   private:
    friend class BenchState;
    Iterator(BenchState* state, std::uint64_t remaining) : state_(state), remaining_(remaining) {}
    BenchState* state_;
    std::uint64_t remaining_;
  };

  BenchState(std::uint64_t iterations, std::span<const std::int64_t> args, bool uses_manual_time,
             Clock& clock);

  BenchState(const BenchState&) = delete;
  BenchState& operator=(const BenchState&) = delete;

  Iterator begin();
  Sentinel end() const { return {}; }

  std::uint64_t iterations() const noexcept { return requested_; }
  std::span<const std::int64_t> args() const noexcept { return args_; }
  // The i-th argument of the instance; throws std::out_of_range.
  std::int64_t arg(std::size_t i) const {
    if (i >= args_.size()) {
      throw std::out_of_range("benchmark argument index " + std::to_string(i));
    }
    return args_[i];
  }

  // Adds one iteration's worth of self-measured time. Only benchmarks
  // registered with uses_manual_time may call this (std::logic_error otherwise).
  template <class Rep, class Period>
  void set_iteration_time(std::chrono::duration<Rep, Period> d) {
    if (!uses_manual_time_) {
      throw std::logic_error("set_iteration_time on a benchmark without manual timing");
    }
    manual_ += std::chrono::duration_cast<FractionalNanoseconds>(d);
  }
  FractionalNanoseconds manual_time() const noexcept { return manual_; }

  // Marks the run failed; the iteration loop stops at its next check.
  void skip_with_error(std::string message);
  bool error_occurred() const noexcept { return error_.has_value(); }
  const std::optional<std::string>& error() const noexcept { return error_; }

  void set_counter(std::string_view name, double value, CounterKind kind = CounterKind::Plain);
  const std::vector<std::pair<std::string, Counter>>& counters() const noexcept {
    return counters_;
  }

  // Readings of the timed region, valid once the loop finished.
  bool loop_entered() const noexcept { return started_; }
  std::uint64_t completed_iterations() const noexcept { return completed_; }
  Nanoseconds wall_elapsed() const noexcept { return wall_stop_ - wall_start_; }
  Nanoseconds cpu_elapsed() const noexcept { return cpu_stop_ - cpu_start_; }

  // Closes the timed region if the body left the loop with `break`.
  void stop_timing();

 private:
  std::uint64_t requested_;
  std::span<const std::int64_t> args_;
  bool uses_manual_time_;
  Clock* clock_;

  bool started_ = false;
  bool stopped_ = false;
  std::uint64_t completed_ = 0;
  Nanoseconds wall_start_{0}, wall_stop_{0}, cpu_start_{0}, cpu_stop_{0};
  FractionalNanoseconds manual_{0};
  std::optional<std::string> error_;
  std::vector<std::pair<std::string, Counter>> counters_;
};

using ArgTuple = std::vector<std::int64_t>;

struct BenchmarkDefinition {
  std::string base_name;
  std::vector<ArgTuple> args;
  std::function<void(BenchState&)> body;
  bool uses_manual_time = false;
  std::optional<Seconds> min_time_override;
  std::optional<int> repetitions_override;
  std::string owning_scope;
};

// Instance names for a definition: "base" or "base/a0/a1..." per tuple.
std::vector<std::string> instance_names(const BenchmarkDefinition& def);

struct BenchmarkInstance {
  std::string name;
  ArgTuple args;
  std::shared_ptr<const BenchmarkDefinition> definition;
};

struct RegistrationHandle {
  std::vector<std::string> instances;
};

class BenchmarkRegistry {
 public:
  // Throws InvalidDefinition, DuplicateName, or LateRegistration. Nothing is
  // registered when it throws.
  RegistrationHandle register_benchmark(BenchmarkDefinition def);

  // Throws InvalidDefinition or DuplicateName if `def` could not be registered.
  void check(const BenchmarkDefinition& def) const;

  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }

  const std::vector<BenchmarkInstance>& instances() const noexcept { return instances_; }
  bool contains(std::string_view instance_name) const;

 private:
  std::vector<BenchmarkInstance> instances_;
  bool frozen_ = false;
};

struct RunConfig {
  Pattern filter{".*"};
  Seconds min_time = kDefaultMinTime;
  int repetitions = 1;
  std::optional<std::filesystem::path> out_path;
  bool report_aggregates_only = false;
};

struct Measurement {
  std::string name;
  std::uint64_t iterations = 0;
  FractionalNanoseconds real_time_per_iter{0};
  FractionalNanoseconds cpu_time_per_iter{0};
  CounterMap counters;
  std::optional<std::string> error;

  bool operator==(const Measurement&) const = default;
};

// Next batch size for the adaptive loop, or nullopt once the batch that took
// `elapsed` is long enough (or the iteration cap is reached).
std::optional<std::uint64_t> decide_iterations(std::uint64_t prev_iters, Seconds elapsed,
                                               Seconds min_time);

// Runs every repetition of one instance; the result has one entry per
// repetition. A body that reports an error yields a Measurement with `error`
// set and zero times.
std::vector<Measurement> run_one(const BenchmarkInstance& instance, const RunConfig& cfg,
                                 Clock& clock);

// Mean, median and sample standard deviation across repetitions.
// Throws TooFewRepetitions when fewer than two measurements are given.
std::vector<Measurement> compute_statistics(std::span<const Measurement> ms);

BenchmarkRecord to_record(const Measurement& m, RunType run_type);

// Runs the matching instances in registration order. `context` becomes the
// document's context unchanged.
ResultsDocument run_filtered(const BenchmarkRegistry& registry, const RunConfig& cfg,
                             Clock& clock, RunContext context);

std::vector<std::string> list_benchmarks(const BenchmarkRegistry& registry,
                                         const RunConfig& cfg);

// Context fields describing this machine and process.
RunContext describe_host(std::string executable);

}  // namespace scope
