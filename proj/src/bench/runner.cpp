#include <algorithm>
#include <cmath>
#include <set>

#include "scope/bench.hpp"
#include "scope/error.hpp"

namespace scope {

BenchState::BenchState(std::uint64_t iterations, std::span<const std::int64_t> args,
                       bool uses_manual_time, Clock& clock)
    : requested_(iterations), args_(args), uses_manual_time_(uses_manual_time), clock_(&clock) {}

BenchState::Iterator BenchState::begin() {
  if (!started_) {
    started_ = true;
    wall_start_ = clock_->wall_now();
    cpu_start_ = clock_->cpu_now();
  }
  return Iterator(this, requested_);
}

void BenchState::stop_timing() {
  if (!started_ || stopped_) {
    return;
  }
  stopped_ = true;
  clock_->batch_finished(completed_);
  wall_stop_ = clock_->wall_now();
  cpu_stop_ = clock_->cpu_now();
}

void BenchState::skip_with_error(std::string message) {
  error_ = std::move(message);
}

void BenchState::set_counter(std::string_view name, double value, CounterKind kind) {
  for (auto& [k, c] : counters_) {
    if (k == name) {
      c = {value, kind};
      return;
    }
  }
  counters_.emplace_back(std::string(name), Counter{value, kind});
}

std::vector<std::string> instance_names(const BenchmarkDefinition& def) {
  if (def.args.empty()) {
    return {def.base_name};
  }
  std::vector<std::string> names;
  names.reserve(def.args.size());
  for (const auto& tuple : def.args) {
    std::string name = def.base_name;
    for (auto a : tuple) {
      name += '/';
      name += std::to_string(a);
    }
    names.push_back(std::move(name));
  }
  return names;
}

void BenchmarkRegistry::check(const BenchmarkDefinition& def) const {
  if (def.base_name.empty()) {
    throw InvalidDefinition("empty base name");
  }
  if (def.base_name.find('/') != std::string::npos) {
    throw InvalidDefinition("base name '" + def.base_name + "' contains '/'");
  }
  if (!def.body) {
    throw InvalidDefinition("'" + def.base_name + "' has no body");
  }
  if (!def.args.empty()) {
    auto arity = def.args.front().size();
    for (const auto& tuple : def.args) {
      if (tuple.size() != arity) {
        throw InvalidDefinition("'" + def.base_name + "' has argument tuples of differing arity");
      }
    }
  }
  if (def.min_time_override && def.min_time_override->count() <= 0) {
    throw InvalidDefinition("'" + def.base_name + "' has a non-positive min_time");
  }
  if (def.repetitions_override && *def.repetitions_override < 1) {
    throw InvalidDefinition("'" + def.base_name + "' has fewer than one repetition");
  }
  auto names = instance_names(def);
  std::set<std::string_view> seen;
  for (const auto& n : names) {
    if (contains(n) || !seen.insert(n).second) {
      throw DuplicateName(n);
    }
  }
}

RegistrationHandle BenchmarkRegistry::register_benchmark(BenchmarkDefinition def) {
  if (frozen_) {
    throw LateRegistration("benchmark '" + def.base_name + "'");
  }
  check(def);
  auto names = instance_names(def);
  auto shared = std::make_shared<const BenchmarkDefinition>(std::move(def));
  for (std::size_t i = 0; i < names.size(); ++i) {
    ArgTuple args = shared->args.empty() ? ArgTuple{} : shared->args[i];
    instances_.push_back({names[i], std::move(args), shared});
  }
  return {std::move(names)};
}

bool BenchmarkRegistry::contains(std::string_view instance_name) const {
  return std::any_of(instances_.begin(), instances_.end(),
                     [&](const BenchmarkInstance& i) { return i.name == instance_name; });
}

std::optional<std::uint64_t> decide_iterations(std::uint64_t prev_iters, Seconds elapsed,
                                               Seconds min_time) {
  if (elapsed >= min_time || prev_iters >= kMaxIterations) {
    return std::nullopt;
  }
  const double prev = static_cast<double>(prev_iters);
  double factor = 10.0;
  if (elapsed.count() > 0) {
    factor = std::min(10.0, std::max(2.0, 1.4 * min_time.count() / elapsed.count()));
  }
  const double wanted = std::round(prev * factor);
  const double lo = prev + 1.0;
  const double hi = static_cast<double>(kMaxIterations);
  return static_cast<std::uint64_t>(std::clamp(wanted, lo, hi));
}

namespace {

Measurement measure(const BenchmarkInstance& instance, const BenchState& st) {
  Measurement m;
  m.name = instance.name;
  m.iterations = st.iterations();
  const bool manual = instance.definition->uses_manual_time;
  const FractionalNanoseconds total =
      manual ? st.manual_time() : FractionalNanoseconds(st.wall_elapsed());
  const double iters = static_cast<double>(st.iterations());
  m.real_time_per_iter = total / iters;
  m.cpu_time_per_iter = FractionalNanoseconds(st.cpu_elapsed()) / iters;
  const double total_ns = total.count();
  for (const auto& [name, c] : st.counters()) {
    double v = c.value;
    switch (c.kind) {
      case CounterKind::Plain:
        break;
      case CounterKind::Rate:
        v = total_ns > 0 ? v * 1e9 / total_ns : 0.0;
        break;
      case CounterKind::AvgIterations:
        v = v / iters;
        break;
    }
    m.counters.set(name, v);
  }
  return m;
}

Measurement failed(const BenchmarkInstance& instance, std::string message) {
  Measurement m;
  m.name = instance.name;
  m.error = std::move(message);
  return m;
}

Measurement run_repetition(const BenchmarkInstance& instance, Seconds min_time, Clock& clock) {
  const auto& def = *instance.definition;
  std::uint64_t iters = 1;
  for (;;) {
    BenchState st(iters, instance.args, def.uses_manual_time, clock);
    try {
      def.body(st);
    } catch (const std::exception& e) {
      st.stop_timing();
      return failed(instance, std::string("benchmark threw: ") + e.what());
    }
    st.stop_timing();
    if (st.error_occurred()) {
      return failed(instance, *st.error());
    }
    if (!st.loop_entered()) {
      return failed(instance, "benchmark body never entered the iteration loop");
    }
    const Seconds elapsed = def.uses_manual_time ? Seconds(st.manual_time())
                                                 : Seconds(st.wall_elapsed());
    auto next = decide_iterations(iters, elapsed, min_time);
    if (!next) {
      return measure(instance, st);
    }
    iters = *next;
  }
}

double mean_of(std::span<const double> xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const auto n = xs.size();
  if (n % 2 == 1) {
    return xs[n / 2];
  }
  return (xs[n / 2 - 1] + xs[n / 2]) / 2.0;
}

double stddev_of(std::span<const double> xs, double mean) {
  if (xs.size() < 2) {
    return 0.0;
  }
  double ss = 0;
  for (double x : xs) {
    ss += (x - mean) * (x - mean);
  }
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<Measurement> run_one(const BenchmarkInstance& instance, const RunConfig& cfg,
                                 Clock& clock) {
  const auto& def = *instance.definition;
  const Seconds min_time = def.min_time_override.value_or(cfg.min_time);
  const int reps = def.repetitions_override.value_or(cfg.repetitions);
  std::vector<Measurement> out;
  out.reserve(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r) {
    out.push_back(run_repetition(instance, min_time, clock));
  }
  return out;
}

std::vector<Measurement> compute_statistics(std::span<const Measurement> ms) {
  if (ms.size() < 2) {
    throw TooFewRepetitions(ms.size());
  }
  const std::string& name = ms.front().name;

  std::vector<std::string> counter_names;
  for (const auto& m : ms) {
    for (const auto& [k, v] : m.counters) {
      if (std::find(counter_names.begin(), counter_names.end(), k) == counter_names.end()) {
        counter_names.push_back(k);
      }
    }
  }

  struct Stats {
    double mean, median, stddev;
  };
  auto stats = [](std::vector<double> xs) {
    const double mean = mean_of(xs);
    const double sd = stddev_of(xs, mean);
    return Stats{mean, median_of(std::move(xs)), sd};
  };

  std::vector<double> real, cpu;
  for (const auto& m : ms) {
    real.push_back(m.real_time_per_iter.count());
    cpu.push_back(m.cpu_time_per_iter.count());
  }
  const Stats real_s = stats(real);
  const Stats cpu_s = stats(cpu);
  std::vector<Stats> counter_s;
  for (const auto& cname : counter_names) {
    std::vector<double> xs;
    for (const auto& m : ms) {
      if (const double* v = m.counters.find(cname)) {
        xs.push_back(*v);
      }
    }
    counter_s.push_back(stats(std::move(xs)));
  }

  std::vector<Measurement> out(3);
  const char* suffixes[] = {"_mean", "_median", "_stddev"};
  auto pick = [](const Stats& s, int which) {
    return which == 0 ? s.mean : which == 1 ? s.median : s.stddev;
  };
  for (int which = 0; which < 3; ++which) {
    Measurement& agg = out[static_cast<std::size_t>(which)];
    agg.name = name + suffixes[which];
    agg.iterations = ms.size();
    agg.real_time_per_iter = FractionalNanoseconds(pick(real_s, which));
    agg.cpu_time_per_iter = FractionalNanoseconds(pick(cpu_s, which));
    for (std::size_t c = 0; c < counter_names.size(); ++c) {
      agg.counters.set(counter_names[c], pick(counter_s[c], which));
    }
  }
  return out;
}

BenchmarkRecord to_record(const Measurement& m, RunType run_type) {
  BenchmarkRecord r;
  r.name = m.name;
  r.run_type = run_type;
  r.time_unit = TimeUnit::Nanosecond;
  if (m.error) {
    r.error_occurred = true;
    r.error_message = *m.error;
    return r;
  }
  r.iterations = m.iterations;
  r.real_time = m.real_time_per_iter.count();
  r.cpu_time = m.cpu_time_per_iter.count();
  r.counters = m.counters;
  return r;
}

ResultsDocument run_filtered(const BenchmarkRegistry& registry, const RunConfig& cfg,
                             Clock& clock, RunContext context) {
  ResultsDocument doc;
  doc.context = std::move(context);
  for (const auto& instance : registry.instances()) {
    if (!cfg.filter.search(instance.name)) {
      continue;
    }
    auto runs = run_one(instance, cfg, clock);

    std::vector<Measurement> ok;
    std::copy_if(runs.begin(), runs.end(), std::back_inserter(ok),
                 [](const Measurement& m) { return !m.error; });
    std::vector<Measurement> aggregates;
    if (runs.size() >= 2 && ok.size() >= 2) {
      aggregates = compute_statistics(ok);
    }

    const bool aggregates_only = cfg.report_aggregates_only && !aggregates.empty();
    for (const auto& m : runs) {
      // Failed runs stay visible even when only aggregates are requested.
      if (!aggregates_only || m.error) {
        doc.benchmarks.push_back(to_record(m, RunType::Iteration));
      }
    }
    for (const auto& m : aggregates) {
      doc.benchmarks.push_back(to_record(m, RunType::Aggregate));
    }
  }
  return doc;
}

std::vector<std::string> list_benchmarks(const BenchmarkRegistry& registry,
                                         const RunConfig& cfg) {
  std::vector<std::string> names;
  for (const auto& instance : registry.instances()) {
    if (cfg.filter.search(instance.name)) {
      names.push_back(instance.name);
    }
  }
  return names;
}

}  // namespace scope
