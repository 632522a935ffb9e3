#pragma once

// Object model for Google-Benchmark-formatted result files:
//
//   {
//     "context":    { "date": ..., "executable": ..., "num_cpus": ..., ... },
//     "benchmarks": [ { "name": ..., "iterations": ..., "real_time": ..., ... } ]
//   }
//
// Numeric record fields outside the fixed schema become counters. Anything else
// the model does not understand is carried along verbatim so that
// parse_document(serialize_document(d)) == d.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "scope/regex.hpp"

namespace scope {

using OrderedJson = nlohmann::ordered_json;

enum class RunType { Iteration, Aggregate };
enum class TimeUnit { Nanosecond, Microsecond, Millisecond, Second };

std::string_view to_string(RunType t);
std::string_view to_string(TimeUnit u);
std::optional<TimeUnit> parse_time_unit(std::string_view s);

// Aggregate suffixes the harness emits.
inline constexpr std::string_view kAggregateSuffixes[] = {"_mean", "_median", "_stddev"};

// True when `name` ends in one of kAggregateSuffixes.
bool has_aggregate_suffix(std::string_view name);

// Insertion-ordered name -> value map. Lookups are linear; records carry a
// handful of counters.
class CounterMap {
 public:
  using value_type = std::pair<std::string, double>;

  void set(std::string_view name, double value);
  const double* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  bool operator==(const CounterMap&) const = default;

 private:
  std::vector<value_type> items_;
};

struct BenchmarkRecord {
  std::string name;
  RunType run_type = RunType::Iteration;
  std::uint64_t iterations = 0;
  double real_time = 0;
  double cpu_time = 0;
  TimeUnit time_unit = TimeUnit::Nanosecond;
  CounterMap counters;
  bool error_occurred = false;
  std::optional<std::string> error_message;
  // Non-numeric fields outside the schema (e.g. "label", "aggregate_name").
  OrderedJson extra = OrderedJson::object();

  bool operator==(const BenchmarkRecord&) const = default;
};

struct ScopeEntry {
  std::string name;
  std::string version;
  bool operator==(const ScopeEntry&) const = default;
};

struct RunContext {
  std::string date;
  std::string executable;
  std::int64_t num_cpus = 0;
  std::int64_t mhz_per_cpu = 0;
  bool cpu_scaling_enabled = false;
  std::string scope_version;
  std::vector<ScopeEntry> scopes;
  // Context keys the model does not interpret, in input order.
  OrderedJson extra = OrderedJson::object();

  bool operator==(const RunContext&) const = default;
};

struct ResultsDocument {
  RunContext context;
  std::vector<BenchmarkRecord> benchmarks;

  bool operator==(const ResultsDocument&) const = default;
};

// Throws MalformedJson or SchemaError.
ResultsDocument parse_document(std::string_view json_text);

std::string serialize_document(const ResultsDocument& doc);

// Context of the first document, benchmarks of all of them in argument order.
// Throws EmptyInput for an empty list.
ResultsDocument concat_documents(std::span<const ResultsDocument> docs);

// Keeps records whose name contains a match of `pattern`.
ResultsDocument filter_by_name(const ResultsDocument& doc, const Pattern& pattern);
ResultsDocument filter_by_name(const ResultsDocument& doc, const std::string& pattern);

// Tabular view. Cells are null (monostate), a number, or text for the
// "name" and "time_unit" columns.
using FrameCell = std::variant<std::monostate, double, std::string>;

struct Frame {
  std::vector<std::string> columns;
  std::vector<std::vector<FrameCell>> rows;

  // Index of `column` in `columns`, or nullopt.
  std::optional<std::size_t> column_index(std::string_view column) const;
};

Frame to_frame(const ResultsDocument& doc);

}  // namespace scope
