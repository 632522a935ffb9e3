#include <algorithm>
#include <cmath>
#include <set>

#include "scope/error.hpp"
#include "scope/results.hpp"

namespace scope {

namespace {

constexpr std::string_view kRecordFields[] = {"name",      "run_type",  "iterations",
                                              "real_time", "cpu_time",  "time_unit",
                                              "error_occurred", "error_message"};

constexpr std::string_view kContextFields[] = {"date",        "executable",          "num_cpus",
                                               "mhz_per_cpu", "cpu_scaling_enabled", "scope_version",
                                               "scopes"};

bool is_one_of(std::string_view key, std::span<const std::string_view> set) {
  return std::find(set.begin(), set.end(), key) != set.end();
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Integral doubles are written as JSON integers so that 1024.0 appears as
// `1024`; everything else uses the shortest representation that round-trips.
OrderedJson json_number(double v) {
  constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53
  if (!std::isfinite(v)) {
    return nullptr;
  }
  if (v == std::trunc(v) && std::fabs(v) < kExactIntegerLimit) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

const OrderedJson& require(const OrderedJson& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw SchemaError(where + " is missing \"" + key + "\"");
  }
  return *it;
}

std::string as_string(const OrderedJson& v, const std::string& what) {
  if (!v.is_string()) {
    throw SchemaError(what + " must be a string");
  }
  return v.get<std::string>();
}

double as_double(const OrderedJson& v, const std::string& what) {
  if (!v.is_number()) {
    throw SchemaError(what + " must be a number");
  }
  return v.get<double>();
}

std::int64_t as_int(const OrderedJson& v, const std::string& what) {
  if (v.is_number_integer()) {
    return v.get<std::int64_t>();
  }
  if (v.is_number_float()) {
    return std::llround(v.get<double>());
  }
  throw SchemaError(what + " must be an integer");
}

std::uint64_t as_count(const OrderedJson& v, const std::string& what) {
  if (v.is_number_unsigned()) {
    return v.get<std::uint64_t>();
  }
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d >= 0 && d == std::trunc(d) && d < 1.8e19) {
      return static_cast<std::uint64_t>(d);
    }
  }
  throw SchemaError(what + " must be a non-negative integer");
}

RunContext parse_context(const OrderedJson& j) {
  RunContext ctx;
  if (!j.is_object()) {
    throw SchemaError("\"context\" must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    const std::string what = "context." + key;
    if (key == "date") {
      ctx.date = as_string(value, what);
    } else if (key == "executable") {
      ctx.executable = as_string(value, what);
    } else if (key == "num_cpus") {
      ctx.num_cpus = as_int(value, what);
    } else if (key == "mhz_per_cpu") {
      ctx.mhz_per_cpu = as_int(value, what);
    } else if (key == "cpu_scaling_enabled") {
      if (!value.is_boolean()) {
        throw SchemaError(what + " must be a boolean");
      }
      ctx.cpu_scaling_enabled = value.get<bool>();
    } else if (key == "scope_version") {
      ctx.scope_version = as_string(value, what);
    } else if (key == "scopes") {
      if (!value.is_array()) {
        throw SchemaError(what + " must be an array");
      }
      for (const auto& s : value) {
        if (!s.is_object()) {
          throw SchemaError(what + " entries must be objects");
        }
        ScopeEntry entry{as_string(require(s, "name", what), what + ".name"),
                         as_string(require(s, "version", what), what + ".version")};
        if (entry.name.empty()) {
          throw SchemaError(what + " entry has an empty name");
        }
        ctx.scopes.push_back(std::move(entry));
      }
    } else {
      ctx.extra[key] = value;
    }
  }
  return ctx;
}

BenchmarkRecord parse_record(const OrderedJson& j, std::size_t index) {
  const std::string where = "benchmarks[" + std::to_string(index) + "]";
  if (!j.is_object()) {
    throw SchemaError(where + " must be an object");
  }
  BenchmarkRecord rec;
  rec.name = as_string(require(j, "name", where), where + ".name");
  if (rec.name.empty()) {
    throw SchemaError(where + ".name is empty");
  }
  std::optional<RunType> run_type;
  for (const auto& [key, value] : j.items()) {
    const std::string what = where + "." + key;
    if (key == "name") {
      continue;
    } else if (key == "run_type") {
      auto s = as_string(value, what);
      if (s == "iteration") {
        run_type = RunType::Iteration;
      } else if (s == "aggregate") {
        run_type = RunType::Aggregate;
      } else {
        throw SchemaError(what + " has unknown value \"" + s + "\"");
      }
    } else if (key == "iterations") {
      rec.iterations = as_count(value, what);
    } else if (key == "real_time") {
      rec.real_time = as_double(value, what);
    } else if (key == "cpu_time") {
      rec.cpu_time = as_double(value, what);
    } else if (key == "time_unit") {
      auto s = as_string(value, what);
      auto unit = parse_time_unit(s);
      if (!unit) {
        throw SchemaError(what + " has unknown value \"" + s + "\"");
      }
      rec.time_unit = *unit;
    } else if (key == "error_occurred") {
      if (!value.is_boolean()) {
        throw SchemaError(what + " must be a boolean");
      }
      rec.error_occurred = value.get<bool>();
    } else if (key == "error_message") {
      rec.error_message = as_string(value, what);
    } else if (value.is_number()) {
      rec.counters.set(key, value.get<double>());
    } else {
      rec.extra[key] = value;
    }
  }
  rec.run_type = run_type.value_or(has_aggregate_suffix(rec.name) ? RunType::Aggregate
                                                                   : RunType::Iteration);
  if (rec.run_type == RunType::Aggregate && !has_aggregate_suffix(rec.name)) {
    // Newer library versions emit further statistics (e.g. "_cv") and name
    // them in "aggregate_name".
    auto it = rec.extra.find("aggregate_name");
    bool named = it != rec.extra.end() && it->is_string() &&
                 ends_with(rec.name, "_" + it->get<std::string>());
    if (!named) {
      throw SchemaError(where + " is an aggregate but \"" + rec.name +
                        "\" has no aggregate suffix");
    }
  }
  return rec;
}

}  // namespace

std::string_view to_string(RunType t) {
  return t == RunType::Aggregate ? "aggregate" : "iteration";
}

std::string_view to_string(TimeUnit u) {
  switch (u) {
    case TimeUnit::Nanosecond:
      return "ns";
    case TimeUnit::Microsecond:
      return "us";
    case TimeUnit::Millisecond:
      return "ms";
    case TimeUnit::Second:
      return "s";
  }
  return "ns";
}

std::optional<TimeUnit> parse_time_unit(std::string_view s) {
  if (s == "ns") return TimeUnit::Nanosecond;
  if (s == "us") return TimeUnit::Microsecond;
  if (s == "ms") return TimeUnit::Millisecond;
  if (s == "s") return TimeUnit::Second;
  return std::nullopt;
}

bool has_aggregate_suffix(std::string_view name) {
  return std::any_of(std::begin(kAggregateSuffixes), std::end(kAggregateSuffixes),
                     [&](std::string_view suffix) { return ends_with(name, suffix); });
}

void CounterMap::set(std::string_view name, double value) {
  for (auto& [k, v] : items_) {
    if (k == name) {
      v = value;
      return;
    }
  }
  items_.emplace_back(std::string(name), value);
}

const double* CounterMap::find(std::string_view name) const {
  for (const auto& [k, v] : items_) {
    if (k == name) {
      return &v;
    }
  }
  return nullptr;
}

ResultsDocument parse_document(std::string_view json_text) {
  OrderedJson root;
  try {
    root = OrderedJson::parse(json_text.begin(), json_text.end());
  } catch (const OrderedJson::parse_error& e) {
    // The parser counts bytes read, so the offending byte is one before.
    throw MalformedJson(e.byte == 0 ? 0 : e.byte - 1, e.what());
  }
  if (!root.is_object()) {
    throw SchemaError("top level must be an object");
  }
  ResultsDocument doc;
  if (auto it = root.find("context"); it != root.end()) {
    doc.context = parse_context(*it);
  }
  auto it = root.find("benchmarks");
  if (it == root.end() || !it->is_array()) {
    throw SchemaError("missing \"benchmarks\" array");
  }
  doc.benchmarks.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    doc.benchmarks.push_back(parse_record((*it)[i], i));
  }
  return doc;
}

std::string serialize_document(const ResultsDocument& doc) {
  OrderedJson root = OrderedJson::object();

  const RunContext& c = doc.context;
  OrderedJson ctx = OrderedJson::object();
  ctx["date"] = c.date;
  ctx["executable"] = c.executable;
  ctx["num_cpus"] = c.num_cpus;
  ctx["mhz_per_cpu"] = c.mhz_per_cpu;
  ctx["cpu_scaling_enabled"] = c.cpu_scaling_enabled;
  ctx["scope_version"] = c.scope_version;
  ctx["scopes"] = OrderedJson::array();
  for (const auto& s : c.scopes) {
    ctx["scopes"].push_back(OrderedJson{{"name", s.name}, {"version", s.version}});
  }
  for (const auto& [key, value] : c.extra.items()) {
    if (!is_one_of(key, kContextFields)) {
      ctx[key] = value;
    }
  }
  root["context"] = std::move(ctx);

  OrderedJson benchmarks = OrderedJson::array();
  for (const auto& r : doc.benchmarks) {
    OrderedJson o = OrderedJson::object();
    o["name"] = r.name;
    o["run_type"] = to_string(r.run_type);
    o["iterations"] = r.iterations;
    o["real_time"] = json_number(r.real_time);
    o["cpu_time"] = json_number(r.cpu_time);
    o["time_unit"] = to_string(r.time_unit);
    if (r.error_occurred) {
      o["error_occurred"] = true;
    }
    if (r.error_message) {
      o["error_message"] = *r.error_message;
    }
    for (const auto& [key, value] : r.counters) {
      if (!is_one_of(key, kRecordFields)) {
        o[key] = json_number(value);
      }
    }
    for (const auto& [key, value] : r.extra.items()) {
      if (!is_one_of(key, kRecordFields) && !o.contains(key)) {
        o[key] = value;
      }
    }
    benchmarks.push_back(std::move(o));
  }
  root["benchmarks"] = std::move(benchmarks);

  return root.dump(2, ' ', false, OrderedJson::error_handler_t::replace) + "\n";
}

ResultsDocument concat_documents(std::span<const ResultsDocument> docs) {
  if (docs.empty()) {
    throw EmptyInput();
  }
  ResultsDocument out;
  out.context = docs.front().context;
  std::size_t total = 0;
  for (const auto& d : docs) {
    total += d.benchmarks.size();
  }
  out.benchmarks.reserve(total);
  for (const auto& d : docs) {
    out.benchmarks.insert(out.benchmarks.end(), d.benchmarks.begin(), d.benchmarks.end());
  }
  return out;
}

ResultsDocument filter_by_name(const ResultsDocument& doc, const Pattern& pattern) {
  ResultsDocument out;
  out.context = doc.context;
  std::copy_if(doc.benchmarks.begin(), doc.benchmarks.end(), std::back_inserter(out.benchmarks),
               [&](const BenchmarkRecord& r) { return pattern.search(r.name); });
  return out;
}

ResultsDocument filter_by_name(const ResultsDocument& doc, const std::string& pattern) {
  return filter_by_name(doc, Pattern(pattern));
}

std::optional<std::size_t> Frame::column_index(std::string_view column) const {
  auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - columns.begin());
}

Frame to_frame(const ResultsDocument& doc) {
  Frame frame;
  frame.columns = {"name", "iterations", "real_time", "cpu_time", "time_unit"};
  std::set<std::string> counter_names;
  for (const auto& r : doc.benchmarks) {
    for (const auto& [key, value] : r.counters) {
      counter_names.insert(key);
    }
  }
  frame.columns.insert(frame.columns.end(), counter_names.begin(), counter_names.end());

  frame.rows.reserve(doc.benchmarks.size());
  for (const auto& r : doc.benchmarks) {
    std::vector<FrameCell> row;
    row.reserve(frame.columns.size());
    row.emplace_back(r.name);
    row.emplace_back(static_cast<double>(r.iterations));
    row.emplace_back(r.real_time);
    row.emplace_back(r.cpu_time);
    row.emplace_back(std::string(to_string(r.time_unit)));
    for (const auto& name : counter_names) {
      if (const double* v = r.counters.find(name)) {
        row.emplace_back(*v);
      } else {
        row.emplace_back(std::monostate{});
      }
    }
    frame.rows.push_back(std::move(row));
  }
  return frame;
}

}  // namespace scope
