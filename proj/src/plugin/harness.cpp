#include <algorithm>
#include <charconv>
#include <sstream>

#include "scope/error.hpp"
#include "scope/plugin.hpp"

namespace scope {

namespace {

constexpr CoreFlag kCoreFlags[] = {
    {"--benchmark_filter", OptionArity::OneValue, "regex selecting benchmarks to run (default .*)"},
    {"--benchmark_out", OptionArity::OneValue, "write the JSON results to this file"},
    {"--benchmark_repetitions", OptionArity::OneValue, "repetitions per benchmark (default 1)"},
    {"--benchmark_min_time", OptionArity::OneValue, "minimum seconds per timed batch (default 0.5)"},
    {"--benchmark_list_tests", OptionArity::Flag, "list matching benchmarks and exit"},
    {"--benchmark_report_aggregates_only", OptionArity::Flag,
     "report only mean/median/stddev when repeating"},
    {"--disable-scope", OptionArity::OneValue, "disable a scope by name (repeatable)"},
    {"--version", OptionArity::Flag, "print harness and scope versions"},
    {"--help", OptionArity::Flag, "print this message"},
    {"--benchmark_fake_clock", OptionArity::OneValue, "", true},
    {"--benchmark_context_date", OptionArity::OneValue, "", true},
};

bool is_core_flag(std::string_view flag) {
  return std::any_of(std::begin(kCoreFlags), std::end(kCoreFlags),
                     [&](const CoreFlag& c) { return c.flag == flag; });
}

bool parse_bool(std::string_view v, bool& out) {
  if (v == "true" || v == "1") {
    out = true;
    return true;
  }
  if (v == "false" || v == "0") {
    out = false;
    return true;
  }
  return false;
}

template <class Int>
bool parse_int(std::string_view v, Int& out) {
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  return ec == std::errc() && ptr == v.data() + v.size();
}

double parse_seconds(const std::string& flag, std::string_view v) {
  std::string text(v);
  if (!text.empty() && text.back() == 's') {
    text.pop_back();
  }
  std::size_t used = 0;
  double d = 0;
  try {
    d = std::stod(text, &used);
  } catch (const std::exception&) {
    throw BadValue(flag, std::string(v), "expected a number of seconds");
  }
  if (used != text.size() || !(d > 0)) {
    throw BadValue(flag, std::string(v), "expected a positive number of seconds");
  }
  return d;
}

}  // namespace

std::span<const CoreFlag> core_flags() {
  return kCoreFlags;
}

void ScopeRegistrar::register_benchmark(BenchmarkDefinition def) {
  def.owning_scope = scope_name_;
  benchmarks_.push_back(std::move(def));
}

void ScopeRegistrar::register_option(OptionSpec option) {
  options_.push_back(std::move(option));
}

void ScopeRegistrar::register_init(InitHook hook) {
  hooks_.push_back(std::move(hook));
}

void Harness::register_scope(ScopeDescriptor desc) {
  if (frozen_) {
    throw LateRegistration("scope '" + desc.name + "'");
  }
  if (desc.name.empty()) {
    throw InvalidDefinition("scope with an empty name");
  }
  if (std::find(declared_.begin(), declared_.end(), desc.name) != declared_.end()) {
    throw DuplicateScope(desc.name);
  }
  if (!desc.enabled) {
    declared_.push_back(desc.name);
    return;
  }

  ScopeRegistrar staged(desc.name);
  if (desc.register_fn) {
    desc.register_fn(staged);
  }

  // Validate everything against a copy so a failing scope leaves no trace.
  BenchmarkRegistry registry = registry_;
  for (auto& def : staged.benchmarks_) {
    registry.register_benchmark(std::move(def));
  }
  std::vector<OptionSpec> options = options_;
  for (auto& opt : staged.options_) {
    if (opt.flag.size() < 3 || opt.flag.rfind("--", 0) != 0) {
      throw InvalidOption("flag '" + opt.flag + "' must start with \"--\"");
    }
    if (opt.flag.find('=') != std::string::npos) {
      throw InvalidOption("flag '" + opt.flag + "' must not contain '='");
    }
    if (!opt.binding) {
      throw InvalidOption("flag '" + opt.flag + "' has no binding");
    }
    bool taken = is_core_flag(opt.flag) ||
                 std::any_of(options.begin(), options.end(),
                             [&](const OptionSpec& o) { return o.flag == opt.flag; });
    if (taken) {
      throw DuplicateFlag(opt.flag);
    }
    options.push_back(std::move(opt));
  }
  for (const auto& hook : staged.hooks_) {
    if (!hook.fn) {
      throw InvalidDefinition("scope '" + desc.name + "' registered an empty init hook");
    }
  }

  registry_ = std::move(registry);
  options_ = std::move(options);
  for (auto& hook : staged.hooks_) {
    hooks_.push_back({std::move(hook), hooks_.size()});
  }
  declared_.push_back(desc.name);
  enabled_.push_back({desc.name, desc.version});
}

void Harness::freeze() {
  frozen_ = true;
  registry_.freeze();
}

InitResult Harness::run_init(InitPhase phase, const InitContext& ctx) const {
  std::vector<const OrderedHook*> order;
  for (const auto& h : hooks_) {
    if (h.hook.phase == phase) {
      order.push_back(&h);
    }
  }
  std::stable_sort(order.begin(), order.end(), [](const OrderedHook* a, const OrderedHook* b) {
    return a->hook.priority < b->hook.priority;
  });
  for (const OrderedHook* h : order) {
    InitResult r = h->hook.fn(ctx);
    if (std::holds_alternative<Exit>(r)) {
      return r;
    }
  }
  return Continue{};
}

ParsedArgs Harness::parse_args(std::span<const std::string> argv) const {
  ParsedArgs out;
  std::vector<std::string> seen;
  auto note_repeat = [&](const std::string& flag) {
    if (std::find(seen.begin(), seen.end(), flag) != seen.end()) {
      out.diagnostics.push_back(flag + " given more than once; the last value wins");
    } else {
      seen.push_back(flag);
    }
  };

  for (std::size_t i = 0; i < argv.size(); ++i) {
    const std::string& token = argv[i];
    if (token.rfind("--", 0) != 0 || token.size() == 2) {
      throw UsageError("unexpected argument '" + token + "'");
    }
    const auto eq = token.find('=');
    const std::string flag = token.substr(0, eq);
    std::optional<std::string> inline_value;
    if (eq != std::string::npos) {
      inline_value = token.substr(eq + 1);
    }

    const CoreFlag* core = nullptr;
    for (const auto& c : kCoreFlags) {
      if (c.flag == flag) {
        core = &c;
      }
    }
    const OptionSpec* option = nullptr;
    if (!core) {
      for (const auto& o : options_) {
        if (o.flag == flag) {
          option = &o;
        }
      }
      if (!option) {
        throw UnknownFlag(flag);
      }
    }
    const OptionArity arity = core ? core->arity : option->arity;

    std::string value;
    if (arity == OptionArity::Flag) {
      bool b = true;
      if (inline_value && !parse_bool(*inline_value, b)) {
        throw BadValue(flag, *inline_value, "expected true or false");
      }
      value = b ? "true" : "false";
    } else if (inline_value) {
      value = *inline_value;
    } else if (i + 1 < argv.size() && argv[i + 1].rfind("--", 0) != 0) {
      value = argv[++i];
    } else {
      throw MissingValue(flag);
    }

    if (option) {
      try {
        option->binding(value);
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& e) {
        throw BadValue(flag, value, e.what());
      }
      continue;
    }

    if (flag != "--disable-scope") {
      note_repeat(flag);
    }
    RunConfig& cfg = out.config;
    if (flag == "--benchmark_filter") {
      cfg.filter = Pattern(value);
    } else if (flag == "--benchmark_out") {
      if (value.empty()) {
        throw BadValue(flag, value, "expected a file path");
      }
      cfg.out_path = value;
    } else if (flag == "--benchmark_repetitions") {
      int reps = 0;
      if (!parse_int(value, reps) || reps < 1) {
        throw BadValue(flag, value, "expected a positive integer");
      }
      cfg.repetitions = reps;
    } else if (flag == "--benchmark_min_time") {
      cfg.min_time = Seconds(parse_seconds(flag, value));
    } else if (flag == "--benchmark_list_tests") {
      out.list_tests = value == "true";
    } else if (flag == "--benchmark_report_aggregates_only") {
      cfg.report_aggregates_only = value == "true";
    } else if (flag == "--disable-scope") {
      out.disabled_scopes.push_back(value);
    } else if (flag == "--version") {
      out.show_version = value == "true";
    } else if (flag == "--help") {
      out.show_help = value == "true";
    } else if (flag == "--benchmark_fake_clock") {
      std::int64_t ns = 0;
      if (!parse_int(value, ns) || ns < 1) {
        throw BadValue(flag, value, "expected a positive number of nanoseconds per iteration");
      }
      out.fake_clock_per_iteration = Nanoseconds(ns);
    } else if (flag == "--benchmark_context_date") {
      out.context_date = value;
    }
  }
  return out;
}

std::string Harness::usage(std::string_view program) const {
  std::ostringstream ss;
  ss << "usage: " << program << " [flags]\n\ncore flags:\n";
  for (const auto& c : kCoreFlags) {
    if (c.hidden) {
      continue;
    }
    ss << "  " << c.flag << (c.arity == OptionArity::OneValue ? " <value>" : "") << "\n      "
       << c.description << "\n";
  }
  if (!options_.empty()) {
    ss << "\nscope flags:\n";
    for (const auto& o : options_) {
      ss << "  " << o.flag << (o.arity == OptionArity::OneValue ? " <value>" : "") << "\n      "
         << o.description << "\n";
    }
  }
  return ss.str();
}

}  // namespace scope
