#pragma once

// Scopes are self-contained benchmark plugins. Each one contributes benchmarks,
// command-line options and initialization hooks through a ScopeRegistrar when
// it is registered with a Harness. A disabled scope contributes nothing.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scope/bench.hpp"
#include "scope/clock.hpp"

namespace scope {

enum class OptionArity { Flag, OneValue };

struct OptionSpec {
  std::string flag;  // long form, "--name"
  OptionArity arity = OptionArity::OneValue;
  std::string description;
  // Receives the value text ("true" for a Flag). Throwing rejects the value.
  std::function<void(std::string_view)> binding;
};

enum class InitPhase { BeforeParse, AfterParse };

struct Continue {
  bool operator==(const Continue&) const = default;
};
struct Exit {
  int code = 1;
  std::string message;
  bool operator==(const Exit&) const = default;
};
using InitResult = std::variant<Continue, Exit>;

// Result of parsing the benchmark binary's command line.
struct ParsedArgs {
  RunConfig config;
  bool list_tests = false;
  bool show_version = false;
  bool show_help = false;
  std::vector<std::string> disabled_scopes;
  std::optional<Nanoseconds> fake_clock_per_iteration;
  std::optional<std::string> context_date;
  // Non-fatal remarks, e.g. a flag given twice.
  std::vector<std::string> diagnostics;
};

struct InitContext {
  std::span<const std::string> argv;
  const ParsedArgs* parsed = nullptr;  // null during BeforeParse
};

struct InitHook {
  InitPhase phase = InitPhase::AfterParse;
  int priority = 0;  // lower runs first; ties keep registration order
  std::function<InitResult(const InitContext&)> fn;
};

class ScopeRegistrar {
 public:
  explicit ScopeRegistrar(std::string scope_name) : scope_name_(std::move(scope_name)) {}

  const std::string& scope_name() const noexcept { return scope_name_; }

  // owning_scope is overwritten with this scope's name.
  void register_benchmark(BenchmarkDefinition def);
  void register_option(OptionSpec option);
  void register_init(InitHook hook);

 private:
  friend class Harness;
  std::string scope_name_;
  std::vector<BenchmarkDefinition> benchmarks_;
  std::vector<OptionSpec> options_;
  std::vector<InitHook> hooks_;
};

struct ScopeDescriptor {
  std::string name;
  std::string version;
  bool enabled = true;
  std::function<void(ScopeRegistrar&)> register_fn;
};

// Flags the harness itself understands. Scopes may not reuse them.
struct CoreFlag {
  std::string_view flag;
  OptionArity arity;
  std::string_view description;
  bool hidden = false;
};
std::span<const CoreFlag> core_flags();

class Harness {
 public:
  // Runs the scope's register_fn when enabled and commits its contributions
  // atomically. Throws DuplicateScope, LateRegistration, DuplicateFlag,
  // InvalidOption, or whatever benchmark registration throws.
  void register_scope(ScopeDescriptor desc);

  // Core flags fill the RunConfig; scope flags fire their bindings.
  // Throws UnknownFlag, MissingValue, BadValue, or BadRegex.
  ParsedArgs parse_args(std::span<const std::string> argv) const;

  // Hooks of `phase` in (priority, registration) order; the first Exit wins.
  InitResult run_init(InitPhase phase, const InitContext& ctx) const;

  // Ends the startup phase; later registrations throw LateRegistration.
  void freeze();
  bool frozen() const noexcept { return frozen_; }

  const BenchmarkRegistry& benchmarks() const noexcept { return registry_; }
  const std::vector<OptionSpec>& options() const noexcept { return options_; }
  // Enabled scopes in registration order.
  const std::vector<ScopeEntry>& scopes() const noexcept { return enabled_; }
  // All declared scope names, enabled or not.
  const std::vector<std::string>& declared_scopes() const noexcept { return declared_; }

  // Help text listing core and scope flags.
  std::string usage(std::string_view program) const;

 private:
  struct OrderedHook {
    InitHook hook;
    std::size_t index;
  };

  BenchmarkRegistry registry_;
  std::vector<OptionSpec> options_;
  std::vector<OrderedHook> hooks_;
  std::vector<ScopeEntry> enabled_;
  std::vector<std::string> declared_;
  bool frozen_ = false;
};

}  // namespace scope
