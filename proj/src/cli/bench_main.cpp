#include <algorithm>
#include <memory>

#include "scope/cli.hpp"
#include "scope/error.hpp"
#include "scope/fileio.hpp"

namespace scope::cli {

namespace {

constexpr std::string_view kDisableFlag = "--disable-scope";

// --disable-scope has to be known before scopes register, since disabled
// scopes must not contribute flags to the parser.
std::vector<std::string> scan_disabled(std::span<const std::string> args) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind(std::string(kDisableFlag) + "=", 0) == 0) {
      names.push_back(a.substr(kDisableFlag.size() + 1));
    } else if (a == kDisableFlag && i + 1 < args.size()) {
      names.push_back(args[++i]);
    }
  }
  return names;
}

int usage_error(std::ostream& err, std::string_view program, const std::string& message) {
  err << program << ": " << message << "\n"
      << "usage: " << program << " [--benchmark_filter=<regex>] [--benchmark_out=<file>] "
      << "[--benchmark_repetitions=<n>] [--benchmark_min_time=<seconds>] "
      << "[--benchmark_list_tests] [--benchmark_report_aggregates_only] "
      << "[--disable-scope=<name>] [--version] [--help] [scope flags]\n";
  return kUsage;
}

}  // namespace

int bench_main(std::span<const std::string> argv, std::vector<ScopeDescriptor> scopes,
               std::ostream& out, std::ostream& err) {
  const std::string program = argv.empty() ? std::string(kHarnessName) : argv.front();
  const auto args = argv.empty() ? argv : argv.subspan(1);

  const auto disabled = scan_disabled(args);
  for (const auto& name : disabled) {
    bool known = std::any_of(scopes.begin(), scopes.end(),
                             [&](const ScopeDescriptor& d) { return d.name == name; });
    if (!known) {
      return usage_error(err, program, "--disable-scope: no scope named '" + name + "'");
    }
  }

  Harness harness;
  try {
    for (auto& desc : scopes) {
      if (std::find(disabled.begin(), disabled.end(), desc.name) != disabled.end()) {
        desc.enabled = false;
      }
      harness.register_scope(std::move(desc));
    }
  } catch (const Error& e) {
    err << program << ": scope registration failed: " << e.what() << "\n";
    return kFailure;
  }

  InitResult init = harness.run_init(InitPhase::BeforeParse, {args, nullptr});
  if (auto* exit = std::get_if<Exit>(&init)) {
    err << program << ": " << exit->message << "\n";
    return exit->code;
  }

  ParsedArgs parsed;
  try {
    parsed = harness.parse_args(args);
  } catch (const UsageError& e) {
    return usage_error(err, program, e.what());
  } catch (const BadRegex& e) {
    return usage_error(err, program, e.what());
  }
  for (const auto& d : parsed.diagnostics) {
    err << program << ": warning: " << d << "\n";
  }

  if (parsed.show_help) {
    out << harness.usage(program);
    return kSuccess;
  }
  if (parsed.show_version) {
    out << kHarnessName << " " << kHarnessVersion << "\n";
    for (const auto& s : harness.scopes()) {
      out << s.name << " " << s.version << "\n";
    }
    return kSuccess;
  }

  init = harness.run_init(InitPhase::AfterParse, {args, &parsed});
  if (auto* exit = std::get_if<Exit>(&init)) {
    err << program << ": " << exit->message << "\n";
    return exit->code;
  }
  harness.freeze();

  if (parsed.list_tests) {
    for (const auto& name : list_benchmarks(harness.benchmarks(), parsed.config)) {
      out << name << "\n";
    }
    return kSuccess;
  }

  std::unique_ptr<Clock> clock;
  if (parsed.fake_clock_per_iteration) {
    clock = std::make_unique<FakeClock>(*parsed.fake_clock_per_iteration);
  } else {
    clock = std::make_unique<SystemClock>();
  }
  RunContext context = describe_host(program);
  if (parsed.context_date) {
    context.date = *parsed.context_date;
  }
  context.scopes = harness.scopes();

  const ResultsDocument doc =
      run_filtered(harness.benchmarks(), parsed.config, *clock, std::move(context));
  const std::string text = serialize_document(doc);
  if (parsed.config.out_path) {
    try {
      write_file_atomic(*parsed.config.out_path, text);
    } catch (const Error& e) {
      err << program << ": " << e.what() << "\n";
      return kFailure;
    }
  } else {
    out << text;
  }
  return kSuccess;
}

}  // namespace scope::cli
