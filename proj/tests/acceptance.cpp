// Acceptance runner: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "example_scope/example_scope.hpp"
#include "scope/cli.hpp"
#include "scope/error.hpp"
#include "scope/fileio.hpp"
#include "scope/plot.hpp"
#include "scope/plugin.hpp"
#include "scope/results.hpp"
#include "support/properties.hpp"
#include "support/svg_inspect.hpp"
#include "support/temp_dir.hpp"

namespace fs = std::filesystem;
using namespace scope;
using namespace testing_support;
using Stopwatch = std::chrono::steady_clock;

namespace {

const fs::path kFixtures = SCOPE_FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
};

double seconds_since(Stopwatch::time_point start) {
  return std::chrono::duration<double>(Stopwatch::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs", s);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

int shell(const std::string& command) {
  const int raw = std::system(command.c_str());
  if (raw == -1 || !WIFEXITED(raw)) return -1;
  return WEXITSTATUS(raw);
}

template <class Check>
std::string repeat(Check check, int cases, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    auto failure = check(rng);
    if (!failure.empty()) return "case " + std::to_string(i) + ": " + failure;
  }
  return {};
}

// ---------------------------------------------------------------------------

Outcome json_round_trip() {
  Outcome o;
  const auto start = Stopwatch::now();
  int n = 0;
  for (const auto& entry : fs::directory_iterator(kFixtures / "roundtrip")) {
    ++n;
    try {
      const auto doc = parse_document(read_file(entry.path()));
      o.expect(parse_document(serialize_document(doc)) == doc,
               entry.path().filename().string() + " changed");
    } catch (const Error& e) {
      o.fail(entry.path().filename().string() + ": " + e.what());
    }
  }
  const double t = seconds_since(start);
  o.expect(n >= 20, "only " + std::to_string(n) + " fixtures");
  o.expect(t < 1.0, "took " + fmt_seconds(t));
  if (o.pass) o.detail = std::to_string(n) + " fixtures in " + fmt_seconds(t);
  return o;
}

Outcome cat_filter_algebra() {
  Outcome o;
  const auto start = Stopwatch::now();
  const int cases = 1000;
  if (auto f = repeat(check_concat, cases, 101); !f.empty()) o.fail("concat " + f);
  if (auto f = repeat(check_filter, cases, 102); !f.empty()) o.fail("filter " + f);
  const double t = seconds_since(start);
  o.expect(t < 10.0, "took " + fmt_seconds(t));
  if (o.pass) o.detail = std::to_string(2 * cases) + " random cases in " + fmt_seconds(t);
  return o;
}

Outcome deterministic_runner() {
  Outcome o;
  Harness h;
  h.register_scope(example_scope::build_example_scope());
  h.freeze();

  FakeClock clock(std::chrono::milliseconds(1));
  RunConfig cfg;
  cfg.filter = Pattern("^Example_Copy/");
  cfg.min_time = Seconds(0.1);
  const auto doc = run_filtered(h.benchmarks(), cfg, clock, {});
  o.expect(doc.benchmarks.size() == 6, "expected 6 copy instances");
  for (const auto& r : doc.benchmarks) {
    o.expect(r.iterations >= 100, r.name + " ran " + std::to_string(r.iterations));
    o.expect(r.real_time == 1e6, r.name + " real_time " + std::to_string(r.real_time));
  }

  RunConfig reps;
  reps.filter = Pattern("^Example_Noop$");
  reps.min_time = Seconds(0.1);
  reps.repetitions = 3;
  const auto agg = run_filtered(h.benchmarks(), reps, clock, {});
  bool found = false;
  for (const auto& r : agg.benchmarks) {
    if (r.name == "Example_Noop_stddev") {
      found = true;
      o.expect(r.real_time == 0 && r.cpu_time == 0, "stddev not exactly 0");
    }
  }
  o.expect(found, "no stddev aggregate");
  if (o.pass) o.detail = "6 copy instances at exactly 1 ms/iter, stddev 0 over 3 repetitions";
  return o;
}

Outcome statistics_oracle() {
  Outcome o;
  if (auto f = repeat(check_statistics, 200, 104); !f.empty()) o.fail(f);
  if (o.pass) o.detail = "200 sample sets within 1e-12";
  return o;
}

Outcome regression_oracle() {
  Outcome o;
  if (auto f = repeat(check_regression, 100, 105); !f.empty()) o.fail(f);
  if (auto f = repeat(check_exact_line, 100, 106); !f.empty()) o.fail(f);
  if (o.pass) o.detail = "100 random sets within 1e-9, 100 exact lines within 1e-12";
  return o;
}

Outcome plot_pipeline() {
  Outcome o;
  struct Golden {
    std::string name;
    std::map<std::string, int> counts;
  };
  const std::vector<Golden> goldens = {
      {"errorbar",
       {{"polyline.series-line", 2}, {"line.errorbar", 7}, {"rect.bar", 0}, {"circle.point", 0},
        {"text.legend-label", 2}}},
      {"bar",
       {{"rect.bar", 8}, {"polyline.series-line", 0}, {"line.errorbar", 0},
        {"text.legend-label", 2}}},
  };
  const auto cwd = fs::current_path();
  for (const auto& g : goldens) {
    std::vector<std::string> renders;
    for (int run = 0; run < 2; ++run) {
      TempDir dir;
      fs::copy_file(kFixtures / "golden" / "results.json", dir / "results.json");
      fs::current_path(dir.path());
      try {
        plot::generate(plot::load_spec(read_file(kFixtures / "golden" / (g.name + ".yml"))));
        renders.push_back(read_file(dir / (g.name + ".svg")));
      } catch (const Error& e) {
        o.fail(g.name + ": " + e.what());
      }
      fs::current_path(cwd);
    }
    if (renders.size() != 2) continue;
    o.expect(renders[0] == renders[1], g.name + " differs between runs");
    o.expect(renders[0] == read_file(kFixtures / "golden" / (g.name + ".svg")),
             g.name + " differs from the golden file");
    try {
      auto counts = count_elements(renders[0]);
      for (const auto& [key, want] : g.counts) {
        o.expect(counts[key] == want, g.name + ": " + key + " = " + std::to_string(counts[key]) +
                                          ", expected " + std::to_string(want));
      }
    } catch (const std::exception& e) {
      o.fail(g.name + " is not well-formed XML: " + e.what());
    }
  }
  if (o.pass) o.detail = "2 golden figures byte-identical, well-formed, expected counts";
  return o;
}

// Minimal make rule reader: "targets: prerequisites" with backslash escapes
// and $$.
std::pair<std::vector<std::string>, std::vector<std::string>> parse_make_rule(
    const std::string& line) {
  std::vector<std::string> targets, prereqs;
  std::vector<std::string>* into = &targets;
  std::string word;
  auto flush = [&] {
    if (!word.empty()) into->push_back(word);
    word.clear();
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\\' && i + 1 < line.size()) {
      word += line[++i];
    } else if (c == '$' && i + 1 < line.size() && line[i + 1] == '$') {
      word += '$';
      ++i;
    } else if (c == ':' && into == &targets) {
      flush();
      into = &prereqs;
    } else if (c == ' ' || c == '\n') {
      flush();
    } else {
      word += c;
    }
  }
  flush();
  return {targets, prereqs};
}

Outcome deps_make() {
  Outcome o;
  const auto spec = plot::load_spec(R"(type: errorbar
series:
  - {label: pinned, input_file: pinned.json, xfield: bytes, yfield: real_time}
  - {label: pageable, input_file: pageable.json, xfield: bytes, yfield: real_time}
  - {label: pinned-cpu, input_file: pinned.json, xfield: bytes, yfield: cpu_time}
output:
  - {name: transfer.svg}
  - {name: transfer-copy.svg}
)");
  const std::string rule = plot::spec_dependencies(spec);
  const std::string expected = "transfer.svg transfer-copy.svg: pinned.json pageable.json\n";
  o.expect(rule == expected, "rule text was: " + rule);

  const std::vector<std::string> targets{"transfer.svg", "transfer-copy.svg"};
  const std::vector<std::string> prereqs{"pinned.json", "pageable.json"};
  auto [t, p] = parse_make_rule(rule);
  o.expect(t == targets && p == prereqs, "rule reader disagrees");

  const std::string make = SCOPE_MAKE_BIN;
  std::string how = "rule reader";
  if (!make.empty() && fs::exists(make)) {
    TempDir dir;
    // The recipe prints each target with its prerequisites as make sees them.
    dir.write("Makefile", rule + "\t@echo '$@|$^'\n%.json:\n\t@:\n");
    const auto out = dir / "make.out";
    const int status = shell("cd " + quote(dir.path().string()) + " && " + quote(make) +
                             " -s transfer.svg transfer-copy.svg > " + quote(out.string()) +
                             " 2>&1");
    const std::string got = read_file(out);
    o.expect(status == 0, "make failed: " + got);
    o.expect(got == "transfer.svg|pinned.json pageable.json\n"
                    "transfer-copy.svg|pinned.json pageable.json\n",
             "make reported: " + got);
    how = "rule reader and " + make;
  }
  if (o.pass) o.detail = "exact rule text; targets and prerequisites recovered by " + how;
  return o;
}

Outcome end_to_end() {
  Outcome o;
  TempDir dir;
  const auto start = Stopwatch::now();
  const std::string bench = SCOPE_BENCH_BIN, tool = SCOPE_PLOT_BIN;
  const auto raw = dir / "raw.json", filtered = dir / "copy.json", svg = dir / "copy.svg";

  int status = shell(quote(bench) + " --benchmark_min_time=0.01 --benchmark_out=" +
                     quote(raw.string()) + " > /dev/null");
  o.expect(status == 0, "scope exited with " + std::to_string(status));
  status = shell(quote(tool) + " filter_name " + quote(raw.string()) + " '^Example_Copy/' > " +
                 quote(filtered.string()));
  o.expect(status == 0, "filter_name exited with " + std::to_string(status));

  try {
    const auto doc = parse_document(read_file(filtered));
    o.expect(doc.benchmarks.size() == 6, "filtered document has " +
                                             std::to_string(doc.benchmarks.size()) + " records");
    for (const auto& r : doc.benchmarks) {
      o.expect(r.name.rfind("Example_Copy/", 0) == 0, "unexpected record " + r.name);
      o.expect(!r.error_occurred && r.iterations > 0 && r.counters.contains("bytes"),
               r.name + " incomplete");
    }
    o.expect(doc.context.scopes == std::vector<ScopeEntry>{{"example", "1.0.0"}},
             "context scopes");
  } catch (const Error& e) {
    o.fail(std::string("intermediate document invalid: ") + e.what());
  }

  const auto spec = dir.write("copy.yml", "type: bar\nyaxis: {scale: log}\nseries:\n"
                                          "  - input_file: " + filtered.string() +
                                          "\n    xfield: name_arg0\n    yfield: bytes\n"
                                          "output:\n  - name: " + svg.string() + "\n");
  status = shell(quote(tool) + " spec " + quote(spec.string()));
  o.expect(status == 0, "spec exited with " + std::to_string(status));
  o.expect(fs::exists(svg), "no SVG written");
  if (fs::exists(svg)) {
    try {
      o.expect(count_elements(read_file(svg))["rect.bar"] == 6, "expected 6 bars");
    } catch (const std::exception& e) {
      o.fail(std::string("SVG not well-formed: ") + e.what());
    }
  }
  const double t = seconds_since(start);
  o.expect(t < 5.0, "took " + fmt_seconds(t));
  if (o.pass) o.detail = "scope -> filter_name -> spec in " + fmt_seconds(t);
  return o;
}

struct Captured {
  int status;
  std::string out, err;
};

Captured in_process(std::vector<std::string> args, std::vector<ScopeDescriptor> scopes) {
  args.insert(args.begin(), "scope");
  std::ostringstream out, err;
  const int status = cli::bench_main(args, std::move(scopes), out, err);
  return {status, out.str(), err.str()};
}

ScopeDescriptor other_scope() {
  ScopeDescriptor d;
  d.name = "other";
  d.version = "0.3.1";
  d.register_fn = [](ScopeRegistrar& r) {
    BenchmarkDefinition def;
    def.base_name = "Other_Spin";
    def.args = {{1}, {2}};
    def.body = [](BenchState& st) {
      for (auto _ : st) {
      }
    };
    r.register_benchmark(def);
    r.register_option({"--other-level", OptionArity::OneValue, "level", [](std::string_view) {}});
  };
  return d;
}

std::set<std::string> lines_of(const std::string& text) {
  std::set<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.insert(line);
  return out;
}

std::set<std::string> minus(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out;
  for (const auto& x : a) {
    if (!b.count(x)) out.insert(x);
  }
  return out;
}

Outcome scope_isolation() {
  Outcome o;
  auto scopes = [] {
    return std::vector<ScopeDescriptor>{example_scope::build_example_scope(), other_scope()};
  };
  const std::vector<std::string> off{"--disable-scope=example"};
  auto with = [&](std::vector<std::string> args, bool disabled) {
    if (disabled) args.insert(args.begin(), off.begin(), off.end());
    return in_process(args, scopes());
  };

  // Benchmarks.
  const auto list_on = lines_of(with({"--benchmark_list_tests"}, false).out);
  const auto list_off = lines_of(with({"--benchmark_list_tests"}, true).out);
  const std::set<std::string> example_benchmarks{
      "Example_Copy/1024",   "Example_Copy/4096",    "Example_Copy/16384", "Example_Copy/65536",
      "Example_Copy/262144", "Example_Copy/1048576", "Example_Noop"};
  o.expect(minus(list_on, list_off) == example_benchmarks, "removed benchmarks differ");
  o.expect(minus(list_off, list_on).empty(), "disabling added benchmarks");
  o.expect(list_off == std::set<std::string>{"Other_Spin/1", "Other_Spin/2"},
           "other scope affected");

  // Flags.
  std::set<std::string> flags_on, flags_off;
  for (const auto& l : lines_of(with({"--help"}, false).out)) {
    if (l.rfind("  --", 0) == 0) flags_on.insert(l);
  }
  for (const auto& l : lines_of(with({"--help"}, true).out)) {
    if (l.rfind("  --", 0) == 0) flags_off.insert(l);
  }
  o.expect(minus(flags_on, flags_off) ==
               std::set<std::string>{"  --example-exit <value>", "  --example-fail <value>"},
           "removed flags differ");
  o.expect(minus(flags_off, flags_on).empty(), "disabling added flags");
  const auto rejected = with({"--example-exit", "now"}, true);
  o.expect(rejected.status == 2 &&
               rejected.err.find("unknown flag '--example-exit'") != std::string::npos,
           "disabled scope flag was not rejected as unknown");
  Harness h;
  auto example = example_scope::build_example_scope();
  example.enabled = false;
  h.register_scope(example);
  h.register_scope(other_scope());
  try {
    const std::vector<std::string> argv{"--example-fail=1"};
    h.parse_args(argv);
    o.fail("parse_args accepted a disabled scope flag");
  } catch (const UnknownFlag& e) {
    o.expect(e.flag() == "--example-fail", "wrong flag in UnknownFlag");
  }

  // Context.
  const std::vector<std::string> run{"--benchmark_fake_clock=1000",
                                     "--benchmark_context_date=2026-01-01T00:00:00+00:00",
                                     "--benchmark_min_time=0.001"};
  try {
    auto doc_on = parse_document(with(run, false).out);
    auto doc_off = parse_document(with(run, true).out);
    o.expect(doc_on.context.scopes ==
                 std::vector<ScopeEntry>{{"example", "1.0.0"}, {"other", "0.3.1"}},
             "enabled context scopes");
    o.expect(doc_off.context.scopes == std::vector<ScopeEntry>{{"other", "0.3.1"}},
             "disabled context scopes");
    doc_on.context.scopes.clear();
    doc_off.context.scopes.clear();
    o.expect(doc_on.context == doc_off.context, "other context fields changed");
    std::vector<BenchmarkRecord> kept;
    for (const auto& r : doc_on.benchmarks) {
      if (r.name.rfind("Example_", 0) != 0) kept.push_back(r);
    }
    o.expect(kept == doc_off.benchmarks, "remaining records changed");
  } catch (const Error& e) {
    o.fail(e.what());
  }
  if (o.pass) o.detail = "7 benchmarks, 2 flags and 1 context entry removed; nothing else";
  return o;
}

Outcome exit_behavior() {
  Outcome o;
  TempDir dir;
  const auto out = dir / "r.json";
  const int status = shell(quote(SCOPE_BENCH_BIN) + std::string(" --example-exit now") +
                           " --benchmark_out=" + quote(out.string()) + " > /dev/null 2>&1");
  o.expect(status == 1, "process status " + std::to_string(status));
  o.expect(!fs::exists(out), "output file written");

  bool ran = false;
  ScopeDescriptor spy;
  spy.name = "spy";
  spy.register_fn = [&ran](ScopeRegistrar& r) {
    BenchmarkDefinition def;
    def.base_name = "Spy";
    def.body = [&ran](BenchState& st) {
      ran = true;
      for (auto _ : st) {
      }
    };
    r.register_benchmark(def);
  };
  const auto c = in_process({"--example-exit", "now", "--benchmark_fake_clock=1000"},
                            {example_scope::build_example_scope(), spy});
  o.expect(c.status == 1, "in-process status " + std::to_string(c.status));
  o.expect(!ran, "a benchmark ran before the exit");
  o.expect(c.out.empty(), "results were printed");
  if (o.pass) o.detail = "status 1, no output file, no benchmark executed";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"JSON round-trip", json_round_trip},
      {"cat/filter algebra", cat_filter_algebra},
      {"deterministic runner", deterministic_runner},
      {"statistics oracle", statistics_oracle},
      {"regression oracle", regression_oracle},
      {"plot pipeline", plot_pipeline},
      {"deps/make integration", deps_make},
      {"end-to-end", end_to_end},
      {"scope isolation", scope_isolation},
      {"example scope exit", exit_behavior},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("uncaught: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first
              << " - " << o.detail << std::endl;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failures) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
