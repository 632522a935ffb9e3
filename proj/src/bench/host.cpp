#include <cmath>
#include <ctime>
#include <fstream>
#include <string>
#include <thread>

#include "scope/bench.hpp"

namespace scope {

namespace {

std::string local_date() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  localtime_r(&now, &tm);
  char buf[64];
  std::size_t n = std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S%z", &tm);
  std::string s(buf, n);
  // %z gives +hhmm; ISO 8601 wants +hh:mm.
  if (s.size() >= 5) {
    s.insert(s.size() - 2, ":");
  }
  return s;
}

std::int64_t cpu_mhz() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("cpu MHz", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) {
        try {
          return std::llround(std::stod(line.substr(colon + 1)));
        } catch (const std::exception&) {
          return 0;
        }
      }
    }
  }
  return 0;
}

bool cpu_scaling_enabled() {
  std::ifstream in("/sys/devices/system/cpu/cpu0/cpufreq/scaling_governor");
  std::string governor;
  return in >> governor && governor != "performance";
}

}  // namespace

RunContext describe_host(std::string executable) {
  RunContext ctx;
  ctx.date = local_date();
  ctx.executable = std::move(executable);
  ctx.num_cpus = static_cast<std::int64_t>(std::thread::hardware_concurrency());
  ctx.mhz_per_cpu = cpu_mhz();
  ctx.cpu_scaling_enabled = cpu_scaling_enabled();
  ctx.scope_version = std::string(kHarnessVersion);
  return ctx;
}

}  // namespace scope
