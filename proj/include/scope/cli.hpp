#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "scope/plugin.hpp"

namespace scope::cli {

// Exit statuses shared by both entry points.
inline constexpr int kSuccess = 0;
inline constexpr int kFailure = 1;
inline constexpr int kUsage = 2;

// The benchmark binary. `argv` includes the program name. Scopes are
// registered in the given order after --disable-scope has been applied.
int bench_main(std::span<const std::string> argv, std::vector<ScopeDescriptor> scopes,
               std::ostream& out, std::ostream& err);

// The results tool: spec, deps, bar, cat, filter_name.
int results_main(std::span<const std::string> argv, std::ostream& out, std::ostream& err);

}  // namespace scope::cli
