#pragma once

#include "scope/plugin.hpp"

namespace example_scope {

inline constexpr const char* kName = "example";
inline constexpr const char* kVersion = "1.0.0";

// A template scope: a memory-copy benchmark, a no-op benchmark, and two flags
// (--example-fail, --example-exit) that make the binary exit with status 1
// during initialization.
scope::ScopeDescriptor build_example_scope();

}  // namespace example_scope
