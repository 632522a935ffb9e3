#pragma once

#include "scope/plugin.hpp"

namespace example_scope {

void register_copy(scope::ScopeRegistrar& registrar);
void register_noop(scope::ScopeRegistrar& registrar);
void register_init(scope::ScopeRegistrar& registrar);

}  // namespace example_scope
