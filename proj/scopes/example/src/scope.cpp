#include "example_scope/example_scope.hpp"

#include "benchmarks.hpp"

namespace example_scope {

scope::ScopeDescriptor build_example_scope() {
  return {kName, kVersion, true, [](scope::ScopeRegistrar& registrar) {
            register_copy(registrar);
            register_noop(registrar);
            register_init(registrar);
          }};
}

}  // namespace example_scope
