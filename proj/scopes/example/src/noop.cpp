#include "benchmarks.hpp"

namespace example_scope {

void register_noop(scope::ScopeRegistrar& registrar) {
  scope::BenchmarkDefinition def;
  def.base_name = "Example_Noop";
  def.body = [](scope::BenchState& state) {
    for (auto _ : state) {
      scope::clobber_memory();
    }
  };
  registrar.register_benchmark(std::move(def));
}

}  // namespace example_scope
