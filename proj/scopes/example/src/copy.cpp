#include <cstring>
#include <vector>

#include "benchmarks.hpp"

namespace example_scope {

namespace {

void copy_bytes(scope::BenchState& state) {
  const auto bytes = static_cast<std::size_t>(state.arg(0));
  std::vector<char> src(bytes, 'x');
  std::vector<char> dst(bytes);
  for (auto _ : state) {
    std::memcpy(dst.data(), src.data(), bytes);
    scope::do_not_optimize(dst.data());
    scope::clobber_memory();
  }
  state.set_counter("bytes", static_cast<double>(state.iterations()) * static_cast<double>(bytes),
                    scope::CounterKind::Rate);
}

}  // namespace

void register_copy(scope::ScopeRegistrar& registrar) {
  scope::BenchmarkDefinition def;
  def.base_name = "Example_Copy";
  for (std::int64_t bytes = 1 << 10; bytes <= (1 << 20); bytes *= 4) {
    def.args.push_back({bytes});
  }
  def.body = copy_bytes;
  registrar.register_benchmark(std::move(def));
}

}  // namespace example_scope
