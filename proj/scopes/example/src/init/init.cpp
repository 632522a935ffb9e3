#include <memory>
#include <optional>
#include <string>

#include "../benchmarks.hpp"

namespace example_scope {

namespace {

struct ExitRequests {
  std::optional<std::string> fail;
  std::optional<std::string> exit;
};

}  // namespace

void register_init(scope::ScopeRegistrar& registrar) {
  auto requests = std::make_shared<ExitRequests>();

  registrar.register_option({"--example-fail", scope::OptionArity::OneValue,
                             "make the example scope fail during initialization",
                             [requests](std::string_view v) { requests->fail = std::string(v); }});
  registrar.register_option({"--example-exit", scope::OptionArity::OneValue,
                             "make the example scope exit during initialization",
                             [requests](std::string_view v) { requests->exit = std::string(v); }});

  registrar.register_init({scope::InitPhase::AfterParse, 0,
                           [requests](const scope::InitContext&) -> scope::InitResult {
                             if (requests->fail) {
                               return scope::Exit{1, "example scope: --example-fail " +
                                                         *requests->fail +
                                                         " requested a failure"};
                             }
                             if (requests->exit) {
                               return scope::Exit{1, "example scope: --example-exit " +
                                                         *requests->exit +
                                                         " requested an exit"};
                             }
                             return scope::Continue{};
                           }});
}

}  // namespace example_scope
