#include "scope/regex.hpp"

#include <boost/regex.hpp>

#include "scope/error.hpp"

namespace scope {

struct Pattern::Impl {
  boost::regex re;
};

Pattern::Pattern(std::string source) : source_(std::move(source)) {
  try {
    impl_ = std::make_shared<const Impl>(Impl{boost::regex(source_, boost::regex::perl)});
  } catch (const boost::regex_error& e) {
    throw BadRegex(source_, e.position(), e.what());
  }
}

bool Pattern::search(std::string_view text) const {
  return boost::regex_search(text.begin(), text.end(), impl_->re);
}

}  // namespace scope
