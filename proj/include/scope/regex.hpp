#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace scope {

// A compiled Perl-syntax regular expression used for unanchored name matching.
// Construction throws BadRegex with the failing position. Copies share the
// compiled program, which is immutable and safe to read from several threads.
class Pattern {
 public:
  explicit Pattern(std::string source = ".*");

  // True when some substring of `text` matches.
  bool search(std::string_view text) const;

  const std::string& source() const noexcept { return source_; }

 private:
  struct Impl;
  std::string source_;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace scope
