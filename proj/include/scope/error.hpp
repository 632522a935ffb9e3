#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scope {

// Root of every error raised by the library. Each subclass corresponds to one
// named failure of an operation; callers that only need a message catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- results documents ----------------------------------------------------

class MalformedJson : public Error {
 public:
  MalformedJson(std::size_t byte_offset, const std::string& detail)
      : Error("malformed JSON at byte " + std::to_string(byte_offset) + ": " + detail),
        byte_offset_(byte_offset) {}
  // Zero-based offset of the offending byte.
  std::size_t byte_offset() const noexcept { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error("schema error: " + what) {}
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("no input documents") {}
};

class BadRegex : public Error {
 public:
  BadRegex(std::string pattern, std::ptrdiff_t position, const std::string& reason)
      : Error("bad regex '" + pattern + "' at position " + std::to_string(position) + ": " +
              reason),
        pattern_(std::move(pattern)),
        position_(position),
        reason_(reason) {}
  const std::string& pattern() const noexcept { return pattern_; }
  std::ptrdiff_t position() const noexcept { return position_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string pattern_;
  std::ptrdiff_t position_;
  std::string reason_;
};

// ---- harness registration and running -------------------------------------

class InvalidDefinition : public Error {
 public:
  explicit InvalidDefinition(const std::string& what) : Error("invalid benchmark definition: " + what) {}
};

class DuplicateName : public Error {
 public:
  explicit DuplicateName(const std::string& name)
      : Error("benchmark '" + name + "' is already registered"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class LateRegistration : public Error {
 public:
  explicit LateRegistration(const std::string& what)
      : Error("registration after startup: " + what) {}
};

class TooFewRepetitions : public Error {
 public:
  explicit TooFewRepetitions(std::size_t n)
      : Error("statistics need at least 2 repetitions, got " + std::to_string(n)) {}
};

class DuplicateScope : public Error {
 public:
  explicit DuplicateScope(const std::string& name)
      : Error("scope '" + name + "' is already registered") {}
};

class DuplicateFlag : public Error {
 public:
  explicit DuplicateFlag(const std::string& flag)
      : Error("command-line flag '" + flag + "' is already registered"), flag_(flag) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

class InvalidOption : public Error {
 public:
  explicit InvalidOption(const std::string& what) : Error("invalid option: " + what) {}
};

// ---- argument parsing -----------------------------------------------------

class UsageError : public Error {
 public:
  using Error::Error;
};

class UnknownFlag : public UsageError {
 public:
  explicit UnknownFlag(const std::string& flag)
      : UsageError("unknown flag '" + flag + "'"), flag_(flag) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

class MissingValue : public UsageError {
 public:
  explicit MissingValue(const std::string& flag)
      : UsageError("flag '" + flag + "' requires a value"), flag_(flag) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

class BadValue : public UsageError {
 public:
  BadValue(const std::string& flag, const std::string& value, const std::string& why)
      : UsageError("bad value '" + value + "' for flag '" + flag + "': " + why), flag_(flag) {}
  const std::string& flag() const noexcept { return flag_; }

 private:
  std::string flag_;
};

// ---- plotting -------------------------------------------------------------

class SpecSyntax : public Error {
 public:
  explicit SpecSyntax(const std::string& what) : Error("spec syntax error: " + what) {}
};

class SpecSchema : public Error {
 public:
  explicit SpecSchema(const std::string& what) : Error("spec schema error: " + what) {}
};

class MissingField : public Error {
 public:
  explicit MissingField(const std::string& field)
      : Error("no matching record carries field '" + field + "'"), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class DegenerateRegression : public Error {
 public:
  DegenerateRegression() : Error("linear regression needs at least two distinct x values") {}
};

class EmptyPlot : public Error {
 public:
  EmptyPlot() : Error("every series is empty; nothing to plot") {}
};

class LogAxisDomain : public Error {
 public:
  LogAxisDomain(const std::string& axis, double value)
      : Error("log10 " + axis + " axis received non-positive value " + std::to_string(value)) {}
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace scope
