#pragma once

#include <stdexcept>
#include <string>

namespace abcover {

/// Input that does not describe a well-formed object (wrong lengths,
/// coordinates out of range, bad JSON shape).
class MalformedInput : public std::invalid_argument {
 public:
  explicit MalformedInput(const std::string& what, std::string pointer = {})
      : std::invalid_argument(what), pointer_(std::move(pointer)) {}

  /// JSON pointer to the offending node, empty when not applicable.
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

/// The operation is defined but not for this kind of configuration.
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A configured size bound would be exceeded.
class ResourceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Building data violates a cover-model constraint.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A gallery builder received parameters outside its documented range.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace abcover
