#pragma once

#include <stdexcept>
#include <string>

namespace logpar {

// Malformed or inconsistent input; the CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DenominatorOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotSharp : public InputError {
 public:
  using InputError::InputError;
};

class RankMismatch : public InputError {
 public:
  using InputError::InputError;
};

class NotRational : public InputError {
 public:
  using InputError::InputError;
};

// A bounded search ran out of room before reaching a verdict.
class Incomplete : public std::runtime_error {
 public:
  Incomplete(std::string bound, std::string flag, const std::string& what)
      : std::runtime_error(what), bound_(std::move(bound)), flag_(std::move(flag)) {}
  const std::string& bound() const { return bound_; }
  const std::string& flag() const { return flag_; }

 private:
  std::string bound_;
  std::string flag_;
};

class WindowExceeded : public Incomplete {
 public:
  using Incomplete::Incomplete;
};

// Two independent computations of the same invariant disagree.
class MethodDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class WitnessFailed : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace logpar
