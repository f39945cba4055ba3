#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcn {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters or configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// No assignment satisfies the delay, capacity and uniqueness constraints.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class InfeasibleAvatar : public InfeasibleError {
 public:
  explicit InfeasibleAvatar(std::size_t avatar)
      : InfeasibleError("avatar " + std::to_string(avatar) +
                        " has no cloudlet within the SLA delay bound"),
        avatar_(avatar) {}

  std::size_t avatar() const noexcept { return avatar_; }

 private:
  std::size_t avatar_;
};

class InsufficientCapacity : public InfeasibleError {
 public:
  using InfeasibleError::InfeasibleError;
};

/// Brute-force enumeration refused because the search space is too big.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A trace file did not contain exactly one row per hour.
class CountError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcn
