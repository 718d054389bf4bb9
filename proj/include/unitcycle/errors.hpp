#pragma once

#include <stdexcept>
#include <string>

namespace unitcycle {

/// Caller passed a value outside an operation's domain.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A search or enumeration would exceed its configured resource ceiling.
class search_too_large : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An interpolated coefficient (or point) is not an element of Z[1/S].
class not_in_ring : public std::domain_error {
 public:
  not_in_ring(std::string what, std::string value, std::string bad_prime)
      : std::domain_error(std::move(what)), value_(std::move(value)), bad_prime_(std::move(bad_prime)) {}

  const std::string& value() const noexcept { return value_; }
  const std::string& bad_prime() const noexcept { return bad_prime_; }

 private:
  std::string value_;
  std::string bad_prime_;
};

}  // namespace unitcycle
