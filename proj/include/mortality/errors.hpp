#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mortality {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: letter or state index out of range, invalid family
// parameters and the like.
class UsageError : public Error {
 public:
  using Error::Error;
};

class CapacityError : public Error {
 public:
  using Error::Error;
};

// Malformed automaton or matrix text. line() is 1-based, 0 when the error is
// not tied to a particular line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string const& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NotDeterministic : public Error {
 public:
  NotDeterministic(std::size_t letter, std::size_t state,
                   std::string const& letter_name)
      : Error("not deterministic: letter " + letter_name + " maps state "
              + std::to_string(state) + " to more than one state"),
        letter_(letter),
        state_(state) {}

  std::size_t letter() const noexcept { return letter_; }
  std::size_t state() const noexcept { return state_; }

 private:
  std::size_t letter_;
  std::size_t state_;
};

class IncompleteDfa : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(double size, double budget)
      : Error("enumeration size " + std::to_string(size)
              + " exceeds budget " + std::to_string(budget)),
        size_(size) {}

  // Number of automata the enumeration would visit.
  double size() const noexcept { return size_; }

 private:
  double size_;
};

// A generator or strategy produced a state it should never reach; always a
// bug in this library, never a user error.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mortality
