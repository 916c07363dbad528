#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fsmgrade {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An automaton value could not be constructed from the given parts.
class InvalidAutomaton : public Error {
 public:
  using Error::Error;
};

/// Two machines passed to a binary construction use different alphabets.
class AlphabetMismatch : public Error {
 public:
  AlphabetMismatch() : Error("automata are defined over different alphabets") {}
};

/// A word (or state name) refers to something the machine does not have.
class UnknownSymbol : public Error {
 public:
  explicit UnknownSymbol(const std::string& symbol)
      : Error("symbol '" + symbol + "' is not in the alphabet"), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

class UnknownState : public Error {
 public:
  explicit UnknownState(const std::string& name)
      : Error("unknown state '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Regular expression syntax error. `position()` counts characters (code
/// points) from the start of the pattern.
class RegexSyntaxError : public Error {
 public:
  RegexSyntaxError(const std::string& message, std::size_t position)
      : Error("regex error at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fsmgrade
