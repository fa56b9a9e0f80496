#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistcheck {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Letters do not chain: the target of one letter is not the source of the next.
class CompositionError : public Error {
 public:
  using Error::Error;
};

// A model, table or file that is structurally malformed.
class ModelError : public Error {
 public:
  using Error::Error;
};

// The requested engine or level is not available for the surface.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, SourcePosition pos)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
              ": " + what),
        pos_(pos) {}

  SourcePosition position() const { return pos_; }

 private:
  SourcePosition pos_;
};

// A twist name that does not resolve against the surface's curve table.
class BindError : public Error {
 public:
  BindError(const std::string& name, SourcePosition pos)
      : Error(std::to_string(pos.line) + ":" + std::to_string(pos.column) +
              ": unknown twist '" + name + "'"),
        name_(name),
        pos_(pos) {}

  const std::string& name() const { return name_; }
  SourcePosition position() const { return pos_; }

 private:
  std::string name_;
  SourcePosition pos_;
};

}  // namespace twistcheck
