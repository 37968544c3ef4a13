#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stackspt {

// Malformed input text. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input violating a model invariant. field() names the offending field.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A vertex with positive demand has no path from the root, so the revenue is undefined.
class UnreachableDemandError : public std::runtime_error {
 public:
  explicit UnreachableDemandError(std::size_t vertex)
      : std::runtime_error("vertex " + std::to_string(vertex) + " has positive demand but is unreachable from the root"),
        vertex_(vertex) {}

  [[nodiscard]] std::size_t vertex() const noexcept { return vertex_; }

 private:
  std::size_t vertex_;
};

}  // namespace stackspt
