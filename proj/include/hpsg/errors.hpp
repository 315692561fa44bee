#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hpsg {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class HierarchyError : public Error {
public:
  using Error::Error;
};

// Raised by the AVM / lexicon readers; what() includes "line:col".
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  [[nodiscard]] auto line() const -> std::size_t { return line_; }
  [[nodiscard]] auto column() const -> std::size_t { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

class LexiconError : public Error {
public:
  explicit LexiconError(const std::string& message, std::string entry_form = {})
      : Error(entry_form.empty() ? message : "entry \"" + entry_form + "\": " + message),
        entry_(std::move(entry_form)) {}

  [[nodiscard]] auto entry() const -> const std::string& { return entry_; }

private:
  std::string entry_;
};

class UnknownWordError : public Error {
public:
  UnknownWordError(std::string word, std::size_t position)
      : Error("unknown word \"" + word + "\" at position " + std::to_string(position)),
        word_(std::move(word)),
        position_(position) {}

  [[nodiscard]] auto word() const -> const std::string& { return word_; }
  [[nodiscard]] auto position() const -> std::size_t { return position_; }

private:
  std::string word_;
  std::size_t position_;
};

class UlfError : public Error {
public:
  using Error::Error;
};

}  // namespace hpsg
