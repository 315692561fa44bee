#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>

#include "hpsg/errors.hpp"
#include "hpsg/feature_structure.hpp"

namespace hpsg::detail {

enum class Tok {
  End,
  LBracket,
  RBracket,
  LAngle,
  RAngle,
  Comma,
  Pipe,
  Equals,
  Semi,
  Ident,
  String,
  Tag,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;  // identifier, string content, or tag name
  std::size_t line = 1;
  std::size_t col = 1;
};

// Tokenizer shared by the AVM reader and the lexicon loader. `#` immediately
// followed by an alphanumeric is a tag; any other `#` starts a comment that
// runs to the end of the line.
class Scanner {
public:
  explicit Scanner(std::string_view text) : text_(text) { advance(); }

  auto peek() const -> const Token& { return cur_; }

  auto next() -> Token {
    Token t = cur_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, cur_.line, cur_.col);
  }

  auto expect(Tok kind, const char* what) -> Token {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    return next();
  }

private:
  void advance();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token cur_;
};

// ALL-CAPS identifiers are arc labels; anything else names a type.
auto is_label_ident(std::string_view text) -> bool;

// Recursive-descent builder for one AVM value inside a GraphBuilder. Tags are
// scoped by the map the caller passes in (one map per entry/literal).
class AvmParser {
public:
  AvmParser(GraphBuilder& gb, Scanner& sc, std::unordered_map<std::string, NodeIdx>& tags)
      : gb_(gb), sc_(sc), tags_(tags) {}

  auto parse_value() -> NodeIdx;

private:
  auto parse_avm_body() -> NodeIdx;  // after '['
  auto parse_list() -> NodeIdx;      // after '<'
  auto tag_node(const std::string& name) -> NodeIdx;

  GraphBuilder& gb_;
  Scanner& sc_;
  std::unordered_map<std::string, NodeIdx>& tags_;
};

}  // namespace hpsg::detail
