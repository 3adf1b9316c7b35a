#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "deltak/errors.hpp"

namespace deltak::cli {

enum class Tok { number, ident, symbol, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Splits one line of input into numbers, identifiers and single-character
/// symbols. Columns are 1-based and offset by `first_column`.
std::vector<Token> tokenize(std::string_view text, std::size_t line = 1, std::size_t first_column = 1);

/// Sequential access with position-annotated errors.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_end() const { return peek().kind == Tok::end; }
  bool is_symbol(char c) const { return peek().kind == Tok::symbol && peek().text[0] == c; }
  bool accept(char c) {
    if (!is_symbol(c)) return false;
    next();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& message) const { fail_at(peek(), message); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& message) {
    throw ParseError(message + (t.kind == Tok::end ? " at end of input" : " near '" + t.text + "'"), t.line, t.column);
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace deltak::cli
