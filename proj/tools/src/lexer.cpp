#include "deltak/cli/lexer.hpp"

#include <cctype>

namespace deltak::cli {

std::vector<Token> tokenize(std::string_view text, std::size_t line, std::size_t first_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t col = first_column + i;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && (text[j] == '.' || std::isalpha(static_cast<unsigned char>(text[j])))) {
        throw ParseError("malformed number (use '*' between factors and exact fractions)", line, first_column + j);
      }
      out.push_back({Tok::number, std::string(text.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(text.substr(i, j - i)), line, col});
      i = j;
      continue;
    }
    static constexpr std::string_view symbols = "+-*/^(),;=:[].";
    if (symbols.find(c) == std::string_view::npos) {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back({Tok::symbol, std::string(1, c), line, col});
    ++i;
  }
  out.push_back({Tok::end, "", line, first_column + text.size()});
  return out;
}

}  // namespace deltak::cli
