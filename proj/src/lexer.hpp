#ifndef COCALC_SRC_LEXER_HPP
#define COCALC_SRC_LEXER_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "cocalc/error.hpp"

namespace cocalc::detail {

// Shared tokenizer for the signature and equation DSLs. Identifiers are
// [A-Za-z0-9_]+ (atoms like "0" are identifiers). `#` comments run to end
// of line. Multi-char symbols: "->" and ":=".
struct Token {
  enum class Kind { Ident, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token next() {
    Token t = current_;
    advance();
    return t;
  }

  bool at_symbol(std::string_view s) const {
    return current_.kind == Token::Kind::Symbol && current_.text == s;
  }

  bool eat_symbol(std::string_view s) {
    if (!at_symbol(s)) return false;
    advance();
    return true;
  }

  void expect_symbol(std::string_view s) {
    if (!eat_symbol(s)) fail("expected '" + std::string(s) + "'");
  }

  std::string expect_ident(const std::string& what) {
    if (current_.kind != Token::Kind::Ident) fail("expected " + what);
    std::string name = current_.text;
    advance();
    return name;
  }

  bool at_ident() const { return current_.kind == Token::Kind::Ident; }
  bool at_end() const { return current_.kind == Token::Kind::End; }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string got = current_.kind == Token::Kind::End
                          ? "end of input"
                          : "'" + current_.text + "'";
    throw ParseError(msg + ", got " + got, current_.line, current_.column);
  }

 private:
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  void advance() {
    skip_ws();
    current_.line = line_;
    current_.column = col_;
    if (pos_ >= text_.size()) {
      current_ = {Token::Kind::End, "", line_, col_};
      return;
    }
    char c = text_[pos_];
    if (ident_char(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) step();
      current_ = {Token::Kind::Ident, std::string(text_.substr(start, pos_ - start)),
                  current_.line, current_.column};
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      step();
      step();
      current_ = {Token::Kind::Symbol, "->", current_.line, current_.column};
      return;
    }
    if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') {
      step();
      step();
      current_ = {Token::Kind::Symbol, ":=", current_.line, current_.column};
      return;
    }
    step();
    current_ = {Token::Kind::Symbol, std::string(1, c), current_.line,
                current_.column};
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        break;
      }
    }
  }

  void step() {
    if (text_[pos_] == '\n') {
      line_++;
      col_ = 1;
    } else {
      col_++;
    }
    pos_++;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

}  // namespace cocalc::detail

#endif
