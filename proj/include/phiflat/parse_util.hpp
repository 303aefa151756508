#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "phiflat/error.hpp"
#include "phiflat/poly.hpp"

namespace phiflat {

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

/// Byte cursor over DSL text.  Errors carry the absolute byte offset plus
/// line/column.
class Cursor {
public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  void set_pos(std::size_t p) { pos_ = p; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void advance() { ++pos_; }
  std::string_view text() const { return text_; }

  void skip_ws() {
    while (!at_end()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#' || (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/')) {
        while (!at_end() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string take_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string take_ident() {
    std::size_t start = pos_;
    if (!at_end() && is_ident_start(text_[pos_])) {
      ++pos_;
      while (!at_end() && is_ident_char(text_[pos_])) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) {
      std::string got = at_end() ? std::string("end of input") : std::string("'") + peek() + "'";
      throw error_at(pos_, std::string("expected '") + c + "', got " + got);
    }
    ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Error error_at(std::size_t at, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return Error(ErrorCode::ParseError, "parse error at offset " + std::to_string(at) + " (line " +
                                            std::to_string(line) + ", column " +
                                            std::to_string(col) + "): " + msg);
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

/// Parses one polynomial expression starting at the cursor, stopping at the
/// first character that cannot continue it.
Poly parse_poly_at(const RingPtr& ring, Cursor& cur);

}  // namespace phiflat
