#include "explab/parser.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "explab/error.hpp"

namespace explab {
namespace {

class Parser {
 public:
  Parser(std::string_view text, int n, std::size_t line, std::size_t column)
      : text_(text), n_(n), line_(line), column0_(column) {}

  WeylElt parse() {
    WeylElt e = expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }

  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    std::size_t line = line_;
    std::size_t col = column0_;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) {
        ++col;
      }
    }
    throw ParseError(what, line, col);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() const {
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::string digits() {
    std::string s;
    while (at_digit()) s.push_back(text_[pos_++]);
    return s;
  }

  WeylElt expr() {
    WeylElt acc(n_);
    skip_ws();
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    WeylElt first = term();
    acc += negate ? -first : first;
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  WeylElt term() {
    WeylElt acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  WeylElt factor() {
    WeylElt base = atom();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      const std::string e = digits();
      if (e.empty()) fail("expected exponent");
      if (e.size() > 4) fail_at("exponent too large", start);
      return power(base, std::stoi(e));
    }
    return base;
  }

  WeylElt atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      WeylElt inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return WeylElt::constant(n_, rational());
    if (c == 'x' || c == 'd' || c == 't') return variable();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Rational rational() {
    const std::size_t start = pos_;
    std::string s = digits();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      const std::string den = digits();
      if (den.empty()) fail("expected denominator");
      if (den.find_first_not_of('0') == std::string::npos) fail_at("zero denominator", start);
      s += "/" + den;
    }
    Rational q(s, 10);
    q.canonicalize();
    return q;
  }

  WeylElt variable() {
    const std::size_t start = pos_;
    const char c = text_[pos_++];
    const std::string idx = digits();
    int i = 0;
    if (idx.empty()) {
      if (n_ != 1) fail_at(std::string("unknown variable '") + c + "'", start);
    } else {
      if (c == 't' || idx.size() > 6) fail_at("unknown variable '" + std::string(1, c) + idx + "'", start);
      i = std::stoi(idx);
      if (i < 1 || i > n_) fail_at("unknown variable '" + std::string(1, c) + idx + "'", start);
      --i;
    }
    return c == 'd' ? WeylElt::d(n_, i) : WeylElt::x(n_, i);
  }

  std::string_view text_;
  int n_;
  std::size_t line_;
  std::size_t column0_;
  std::size_t pos_ = 0;
};

}  // namespace

WeylElt parse_weyl(std::string_view text, int n) {
  if (n < 1) throw Error("variable count must be positive");
  return Parser(text, n, 1, 1).parse();
}

std::vector<WeylElt> parse_weyl_list(std::string_view text, int n) {
  if (n < 1) throw Error("variable count must be positive");
  std::vector<WeylElt> out;
  std::size_t start = 0, line = 1, col = 1;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view piece = text.substr(start, end - start);
    if (piece.find_first_not_of(" \t\r\n") != std::string_view::npos) {
      out.push_back(Parser(piece, n, line, col).parse());
    }
    for (char ch : text.substr(start, end - start + (end < text.size() ? 1 : 0))) {
      if (ch == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) {
        ++col;
      }
    }
    start = end + 1;
  }
  return out;
}

}  // namespace explab
