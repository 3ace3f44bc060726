#include "rpsym/parse.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "rpsym/error.hpp"

namespace rpsym {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Coordinates& coords) : text_(text), coords_(coords) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr value = term();
    while (true) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  Expr term() {
    Expr value = factor();
    while (true) {
      if (accept('*')) {
        value *= factor();
      } else if (accept('/')) {
        const std::size_t at = pos_ - 1;
        const Expr divisor = factor();
        if (divisor.is_zero()) throw ParseError("division by zero", at);
        value /= divisor;
      } else {
        return value;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return -factor();
    Expr b = base();
    if (accept('^')) {
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      const std::string digits(text_.substr(start, pos_ - start));
      const BigInt e(digits, 10);
      if (e > std::numeric_limits<Exponent>::max()) throw ParseError("exponent too large", start);
      try {
        b = b.pow(static_cast<long>(e.get_ui()));
      } catch (const DomainError& err) {
        throw ParseError(err.what(), start);
      }
    }
    return b;
  }

  Expr base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Expr(Rational(BigInt(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (!coordinate_index(coords_, name)) {
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      }
      return Expr::variable(coords_, name);
    }
    if (accept('(')) {
      Expr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const Coordinates& coords_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const Coordinates& coords) {
  return Parser(text, coords).parse();
}

}  // namespace rpsym
