#include <cctype>

#include "plaut/errors.hpp"
#include "plaut/mpoly.hpp"

namespace plaut {

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const VarList& vars, const Field& field)
      : text_(text), vars_(vars), field_(field) {}

  MPoly parse() {
    MPoly result = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
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

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  MPoly expr() {
    MPoly result(field_, vars_);
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    MPoly t = term();
    result = negate ? -t : t;
    for (;;) {
      if (accept('+')) {
        result += term();
      } else if (accept('-')) {
        result -= term();
      } else {
        return result;
      }
    }
  }

  MPoly term() {
    MPoly result = factor();
    while (accept('*')) result *= factor();
    if (peek() == '/') fail("division is only allowed between integer literals");
    return result;
  }

  MPoly factor() {
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    return power();
  }

  MPoly power() {
    MPoly base = primary();
    if (accept('^')) {
      skip_space();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("exponent must be a non-negative integer literal");
      }
      const mpz_class e = integer_literal();
      if (e > 0xFFFF) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  mpz_class integer_literal() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  MPoly primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class value(integer_literal());
      if (accept('/')) {
        skip_space();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          fail("division is only allowed between integer literals");
        }
        const std::size_t den_pos = pos_;
        const mpz_class den = integer_literal();
        if (den == 0) {
          pos_ = den_pos;
          fail("zero denominator");
        }
        value = mpq_class(value.get_num(), den);
        value.canonicalize();
      }
      try {
        return MPoly::constant(Scalar::from_rational(value, field_), vars_);
      } catch (const DivisionByZero&) {
        fail("denominator is not invertible in " + field_.name());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      for (const auto& v : vars_) {
        if (v == name) return MPoly::variable(name, field_, vars_);
      }
      if (name == "w" && field_.kind() == Field::Kind::PrimeSquare) {
        return MPoly::constant(Scalar::extension_generator(field_), vars_);
      }
      pos_ = start;
      throw ParseError("unknown variable '" + name + "'", start, "unknown_variable");
    }
    if (accept('(')) {
      MPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const VarList& vars_;
  const Field& field_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_poly(std::string_view text, const VarList& vars, const Field& field) {
  return PolyParser(text, vars, field).parse();
}

}  // namespace plaut
