#include "qfano/parser.hpp"

#include <cctype>

namespace qfano {
namespace {

class Parser {
 public:
  Parser(const std::string& text, RingPtr ring)
      : text_(text), ring_(std::move(ring)) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg, pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Polynomial expr() {
    bool negative = false;
    if (eat('-'))
      negative = true;
    else
      eat('+');
    Polynomial acc = term();
    if (negative) acc = -acc;
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (eat('^')) {
      std::uint64_t e = uint_literal();
      if (e > 100000) fail("exponent too large");
      return base.pow(static_cast<std::uint32_t>(e));
    }
    return base;
  }

  Polynomial atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return variable();
    fail("expected a variable, number, or '('");
  }

  std::uint64_t uint_literal() {
    skip_ws();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected an unsigned integer");
    std::uint64_t v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (1ull << 62)) fail("integer literal too large");
      ++pos_;
    }
    return v;
  }

  Polynomial number() {
    std::string digits = digit_run();
    if (peek() == '/') {
      // Lone '/' only participates in a numeric fraction; the grammar has no
      // division operator.
      std::size_t slash = pos_;
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        pos_ = slash;
        fail("expected an integer denominator after '/'");
      }
      std::string den = digit_run();
      mpq_class q(digits + "/" + den);
      if (q.get_den() == 0) {
        pos_ = slash;
        fail("zero denominator");
      }
      q.canonicalize();
      return make_constant(q, slash);
    }
    return make_constant(mpq_class(digits), pos_);
  }

  Polynomial make_constant(const mpq_class& q, std::size_t at) {
    try {
      return Polynomial::constant(ring_, FieldElem::from_mpq(ring_->field(), q));
    } catch (const precondition_error& e) {
      throw parse_error(e.what(), at);
    }
  }

  std::string digit_run() {
    skip_ws();
    std::string s;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      s += text_[pos_++];
    return s;
  }

  Polynomial variable() {
    skip_ws();
    std::size_t start = pos_;
    std::string name;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        name += text_[pos_++];
      else
        break;
    }
    auto idx = ring_->index_of(name);
    if (!idx) {
      pos_ = start;
      fail("unbound variable \"" + name + "\"");
    }
    return Polynomial::variable(ring_, *idx);
  }

  const std::string& text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_poly(const std::string& text, RingPtr ring) {
  return Parser(text, std::move(ring)).run();
}

}  // namespace qfano
