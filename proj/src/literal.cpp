#include "qconn/literal.hpp"

#include <cctype>

#include "qconn/error.hpp"

namespace qconn {

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  GaussScalar parse() {
    if (text_.empty()) fail("empty literal");
    Rational first = rational(true);
    if (at_end()) return GaussScalar(first);
    if (peek() == 'i') {
      ++pos_;
      expect_end();
      return GaussScalar(Rational(0), first);
    }
    if (peek() != '+' && peek() != '-') fail("expected '+', '-' or 'i'");
    bool negative = peek() == '-';
    ++pos_;
    Rational second = rational(false);
    if (at_end() || peek() != 'i') fail("expected 'i' after imaginary part");
    ++pos_;
    expect_end();
    return GaussScalar(first, negative ? Rational(-second) : second);
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::ParseError,
                "cannot parse scalar '" + std::string(text_) + "' at position " + std::to_string(pos_) + ": " + what);
  }

  void expect_end() const {
    if (!at_end()) fail("unexpected trailing characters");
  }

  mpz_class digits() {
    size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)), 10);
  }

  Rational rational(bool allow_sign) {
    bool negative = false;
    if (allow_sign && !at_end() && peek() == '-') {
      negative = true;
      ++pos_;
    }
    mpz_class num = digits();
    mpz_class den = 1;
    if (!at_end() && peek() == '/') {
      ++pos_;
      size_t den_pos = pos_;
      den = digits();
      if (den == 0) {
        pos_ = den_pos;
        throw Error(ErrorKind::DivisionByZero,
                    "zero denominator in literal '" + std::string(text_) + "' at position " + std::to_string(pos_));
      }
    }
    Rational r(negative ? mpz_class(-num) : num, den);
    r.canonicalize();
    return r;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

GaussScalar parse_scalar(std::string_view text) { return LiteralParser(text).parse(); }

std::string format_scalar(const GaussScalar& value) { return value.str(); }

}  // namespace qconn
