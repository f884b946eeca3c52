#include "canonica/parser.hpp"

#include <cctype>

namespace canonica {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

template <class K>
class Parser {
 public:
  using P = Polynomial<K>;
  Parser(std::string_view text, const PolyRing<K>& ring) : s_(text), ring_(ring) {}

  P parse() {
    P r = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  P expr() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    P r = term();
    if (neg) r = -r;
    for (;;) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }

  P term() {
    P r = power();
    for (;;) {
      if (eat('*')) {
        r = r * power();
      } else if (eat('/')) {
        skip();
        std::size_t at = pos_;
        std::string_view digits = number();
        if (digits.empty()) throw ParseError("expected integer divisor", at);
        auto d = ring_.field().from_decimal(digits);
        if (ring_.field().is_zero(d))
          throw ParseError("divisor " + std::string(digits) + " is not invertible in " + ring_.field().name(), at);
        r = r.scaled(ring_.field().inv(d));
      } else {
        return r;
      }
    }
  }

  P power() {
    P base = atom();
    if (eat('^')) {
      skip();
      std::size_t at = pos_;
      std::string_view digits = number();
      if (digits.empty()) throw ParseError("expected exponent", at);
      if (digits.size() > 4) throw ParseError("exponent too large", at);
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(digits))));
    }
    return base;
  }

  std::string_view number() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && digit(s_[pos_])) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  P atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      P r = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return r;
    }
    if (digit(c)) {
      std::string_view d = number();
      return P::constant(&ring_, ring_.field().from_decimal(d));
    }
    if (ident_start(c)) {
      std::size_t b = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string_view name = s_.substr(b, pos_ - b);
      int idx = ring_.index_of(name);
      if (idx < 0) throw ParseError("unknown variable '" + std::string(name) + "'", b);
      return P::variable(&ring_, idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  const PolyRing<K>& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

template <class K>
Polynomial<K> parse_polynomial(std::string_view text, const PolyRing<K>& ring) {
  return Parser<K>(text, ring).parse();
}

std::vector<std::string> identifiers_in(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (ident_start(text[i])) {
      std::size_t b = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string id(text.substr(b, i - b));
      bool seen = false;
      for (auto& o : out) seen = seen || o == id;
      if (!seen) out.push_back(id);
    } else if (digit(text[i])) {
      while (i < text.size() && ident_char(text[i])) ++i;
    } else {
      ++i;
    }
  }
  return out;
}

template Polynomial<PrimeField> parse_polynomial(std::string_view, const PolyRing<PrimeField>&);
template Polynomial<RationalField> parse_polynomial(std::string_view, const PolyRing<RationalField>&);

}  // namespace canonica
