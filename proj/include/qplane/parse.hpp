#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "qplane/element.hpp"
#include "qplane/scalar.hpp"

namespace qplane {
namespace detail {

enum class TokKind { number, ident, plus, minus, times, caret, slash, lparen, rparen, end };

struct Token {
  TokKind kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> lex_expression(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({TokKind::number, text.substr(start, i - start), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({TokKind::ident, text.substr(start, i - start), start});
      continue;
    }
    TokKind kind;
    switch (c) {
      case '+': kind = TokKind::plus; break;
      case '-': kind = TokKind::minus; break;
      case '*': kind = TokKind::times; break;
      case '^': kind = TokKind::caret; break;
      case '/': kind = TokKind::slash; break;
      case '(': kind = TokKind::lparen; break;
      case ')': kind = TokKind::rparen; break;
      default:
        throw parse_error(std::string("unexpected character '") + c + "'", start);
    }
    out.push_back({kind, text.substr(start, 1), start});
    ++i;
  }
  out.push_back({TokKind::end, "", text.size()});
  return out;
}

// element := ['-'] term (('+'|'-') term)*
// term    := coeff ['*'] [factors] | factors
// factors := factor+
// factor  := ('t'|'tb') ['^' uint]
// coeff   := rat | [rat] 'i' | '(' rat ('+'|'-') [rat] 'i' ')'
// rat     := uint ['/' uint]
template <class S>
class ElementParser {
 public:
  ElementParser(const std::string& text, S q) : tokens_(lex_expression(text)), q_(std::move(q)) {}

  Element<S> parse() {
    Element<S> result(q_);
    bool negative = false;
    if (peek().kind == TokKind::minus) {
      negative = true;
      advance();
    }
    result = add(result, parse_term(negative));
    while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
      bool neg = peek().kind == TokKind::minus;
      advance();
      result = add(result, parse_term(neg));
    }
    if (peek().kind != TokKind::end)
      throw parse_error("unexpected trailing input '" + peek().text + "'", peek().pos);
    return result;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t idx = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[idx];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool at_generator() const {
    return peek().kind == TokKind::ident && (peek().text == "t" || peek().text == "tb");
  }
  bool at_imaginary_unit() const { return peek().kind == TokKind::ident && peek().text == "i"; }

  Rational parse_unsigned_rational() {
    if (peek().kind != TokKind::number)
      throw parse_error("expected a number, found '" + peek().text + "'", peek().pos);
    std::string num = advance().text;
    if (peek().kind == TokKind::slash) {
      advance();
      if (peek().kind != TokKind::number)
        throw parse_error("expected a denominator after '/'", peek().pos);
      std::string den = advance().text;
      return parse_rational(num + "/" + den);
    }
    return parse_rational(num);
  }

  GaussianRational parse_coeff() {
    if (peek().kind == TokKind::lparen) {
      advance();
      Rational re = parse_signed_rational();
      bool neg_im;
      if (peek().kind == TokKind::plus) neg_im = false;
      else if (peek().kind == TokKind::minus) neg_im = true;
      else throw parse_error("expected '+' or '-' inside a complex coefficient", peek().pos);
      advance();
      Rational im(1);
      if (peek().kind == TokKind::number) im = parse_unsigned_rational();
      if (!at_imaginary_unit())
        throw parse_error("expected 'i' inside a complex coefficient", peek().pos);
      advance();
      if (peek().kind != TokKind::rparen)
        throw parse_error("expected ')' closing a complex coefficient", peek().pos);
      advance();
      return {re, neg_im ? Rational(-im) : im};
    }
    if (at_imaginary_unit()) {
      advance();
      return {Rational(0), Rational(1)};
    }
    Rational value = parse_unsigned_rational();
    if (at_imaginary_unit()) {
      advance();
      return {Rational(0), value};
    }
    return GaussianRational(value);
  }

  Rational parse_signed_rational() {
    bool neg = false;
    if (peek().kind == TokKind::minus) {
      neg = true;
      advance();
    } else if (peek().kind == TokKind::plus) {
      advance();
    }
    Rational value = parse_unsigned_rational();
    return neg ? Rational(-value) : value;
  }

  Element<S> parse_factor_monomial() {
    const Token& tok = advance();
    bool is_bar = tok.text == "tb";
    std::uint32_t exponent = 1;
    if (peek().kind == TokKind::caret) {
      advance();
      if (peek().kind != TokKind::number)
        throw parse_error("expected an exponent after '^'", peek().pos);
      const Token& num = advance();
      unsigned long e = 0;
      try {
        e = std::stoul(num.text);
      } catch (const std::exception&) {
        throw parse_error("exponent too large", num.pos);
      }
      if (e > 1000000) throw parse_error("exponent too large", num.pos);
      exponent = static_cast<std::uint32_t>(e);
    }
    Monomial m = is_bar ? Monomial{0, exponent} : Monomial{exponent, 0};
    return Element<S>::monomial(m, scalar_traits<S>::one(), q_);
  }

  Element<S> parse_term(bool negative) {
    S coeff = scalar_traits<S>::one();
    bool saw_coeff = false;
    if (peek().kind == TokKind::number || peek().kind == TokKind::lparen || at_imaginary_unit()) {
      coeff = scalar_traits<S>::from_exact(parse_coeff());
      saw_coeff = true;
      if (peek().kind == TokKind::times) advance();
    }
    if (!saw_coeff && !at_generator())
      throw parse_error("expected a coefficient or generator, found '" +
                            (peek().kind == TokKind::end ? std::string("end of input") : peek().text) + "'",
                        peek().pos);
    if (negative) coeff = -coeff;
    Element<S> term = Element<S>::monomial(Monomial{0, 0}, coeff, q_);
    while (at_generator()) term = mul(term, parse_factor_monomial());
    if (peek().kind == TokKind::ident)
      throw parse_error("unknown symbol '" + peek().text + "'", peek().pos);
    return term;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  S q_;
};

}  // namespace detail

// Parses the textual grammar into a canonical element: factors are multiplied
// left to right in the free algebra and normally ordered on the way.
template <class S>
Element<S> parse_element(const std::string& text, S q) {
  detail::ElementParser<S> parser(text, std::move(q));
  return parser.parse();
}

}  // namespace qplane
