#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "fsig/errors.hpp"
#include "fsig/poly.hpp"

namespace fsig {

namespace detail {

// Full (untruncated) power with a term budget so pathological inputs like
// (x+y+z)^large fail fast instead of exhausting memory.
inline SparsePoly pow_full(SparsePoly base, std::uint64_t e,
                           std::size_t term_budget = std::size_t{1} << 20) {
  SparsePoly result =
      SparsePoly::constant(base.nvars(), base.modulus(), 1);
  while (e > 0) {
    if (e & 1) {
      result = result * base;
      if (result.is_zero()) return result;
    }
    e >>= 1;
    if (e > 0) base = base * base;
    if (result.term_count() > term_budget || base.term_count() > term_budget) {
      throw capacity_error("expanded polynomial exceeds term budget");
    }
  }
  return result;
}

struct Token {
  enum class Kind { Number, Var, Plus, Minus, Star, Caret, LParen, RParen, End };
  Kind kind;
  std::size_t pos;
  std::string digits;  // Number: literal digits
  unsigned var = 0;    // Var: 0-based variable index
};

class PolyParser {
 public:
  PolyParser(const std::string& text, unsigned nvars, std::uint64_t p)
      : nvars_(nvars), p_(p) {
    lex(text);
  }

  SparsePoly run() {
    SparsePoly out = parse_expr();
    if (peek().kind != Token::Kind::End) {
      throw parse_error("unexpected trailing input", peek().pos);
    }
    return out;
  }

 private:
  void lex(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
      const char ch = s[i];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        const std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
          ++i;
        tokens_.push_back({Token::Kind::Number, start,
                           s.substr(start, i - start), 0});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(ch))) {
        const std::size_t start = i;
        unsigned index = 0;
        if (ch == 'x' && i + 1 < s.size() &&
            std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
          // xN names the N-th variable (1-based).
          ++i;
          std::uint64_t num = 0;
          while (i < s.size() &&
                 std::isdigit(static_cast<unsigned char>(s[i]))) {
            num = num * 10 + static_cast<std::uint64_t>(s[i] - '0');
            if (num > kMaxVars + 1) break;
            ++i;
          }
          while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
          if (num < 1 || num > nvars_) {
            throw parse_error("unknown variable '" + s.substr(start, i - start) +
                                  "'",
                              start);
          }
          index = static_cast<unsigned>(num - 1);
        } else if (ch == 'x' || ch == 'y' || ch == 'z' || ch == 'w') {
          index = static_cast<unsigned>(ch - 'x');
          if (ch == 'y') index = 1;
          if (ch == 'z') index = 2;
          if (ch == 'w') index = 3;
          if (ch == 'x') index = 0;
          ++i;
          if (index >= nvars_) {
            throw parse_error(std::string("unknown variable '") + ch + "'",
                              start);
          }
        } else {
          throw parse_error(std::string("unknown variable '") + ch + "'",
                            start);
        }
        tokens_.push_back({Token::Kind::Var, start, "", index});
        continue;
      }
      Token::Kind kind;
      switch (ch) {
        case '+': kind = Token::Kind::Plus; break;
        case '-': kind = Token::Kind::Minus; break;
        case '*': kind = Token::Kind::Star; break;
        case '^': kind = Token::Kind::Caret; break;
        case '(': kind = Token::Kind::LParen; break;
        case ')': kind = Token::Kind::RParen; break;
        default:
          throw parse_error(std::string("unexpected character '") + ch + "'",
                            i);
      }
      tokens_.push_back({kind, i, "", 0});
      ++i;
    }
    tokens_.push_back({Token::Kind::End, s.size(), "", 0});
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  bool starts_factor(Token::Kind k) const {
    return k == Token::Kind::Number || k == Token::Kind::Var ||
           k == Token::Kind::LParen;
  }

  SparsePoly parse_expr() {
    SparsePoly acc = parse_term();
    while (peek().kind == Token::Kind::Plus ||
           peek().kind == Token::Kind::Minus) {
      const bool minus = advance().kind == Token::Kind::Minus;
      SparsePoly rhs = parse_term();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  SparsePoly parse_term() {
    SparsePoly acc = parse_factor();
    while (true) {
      if (peek().kind == Token::Kind::Star) {
        advance();
        acc = acc * parse_factor();
      } else if (starts_factor(peek().kind)) {
        // Juxtaposition: 2x, x^2y^2, 3(x+y).
        acc = acc * parse_factor();
      } else {
        break;
      }
    }
    return acc;
  }

  SparsePoly parse_factor() {
    SparsePoly base = parse_base();
    if (peek().kind == Token::Kind::Caret) {
      advance();
      if (peek().kind != Token::Kind::Number) {
        throw parse_error("expected exponent after '^'", peek().pos);
      }
      const Token& tok = advance();
      std::uint64_t e = 0;
      for (char d : tok.digits) {
        e = e * 10 + static_cast<std::uint64_t>(d - '0');
        if (e > UINT32_MAX) {
          throw parse_error("exponent exceeds 32 bits", tok.pos);
        }
      }
      return detail::pow_full(base, e);
    }
    return base;
  }

  SparsePoly parse_base() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Token::Kind::Number: {
        advance();
        std::uint64_t value = 0;
        for (char d : tok.digits) {
          value = (value * 10 + static_cast<std::uint64_t>(d - '0')) % p_;
        }
        return SparsePoly::constant(nvars_, p_, value);
      }
      case Token::Kind::Var: {
        advance();
        ExponentVec e(nvars_);
        e.set(tok.var, 1);
        return SparsePoly::monomial(nvars_, p_, e);
      }
      case Token::Kind::LParen: {
        advance();
        SparsePoly inner = parse_expr();
        if (peek().kind != Token::Kind::RParen) {
          throw parse_error("expected ')'", peek().pos);
        }
        advance();
        return inner;
      }
      case Token::Kind::End:
        throw parse_error("unexpected end of input", tok.pos);
      default:
        throw parse_error("expected a number, variable or '('", tok.pos);
    }
  }

  unsigned nvars_;
  std::uint64_t p_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses the additive/multiplicative grammar over F_p[x_1..x_n]:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*'? factor)*
//   factor := base ('^' natural)?
//   base   := natural | variable | '(' expr ')'
// Variables are x, y, z, w (or x1..x8); juxtaposition multiplies; whitespace
// between tokens is ignored; coefficients reduce mod p. There is no unary
// minus: negation is written as subtraction, e.g. "0-x" or "(p-1)*x".
inline SparsePoly parse_poly(const std::string& text, unsigned nvars,
                             std::uint64_t p) {
  if (nvars < 1 || nvars > kMaxVars) {
    throw std::invalid_argument("variable count must be in [1, 8]");
  }
  PrimeField field(p);  // validates p
  (void)field;
  detail::PolyParser parser(text, nvars, p);
  return parser.run();
}

}  // namespace fsig
