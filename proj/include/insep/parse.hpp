#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "insep/local_fields.hpp"

namespace insep {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position, const std::string& token)
      : std::invalid_argument("parse error at position " + std::to_string(position + 1) + " near '" + token +
                              "': " + what),
        position_(position),
        token_(token) {}

  std::size_t position() const { return position_; }
  const std::string& token() const { return token_; }

 private:
  std::size_t position_;
  std::string token_;
};

namespace parse_detail {

enum class Tok { number, ident, plus, minus, star, caret, lparen, rparen, at, comma, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::number, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      out.push_back({Tok::ident, std::string(1, ch), i});
      ++i;
      continue;
    }
    Tok kind;
    switch (ch) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '@': kind = Tok::at; break;
      case ',': kind = Tok::comma; break;
      default: throw ParseError("unexpected character", i, std::string(1, ch));
    }
    out.push_back({kind, std::string(1, ch), i});
    ++i;
  }
  out.push_back({Tok::end, "end of input", s.size()});
  return out;
}

/// Polynomials in X over the base, as degree -> coefficient.
template <LocalBase Base>
class PolyParser {
 public:
  using Element = typename Base::Element;
  using Poly = std::map<int, Element>;

  PolyParser(const Base& base, std::vector<Token> tokens) : base_(base), toks_(std::move(tokens)) {}

  Poly expression() {
    Poly acc = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const bool minus = next().kind == Tok::minus;
      Poly rhs = term();
      acc = add(acc, minus ? negate(rhs) : rhs);
    }
    return acc;
  }

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().pos, peek().text); }

 private:
  Poly term() {
    Poly acc = unary();
    while (true) {
      const Tok k = peek().kind;
      if (k == Tok::star) {
        next();
        acc = mul(acc, unary());
      } else if (k == Tok::number || k == Tok::ident || k == Tok::lparen) {
        acc = mul(acc, unary());
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (peek().kind == Tok::minus) {
      next();
      return negate(unary());
    }
    if (peek().kind == Tok::plus) {
      next();
      return unary();
    }
    return power();
  }

  Poly power() {
    const Token start = peek();
    Poly base = atom();
    if (peek().kind != Tok::caret) return base;
    next();
    bool negative = false;
    if (peek().kind == Tok::minus) {
      next();
      negative = true;
    }
    if (peek().kind != Tok::number) fail("expected an integer exponent");
    const Token e = next();
    if (e.text.size() > 6) throw ParseError("exponent too large", e.pos, e.text);
    const int k = std::stoi(e.text);
    if (negative) {
      if (base.size() != 1 || base.begin()->first != 0)
        throw ParseError("negative exponents need a nonzero constant base", start.pos, start.text);
      const Element inv = base_.inverse(base.begin()->second);
      base = Poly{{0, inv}};
    }
    Poly out{{0, base_.one()}};
    for (int i = 0; i < k; ++i) out = mul(out, base);
    return out;
  }

  Poly atom() {
    const Token tok = peek();
    switch (tok.kind) {
      case Tok::number: {
        next();
        if (tok.text.size() > 18) throw ParseError("integer literal too large", tok.pos, tok.text);
        return constant(base_.from_integer(std::stoll(tok.text)));
      }
      case Tok::ident: {
        next();
        if (tok.text == "X") return Poly{{1, base_.one()}};
        if (tok.text == "t") {
          if constexpr (std::is_same_v<Base, LaurentBase>) {
            return constant(base_.uniformizer());
          } else {
            throw ParseError("'t' is only available over a Laurent base; write the prime itself", tok.pos, tok.text);
          }
        }
        if (tok.text == "a") {
          if constexpr (std::is_same_v<Base, LaurentBase>) {
            if (base_.field->degree() == 1)
              throw ParseError("'a' needs a residue field of degree > 1", tok.pos, tok.text);
            return constant(base_.residue(base_.field->generator()));
          } else {
            throw ParseError("'a' is only available over a Laurent base", tok.pos, tok.text);
          }
        }
        throw ParseError("unknown symbol", tok.pos, tok.text);
      }
      case Tok::lparen: {
        next();
        Poly inner = expression();
        if (peek().kind != Tok::rparen) fail("expected ')'");
        next();
        return inner;
      }
      default: fail("expected a number, X, t, a or '('");
    }
  }

  Poly constant(const Element& c) const {
    if (c.is_exact_zero()) return {};
    return Poly{{0, c}};
  }

  static Poly add(Poly a, const Poly& b) {
    for (const auto& [d, c] : b) {
      auto it = a.find(d);
      if (it == a.end()) {
        a.emplace(d, c);
      } else {
        it->second += c;
        if (it->second.is_exact_zero()) a.erase(it);
      }
    }
    return a;
  }

  static Poly negate(Poly a) {
    for (auto& [d, c] : a) c = -c;
    return a;
  }

  static Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [da, ca] : a)
      for (const auto& [db, cb] : b) out = add(std::move(out), Poly{{da + db, ca * cb}});
    return out;
  }

  const Base& base_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace parse_detail

/// Coefficients f_0..f_n (low to high) of a polynomial in X such as
/// "X^8 + t*X^3 + t*X^2 + t" or "X^4 + 2*X + 2".
template <LocalBase Base>
std::vector<typename Base::Element> parse_polynomial(const Base& base, std::string_view text) {
  parse_detail::PolyParser<Base> parser(base, parse_detail::tokenize(text));
  if (parser.peek().kind == parse_detail::Tok::end) parser.fail("empty polynomial");
  auto poly = parser.expression();
  if (parser.peek().kind != parse_detail::Tok::end) parser.fail("unexpected token");
  if (poly.empty()) throw ParseError("polynomial is zero", 0, std::string(text));
  std::vector<typename Base::Element> f(static_cast<std::size_t>(poly.rbegin()->first) + 1, base.zero());
  for (const auto& [d, c] : poly) {
    if (d < 0) throw ParseError("negative power of X", 0, std::string(text));
    f[static_cast<std::size_t>(d)] = c;
  }
  return f;
}

template <LocalBase Base>
EisensteinExtension<Base> parse_extension(const Base& base, std::string_view text) {
  return EisensteinExtension<Base>::from_polynomial(base, parse_polynomial(base, text));
}

/// A term list "c_1 @ e_1, c_2 @ e_2, ..." with constant coefficients,
/// meaning Σ c_k π^(e_k).
template <LocalBase Base>
std::vector<std::pair<std::int64_t, typename Base::Element>> parse_element_terms(const Base& base,
                                                                                  std::string_view text) {
  using parse_detail::Tok;
  parse_detail::PolyParser<Base> parser(base, parse_detail::tokenize(text));
  std::vector<std::pair<std::int64_t, typename Base::Element>> out;
  while (true) {
    const auto start = parser.peek();
    auto coeff = parser.expression();
    if (!coeff.empty() && (coeff.size() > 1 || coeff.begin()->first != 0))
      throw ParseError("element coefficients must not involve X", start.pos, start.text);
    if (parser.peek().kind != Tok::at) parser.fail("expected '@'");
    parser.next();
    bool negative = false;
    if (parser.peek().kind == Tok::minus) {
      parser.next();
      negative = true;
    }
    if (parser.peek().kind != Tok::number) parser.fail("expected an integer exponent after '@'");
    const auto e = parser.next();
    if (e.text.size() > 9) throw ParseError("exponent too large", e.pos, e.text);
    const std::int64_t exponent = (negative ? -1 : 1) * std::stoll(e.text);
    if (!coeff.empty()) out.emplace_back(exponent, coeff.begin()->second);
    if (parser.peek().kind == Tok::comma) {
      parser.next();
      continue;
    }
    if (parser.peek().kind != Tok::end) parser.fail("expected ',' or end of input");
    return out;
  }
}

/// "laurent:p=2,d=1[,modulus=c0:c1:...]" or "padic:p=3".
struct FieldSpec {
  enum class Kind { laurent, padic } kind = Kind::laurent;
  int p = 2;
  int d = 1;
  fp_poly::Poly modulus;

  std::string to_string() const {
    if (kind == Kind::padic) return "padic:p=" + std::to_string(p);
    std::string s = "laurent:p=" + std::to_string(p) + ",d=" + std::to_string(d);
    if (!modulus.empty()) {
      s += ",modulus=";
      for (std::size_t i = 0; i < modulus.size(); ++i) s += (i ? ":" : "") + std::to_string(modulus[i]);
    }
    return s;
  }
};

inline FieldSpec parse_field_spec(std::string_view text) {
  const auto fail = [&](const std::string& what, std::size_t pos, std::string_view tok) -> FieldSpec {
    throw ParseError(what, pos, std::string(tok));
  };
  FieldSpec spec;
  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  if (kind == "laurent") {
    spec.kind = FieldSpec::Kind::laurent;
  } else if (kind == "padic") {
    spec.kind = FieldSpec::Kind::padic;
  } else {
    return fail("field kind must be 'laurent' or 'padic'", 0, kind);
  }
  bool have_p = false;
  std::size_t pos = colon == std::string_view::npos ? text.size() : colon + 1;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) return fail("expected key=value", pos, item);
    const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
    auto to_int = [&](std::string_view v, std::size_t at) {
      if (v.empty() || v.size() > 9 ||
          !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail("expected a nonnegative integer", at, v);
      return std::stoi(std::string(v));
    };
    if (key == "p") {
      spec.p = to_int(value, pos + eq + 1);
      have_p = true;
    } else if (key == "d" && spec.kind == FieldSpec::Kind::laurent) {
      spec.d = to_int(value, pos + eq + 1);
    } else if (key == "modulus" && spec.kind == FieldSpec::Kind::laurent) {
      std::size_t mpos = 0;
      while (mpos <= value.size()) {
        std::size_t mend = value.find(':', mpos);
        if (mend == std::string_view::npos) mend = value.size();
        spec.modulus.push_back(to_int(value.substr(mpos, mend - mpos), pos + eq + 1 + mpos));
        mpos = mend + 1;
      }
    } else {
      return fail("unknown key for this field kind", pos, key);
    }
    pos = end + 1;
  }
  if (!have_p) return fail("missing p=", text.size(), text);
  if (!is_prime(spec.p)) return fail("p must be prime", 0, std::to_string(spec.p));
  if (spec.d < 1) return fail("d must be >= 1", 0, std::to_string(spec.d));
  return spec;
}

using AnyBase = std::variant<LaurentBase, PadicBase>;

inline AnyBase make_base(const FieldSpec& spec, std::int64_t precision = kDefaultPrecision) {
  if (spec.kind == FieldSpec::Kind::padic) return PadicBase::make(spec.p, precision);
  return LaurentBase::make(spec.p, spec.d, spec.modulus, precision);
}

}  // namespace insep
