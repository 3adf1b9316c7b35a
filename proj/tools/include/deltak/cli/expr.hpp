#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "deltak/cli/lexer.hpp"
#include "deltak/diff_ring.hpp"
#include "deltak/multipoly.hpp"
#include "deltak/ratfunc.hpp"

namespace deltak::cli {

/// Identifier -> variable index, including aliases such as t -> t1.
using NameTable = std::map<std::string, std::size_t>;

/// Names of a signature plus t/t1.. and u/u1.. style aliases.
NameTable name_table(const Signature& sig);

/// Recursive-descent parser for
///   sum     := ['+'|'-'] product (('+'|'-') product)*
///   product := power (('*'|'/') power)*
///   power   := atom ['^' int]
///   atom    := int | name | '(' sum ')' | '-' power | d<k>['^' int] '*' power
/// parameterized by the target algebra.
template <class Policy>
class ExprParser {
 public:
  using Value = typename Policy::Value;

  ExprParser(const Policy& policy, TokenStream& ts) : p_(policy), ts_(ts) {}

  Value sum() {
    bool negate = false;
    if (ts_.accept('-')) {
      negate = true;
    } else {
      ts_.accept('+');
    }
    Value acc = product();
    if (negate) acc = -acc;
    while (true) {
      if (ts_.accept('+')) {
        acc = acc + product();
      } else if (ts_.accept('-')) {
        acc = acc - product();
      } else {
        return acc;
      }
    }
  }

 private:
  Value product() {
    Value acc = power();
    while (true) {
      if (ts_.accept('*')) {
        acc = acc * power();
      } else if (ts_.is_symbol('/')) {
        const Token op = ts_.next();
        acc = p_.divide(acc, power(), op);
      } else {
        return acc;
      }
    }
  }

  unsigned exponent() {
    const Token& t = ts_.peek();
    if (t.kind != Tok::number) ts_.fail("malformed exponent");
    if (t.text.size() > 6) ts_.fail("exponent too large");
    ts_.next();
    return static_cast<unsigned>(std::stoul(t.text));
  }

  Value power() {
    Value base = atom();
    if (ts_.accept('^')) base = p_.pow(base, exponent());
    return base;
  }

  Value atom() {
    const Token t = ts_.peek();
    if (t.kind == Tok::number) {
      ts_.next();
      return p_.constant(Rational(Integer(t.text)));
    }
    if (ts_.accept('(')) {
      Value v = sum();
      ts_.expect(')');
      return v;
    }
    if (ts_.accept('-')) return -power();
    if (t.kind == Tok::ident) {
      if (auto k = p_.derivation(t)) {
        ts_.next();
        unsigned e = 1;
        if (ts_.accept('^')) {
          e = exponent();
          if (e == 0) TokenStream::fail_at(t, "malformed exponent on derivation");
        }
        if (!ts_.accept('*')) ts_.fail("expected '*' after derivation operator");
        return p_.derive(power(), *k, e);
      }
      ts_.next();
      if (auto v = p_.identifier(t)) return *v;
      TokenStream::fail_at(t, "unknown identifier");
    }
    ts_.fail("expected an expression");
  }

  const Policy& p_;
  TokenStream& ts_;
};

/// Parses a complete expression; trailing input is an error.
template <class Policy>
typename Policy::Value parse_with(const Policy& policy, std::string_view text, std::size_t line = 1, std::size_t column = 1) {
  TokenStream ts(tokenize(text, line, column));
  ExprParser<Policy> parser(policy, ts);
  auto v = parser.sum();
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return v;
}

/// Differential polynomials in u1..un over the ring's coefficient field.
struct DiffPolicy {
  using Value = DiffPoly;
  DiffRingPtr ring;
  NameTable params;

  explicit DiffPolicy(DiffRingPtr r);
  Value constant(const Rational& c) const { return DiffPoly::constant(ring, c); }
  std::optional<Value> identifier(const Token& t) const;
  std::optional<std::size_t> derivation(const Token& t) const;
  Value derive(const Value& v, std::size_t k, unsigned e) const;
  Value divide(const Value& a, const Value& b, const Token& at) const;
  Value pow(const Value& v, unsigned e) const { return v.pow(e); }
};

/// Rational functions over a signature.
struct RatPolicy {
  using Value = RatFunc;
  Signature sig;
  NameTable names;

  explicit RatPolicy(Signature s) : sig(s), names(name_table(s)) {}
  Value constant(const Rational& c) const { return RatFunc::constant(sig, c); }
  std::optional<Value> identifier(const Token& t) const;
  std::optional<std::size_t> derivation(const Token&) const { return std::nullopt; }
  Value derive(const Value& v, std::size_t, unsigned) const { return v; }
  Value divide(const Value& a, const Value& b, const Token& at) const;
  Value pow(const Value& v, unsigned e) const { return v.pow(static_cast<int>(e)); }
};

/// Polynomials over a signature; division only by nonzero constants.
struct PolyPolicy {
  using Value = MultiPoly;
  Signature sig;
  NameTable names;

  explicit PolyPolicy(Signature s) : sig(s), names(name_table(s)) {}
  Value constant(const Rational& c) const { return MultiPoly::constant(sig, c); }
  std::optional<Value> identifier(const Token& t) const;
  std::optional<std::size_t> derivation(const Token&) const { return std::nullopt; }
  Value derive(const Value& v, std::size_t, unsigned) const { return v; }
  Value divide(const Value& a, const Value& b, const Token& at) const;
  Value pow(const Value& v, unsigned e) const { return v.pow(e); }
};

DiffPoly parse_diffpoly(const DiffRingPtr& ring, std::string_view text, std::size_t line = 1, std::size_t column = 1);
RatFunc parse_ratfunc(const Signature& sig, std::string_view text, std::size_t line = 1, std::size_t column = 1);
MultiPoly parse_multipoly(const Signature& sig, std::string_view text, std::size_t line = 1, std::size_t column = 1);

}  // namespace deltak::cli
