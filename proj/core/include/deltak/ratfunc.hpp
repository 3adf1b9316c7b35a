#pragma once

#include <string>

#include "deltak/multipoly.hpp"

namespace deltak {

/// Quotient of polynomials in lowest terms. The denominator is nonzero and
/// monic under the active term order, so two RatFuncs are equal iff their
/// numerators and denominators are structurally equal.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(MultiPoly num);
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc zero(Signature sig, TermOrder order = TermOrder::grevlex());
  static RatFunc constant(Signature sig, const Rational& c, TermOrder order = TermOrder::grevlex());
  static RatFunc variable(Signature sig, std::size_t index, TermOrder order = TermOrder::grevlex());

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const Signature& signature() const { return num_.signature(); }
  const TermOrder& order() const { return num_.order(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }

  RatFunc inverse() const;
  RatFunc pow(int e) const;
  /// Partial derivative by the quotient rule.
  RatFunc derivative(std::size_t var) const;
  RatFunc substitute(std::size_t var, const Rational& value) const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// "p", "p/q" or "(p)/(q)", parenthesized only where needed; constants
  /// print as rationals.
  std::string to_string() const;

 private:
  static RatFunc make_canonical(MultiPoly num, MultiPoly den);

  MultiPoly num_;
  MultiPoly den_ = MultiPoly::constant(Signature(), 1);
};

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }

}  // namespace deltak
