#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "deltak/rational.hpp"

namespace deltak {

/// Exponent vector, one entry per variable of the owning signature.
using Monomial = std::vector<std::uint32_t>;

unsigned total_degree(const Monomial& m);
/// True iff a divides b componentwise.
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);
Monomial operator+(const Monomial& a, const Monomial& b);
/// b must divide a.
Monomial operator-(const Monomial& a, const Monomial& b);

enum class TermOrderKind { lex, grevlex, elimination };

/// Monomial order. Variable 0 is the most significant for lex. The
/// elimination order compares the degree of the first `block` variables,
/// then grevlex inside that block, then grevlex on the remaining variables,
/// so every monomial involving a block variable outranks every monomial
/// free of them.
class TermOrder {
 public:
  static TermOrder lex() { return TermOrder(TermOrderKind::lex, 0); }
  static TermOrder grevlex() { return TermOrder(TermOrderKind::grevlex, 0); }
  static TermOrder elimination(std::size_t block) {
    return TermOrder(TermOrderKind::elimination, block);
  }

  TermOrder() = default;

  /// Negative, zero or positive as a <, ==, > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  TermOrderKind kind() const { return kind_; }
  std::size_t block() const { return block_; }
  std::string name() const;

  bool operator==(const TermOrder&) const = default;

 private:
  TermOrder(TermOrderKind kind, std::size_t block) : kind_(kind), block_(block) {}

  TermOrderKind kind_ = TermOrderKind::grevlex;
  std::size_t block_ = 0;
};

/// Ordered list of variable names shared by every polynomial built over it.
class Signature {
 public:
  Signature();
  explicit Signature(std::vector<std::string> names);

  std::size_t size() const { return names_->size(); }
  const std::string& name(std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool operator==(const Signature& other) const {
    return names_ == other.names_ || *names_ == *other.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

struct Term {
  Monomial exponents;
  Rational coeff;

  bool operator==(const Term&) const = default;
};

/// Sparse multivariate polynomial over Q. Terms are kept sorted in strictly
/// decreasing term order with no zero coefficients, so structural equality
/// is polynomial equality.
class MultiPoly {
 public:
  MultiPoly() = default;
  explicit MultiPoly(Signature sig, TermOrder order = TermOrder::grevlex())
      : sig_(std::move(sig)), order_(order) {}

  static MultiPoly constant(Signature sig, const Rational& c,
                            TermOrder order = TermOrder::grevlex());
  static MultiPoly variable(Signature sig, std::size_t index,
                            TermOrder order = TermOrder::grevlex());
  static MultiPoly monomial(Signature sig, Monomial exps, const Rational& c,
                            TermOrder order = TermOrder::grevlex());
  /// Sorts, merges duplicate monomials and drops zeros.
  static MultiPoly from_terms(Signature sig, std::vector<Term> terms,
                              TermOrder order = TermOrder::grevlex());

  const Signature& signature() const { return sig_; }
  const TermOrder& order() const { return order_; }
  std::size_t nvars() const { return sig_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; 0 for the zero polynomial.
  Rational constant_value() const;

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().exponents; }
  const Rational& leading_coefficient() const { return terms_.front().coeff; }

  /// -1 for the zero polynomial.
  int total_degree() const;
  unsigned degree_in(std::size_t var) const;
  bool involves(std::size_t var) const { return degree_in(var) > 0; }
  /// Indices of variables that occur.
  std::vector<std::size_t> support() const;

  MultiPoly with_order(TermOrder order) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  /// this * c * x^m, preserving sortedness.
  MultiPoly mul_term(const Monomial& m, const Rational& c) const;
  /// this += c * x^m * other, in one merge pass.
  void add_scaled(const MultiPoly& other, const Monomial& m, const Rational& c);

  MultiPoly pow(unsigned e) const;
  MultiPoly monic() const;
  MultiPoly derivative(std::size_t var) const;
  MultiPoly substitute(std::size_t var, const Rational& value) const;
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Coefficients with respect to one variable: result[k] multiplies var^k.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;

  /// Re-expresses this polynomial over `target`; variable i of this
  /// signature becomes variable index_map[i] of the target.
  MultiPoly remap(const Signature& target, std::span<const std::size_t> index_map,
                  TermOrder order) const;

  bool operator==(const MultiPoly& other) const;

  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& other, const char* op) const;
  void canonicalize();

  Signature sig_;
  TermOrder order_;
  std::vector<Term> terms_;
};

enum class ArithOp { add, sub, mul, exact_div };

/// Binary arithmetic on polynomials sharing a signature. exact_div throws
/// InexactDivision when the divisor does not divide the dividend.
MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, ArithOp op);
MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b);
/// Quotient if b divides a exactly.
std::optional<MultiPoly> try_exact_div(const MultiPoly& a, const MultiPoly& b);

/// Pseudo-remainder of a by b with respect to `var`; `steps` receives the
/// number of multiplications by the leading coefficient of b.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var,
                           unsigned* steps = nullptr);

/// Monic gcd via recursive content / primitive part; gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// Monomials of total degree <= d, in decreasing grevlex order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d);

/// gcd of the coefficients of p with respect to var (monic).
MultiPoly content_in(const MultiPoly& p, std::size_t var);

}  // namespace deltak
