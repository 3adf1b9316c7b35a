#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "deltak/multipoly.hpp"
#include "deltak/rational.hpp"

namespace deltak {

/// Dense univariate polynomial over Q; coeffs()[i] multiplies x^i and the
/// top coefficient is nonzero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly constant(const Rational& c) { return UPoly({c}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }
  /// x - root
  static UPoly linear(const Rational& root) { return UPoly({-root, Rational(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& c, const UPoly& a);
  bool operator==(const UPoly&) const = default;

  UPoly monic() const;
  UPoly derivative() const;
  UPoly pow(unsigned e) const;
  Rational evaluate(const Rational& x) const;
  /// Multiplies by the lcm of denominators and divides by the integer
  /// content; leading coefficient made positive.
  UPoly primitive_integer() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd (zero when both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
Rational resultant(const UPoly& a, const UPoly& b);

/// Yun's algorithm: a = lc * prod f_i^i with f_i monic squarefree, coprime.
/// Returns the (f_i, i) pairs with f_i != 1.
std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& a);

/// Distinct rational roots with multiplicities, ascending.
std::vector<std::pair<Rational, unsigned>> rational_roots(const UPoly& a);

struct UFactorization {
  Rational unit;
  /// Monic irreducible factors with multiplicities, in a deterministic order
  /// (ascending degree, then coefficient list).
  std::vector<std::pair<UPoly, unsigned>> factors;
};

/// Complete factorisation over Q (squarefree split, rational roots, then
/// Kronecker's method on the remaining factors).
UFactorization factor(const UPoly& a);
bool is_irreducible(const UPoly& a);

/// Lagrange interpolation through (xs[i], ys[i]), xs distinct.
UPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys);

/// p must involve at most variable `var`.
UPoly to_upoly(const MultiPoly& p, std::size_t var);
MultiPoly from_upoly(const UPoly& u, const Signature& sig, std::size_t var,
                     TermOrder order = TermOrder::grevlex());

}  // namespace deltak
