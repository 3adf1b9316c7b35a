#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace deltak {

/// Arbitrary-precision integers and rationals. mpq_class keeps values in
/// lowest terms with a positive denominator after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

/// Parses "a" or "a/b" with optional sign; throws std::invalid_argument.
Rational parse_rational(const std::string& text);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Prime factorisation of |n| (n != 0) as (prime, multiplicity) pairs in
/// increasing prime order. Trial division for small factors, Pollard rho
/// beyond that.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n);

/// All positive divisors of |n| (n != 0), sorted ascending.
std::vector<Integer> divisors(const Integer& n);

}  // namespace deltak
