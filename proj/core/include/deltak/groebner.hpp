#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "deltak/multipoly.hpp"

namespace deltak {

/// Reduced Groebner basis: monic generators, no term of any generator
/// divisible by another generator's leading monomial, sorted by decreasing
/// leading monomial. The unit ideal is {1}; the zero ideal has no generators.
struct GroebnerBasis {
  Signature signature;
  TermOrder order;
  std::vector<MultiPoly> generators;
  bool reduced = false;

  bool is_unit() const;
  bool is_zero_ideal() const { return generators.empty(); }
};

/// Buchberger's algorithm with normal pair selection and the coprime and
/// chain criteria. Inputs are converted to `order`.
GroebnerBasis buchberger(const Signature& sig, std::span<const MultiPoly> gens,
                         TermOrder order = TermOrder::grevlex());
GroebnerBasis buchberger(std::span<const MultiPoly> gens, TermOrder order = TermOrder::grevlex());

/// Fully reduced remainder of p modulo G (zero iff p lies in the ideal).
MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& g);
bool ideal_contains(const GroebnerBasis& g, const MultiPoly& p);

/// Krull dimension from the staircase: the largest set of variables such
/// that no leading monomial is supported inside it. -1 for the unit ideal.
int ideal_dimension(const GroebnerBasis& g);

/// A maximum-cardinality independent variable set (ascending indices);
/// empty for the unit ideal.
std::vector<std::size_t> maximal_independent_set(const GroebnerBasis& g);

/// Generators of G free of variables [0, k). When G was computed for an
/// elimination order with block >= k these generate the elimination ideal.
std::vector<MultiPoly> eliminate_leading_block(const GroebnerBasis& g, std::size_t k);

struct RationalPointOptions {
  /// Parameter values tried for free variables of positive-dimensional
  /// components, in this order.
  std::vector<Rational> sample_values{0, 1, -1, 2, -2, 3};
  std::size_t samples_per_variable = 3;
  std::size_t max_points = 256;
};

struct RationalPointSet {
  std::vector<std::vector<Rational>> points;
  /// A positive-dimensional component was met and only sampled.
  bool sampled = false;
  /// max_points was reached.
  bool truncated = false;
  /// Some univariate elimination polynomial had non-rational roots, so
  /// V(eqs) has points that are not rational.
  bool nonrational_roots = false;
};

/// Rational points of V(eqs). Zero-dimensional parts are enumerated
/// completely (lex elimination plus rational roots); positive-dimensional
/// parts are sampled by fixing a maximal independent set to values from
/// `options.sample_values`.
RationalPointSet rational_points(const Signature& sig, std::span<const MultiPoly> eqs,
                                 const RationalPointOptions& options = {});

}  // namespace deltak
