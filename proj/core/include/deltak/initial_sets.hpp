#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "deltak/diff_ring.hpp"
#include "deltak/upoly.hpp"

namespace deltak {

/// (r_1..r_m, j) with j 0-based. Partial order: same j, componentwise <=.
struct ExpPoint {
  std::vector<std::uint32_t> r;
  std::size_t var = 0;

  unsigned norm() const;
  bool leq(const ExpPoint& other) const;
  std::string to_string() const;

  static ExpPoint of(const AlgIndet& v) { return {v.theta.e, v.var}; }
  AlgIndet indet() const { return {DerivativeIndex{r}, var}; }

  bool operator==(const ExpPoint&) const = default;
  /// Total order used for deterministic listings: (|r|, j, r).
  std::strong_ordering operator<=>(const ExpPoint& other) const;
};

/// B = points lying above no element of E.
class InitialSetRep {
 public:
  InitialSetRep(std::size_t m, std::size_t n, std::vector<ExpPoint> e);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  const std::vector<ExpPoint>& leaders() const { return e_; }
  bool contains(const ExpPoint& p) const;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<ExpPoint> e_;
};

InitialSetRep leaders_to_E(const AutoreducedSet& lambda);
bool b_membership(const InitialSetRep& b, const ExpPoint& p);

/// Number of points of B with |p| <= t.
std::size_t count_Bt(const InitialSetRep& b, unsigned t);
/// Points of B with |p| == t, in increasing rank of the matching indeterminate.
std::vector<ExpPoint> b_points_of_order(const InitialSetRep& b, unsigned t);

/// Maximal points of B, i.e. those whose removal keeps B downward closed.
std::vector<ExpPoint> removable_points(const InitialSetRep& b);
/// True iff B \ {p} is downward closed.
bool removal_keeps_initial(const InitialSetRep& b, const ExpPoint& p);

struct DimensionFunction {
  std::vector<std::size_t> values;  // values[t] = |B_t|
  /// Polynomial agreeing with |B_t| for all t >= onset.
  UPoly eventual_polynomial;
  unsigned onset = 0;
};

DimensionFunction dimension_function(const InitialSetRep& b, unsigned max_t);

struct ProlongationBound {
  unsigned ell = 0;
  unsigned ell1 = 0;
  unsigned ell2 = 0;
  std::vector<ExpPoint> removable;
};

ProlongationBound prolongation_bound(const AutoreducedSet& lambda);
ProlongationBound prolongation_bound(const InitialSetRep& b, unsigned max_order);

}  // namespace deltak
