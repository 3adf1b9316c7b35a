#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltak/diff_ring.hpp"
#include "deltak/groebner.hpp"
#include "deltak/initial_sets.hpp"

namespace deltak {

/// All theta u_j of order <= level, in increasing rank.
struct NablaFrame {
  std::size_t m = 1;
  std::size_t n = 1;
  unsigned level = 0;
  std::vector<AlgIndet> coords;

  std::optional<std::size_t> index_of(const AlgIndet& v) const;
  std::vector<std::string> names() const;
};

NablaFrame nabla_frame(std::size_t m, std::size_t n, unsigned t);

/// Polynomial ring Q[extra..., coords..., params...] used to hand
/// differential polynomials to the Groebner engine. Coefficients in Q(t)
/// become polynomials in the trailing parameter variables after clearing
/// denominators.
class PolyEmbedding {
 public:
  PolyEmbedding(DiffRingPtr ring, std::vector<AlgIndet> coords, std::vector<std::string> extra = {});

  const Signature& signature() const { return sig_; }
  const DiffRingPtr& ring() const { return ring_; }
  const std::vector<AlgIndet>& coords() const { return coords_; }
  std::size_t extra_count() const { return extra_; }
  std::size_t coord_offset() const { return extra_; }
  std::size_t param_offset() const { return extra_ + coords_.size(); }

  struct Cleared {
    MultiPoly poly;         // p * denominator
    MultiPoly denominator;  // involves parameters only
  };
  Cleared clear(const DiffPoly& p, TermOrder order = TermOrder::grevlex()) const;
  /// Inverse of clear for polynomials free of the extra variables.
  DiffPoly lift(const MultiPoly& p) const;
  /// Field element to a parameter-only polynomial (requires a polynomial).
  MultiPoly embed_coefficient(const MultiPoly& field_poly, TermOrder order) const;
  RatFunc to_field(const MultiPoly& params_only) const;

 private:
  DiffRingPtr ring_;
  std::vector<AlgIndet> coords_;
  std::size_t extra_;
  Signature sig_;
};

/// Quotient of differential polynomials with the common factor removed and
/// the denominator's leading coefficient equal to 1.
struct DiffFraction {
  DiffPoly num;
  DiffPoly den;

  static DiffFraction make(DiffPoly num, DiffPoly den);
  static DiffFraction of(DiffPoly p);

  bool is_zero() const { return num.is_zero(); }
  DiffFraction operator-() const;
  friend DiffFraction operator+(const DiffFraction& a, const DiffFraction& b);
  friend DiffFraction operator-(const DiffFraction& a, const DiffFraction& b);
  friend DiffFraction operator*(const DiffFraction& a, const DiffFraction& b);
  friend DiffFraction operator/(const DiffFraction& a, const DiffFraction& b);
  bool operator==(const DiffFraction& o) const { return num == o.num && den == o.den; }
  std::string to_string() const;
};

struct ProlongedGenerator {
  MultiPoly poly;
  DiffPoly source;  // theta f
  DerivativeIndex theta;
  std::size_t element;
};

/// theta f for f in the set and ord(theta f) <= level, as polynomials in
/// the level frame. The ideal of the prolongation is the saturation by the
/// separants, initials and cleared coefficient denominators listed here.
struct ProlongedIdeal {
  unsigned level = 0;
  NablaFrame frame;
  std::shared_ptr<const PolyEmbedding> embedding;
  std::vector<ProlongedGenerator> generators;
  std::vector<DiffPoly> saturating;
  std::vector<MultiPoly> saturating_polys;
};

/// Requires t >= the maximal order of the set.
ProlongedIdeal prolong_ideal(const AutoreducedSet& lambda, unsigned t);
/// Same construction without the order precondition.
ProlongedIdeal prolonged_generators(const AutoreducedSet& lambda, unsigned t);

struct SaturatedIdeal {
  GroebnerBasis basis;  // over the embedding signature, grevlex
  /// Krull dimension minus the number of coefficient parameters.
  int dimension = 0;
};

/// Adds z * prod(H) - 1 and eliminates z.
SaturatedIdeal saturate(const ProlongedIdeal& ideal);

/// constant + sum coeff_b * b over order-t basis coordinates b.
struct AffineExpr {
  DiffFraction constant;
  std::vector<std::pair<AlgIndet, DiffFraction>> linear;  // increasing rank, nonzero

  static AffineExpr constant_of(DiffFraction c);
  static AffineExpr coordinate(const DiffRingPtr& ring, const AlgIndet& b);

  AffineExpr& operator+=(const AffineExpr& o);
  AffineExpr scaled(const DiffFraction& c) const;
  bool is_zero() const;
  std::string to_string() const;
};

struct FiberEntry {
  AlgIndet coordinate;
  AffineExpr value;
  std::size_t element;     // index of f in the set
  DerivativeIndex theta;   // coordinate is the leader of theta f
};

struct AffineFiberModel {
  unsigned level = 0;
  std::vector<AlgIndet> basis;     // order-level points of B, increasing rank
  std::vector<FiberEntry> entries; // other order-level coordinates, increasing rank
  /// Distinct separants whose product clears every denominator.
  std::vector<DiffPoly> separants;

  const FiberEntry* find(const AlgIndet& v) const;
};

/// Requires t > the maximal order of the set.
AffineFiberModel affine_fiber(const AutoreducedSet& lambda, unsigned t);

/// Substitutes the model into every order-t prolonged generator and checks
/// that each coefficient lies in the saturated level-(t-1) ideal.
bool fiber_consistent(const AutoreducedSet& lambda, const AffineFiberModel& model);

struct DVarietyData {
  ProlongationBound bound;
  ProlongedIdeal V;
  SaturatedIdeal V_saturated;
  AffineFiberModel S;  // level bound.ell + 1
  /// section[k][i] = d_{k+1} of V.frame.coords[i], affine in the
  /// order-(ell+1) basis coordinates.
  std::vector<std::vector<AffineExpr>> section;
  std::size_t r = 0;
};

DVarietyData extract_dvariety(const AutoreducedSet& lambda);

}  // namespace deltak
