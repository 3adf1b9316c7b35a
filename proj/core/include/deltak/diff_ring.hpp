#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "deltak/multipoly.hpp"
#include "deltak/ratfunc.hpp"

namespace deltak {

/// theta = d_1^{e_1} ... d_m^{e_m}; the identity is the zero vector.
struct DerivativeIndex {
  std::vector<std::uint32_t> e;

  unsigned order() const;
  /// True iff this theta divides `other` (componentwise <=).
  bool divides(const DerivativeIndex& other) const;
  DerivativeIndex operator-(const DerivativeIndex& other) const;
  DerivativeIndex operator+(const DerivativeIndex& other) const;
  bool operator==(const DerivativeIndex&) const = default;
};

/// Rank key (order, var, e_m, ..., e_1), compared lexicographically.
using RankKey = std::vector<std::uint64_t>;

/// theta u_j. `var` is 0-based; it prints as u{var+1}.
struct AlgIndet {
  DerivativeIndex theta;
  std::size_t var = 0;

  unsigned order() const { return theta.order(); }
  RankKey key() const;
  /// Canonical text such as "u1", "d1*u2" or "d1^2*d2*u1".
  std::string to_string() const;

  bool operator==(const AlgIndet&) const = default;
  std::strong_ordering operator<=>(const AlgIndet& other) const;
};

/// The canonical ranking: order, then variable index, then (e_m, ..., e_1).
std::strong_ordering rank_compare(const AlgIndet& v, const AlgIndet& w);

/// Q, or Q(t_1..t_s) with a derivation action d_k(t_i) declared for every
/// pair (k, i).
class CoefficientField {
 public:
  CoefficientField() = default;
  /// action[k][i] = d_{k+1}(t_{i+1}); every entry must live over `params`.
  CoefficientField(Signature params, std::vector<std::vector<RatFunc>> action);

  static CoefficientField rationals() { return {}; }
  /// Q(t_1..t_s) with d_k t_i = [k == i] for k < m.
  static CoefficientField partial_derivatives(std::vector<std::string> names, std::size_t m);
  /// Q(t_1..t_s) with the zero action.
  static CoefficientField constants(std::vector<std::string> names, std::size_t m);

  const Signature& params() const { return params_; }
  std::size_t nparams() const { return params_.size(); }
  bool is_rationals() const { return params_.size() == 0; }
  /// d_{k+1}(t_{i+1}); zero when no action is declared.
  RatFunc action(std::size_t k, std::size_t i) const;
  bool has_zero_action() const;

  RatFunc zero() const { return RatFunc::zero(params_); }
  RatFunc one() const { return RatFunc::constant(params_, 1); }
  RatFunc constant(const Rational& c) const { return RatFunc::constant(params_, c); }
  RatFunc param(std::size_t i) const { return RatFunc::variable(params_, i); }

  /// d_{k+1} applied to a coefficient.
  RatFunc derive(const RatFunc& c, std::size_t k) const;

  bool operator==(const CoefficientField& o) const;

 private:
  Signature params_;
  std::vector<std::vector<RatFunc>> action_;
};

/// F{u_1..u_n} with m commuting derivations.
struct DiffRing {
  std::size_t m = 1;
  std::size_t n = 1;
  CoefficientField field;
};

using DiffRingPtr = std::shared_ptr<const DiffRing>;
DiffRingPtr make_diff_ring(std::size_t m, std::size_t n, CoefficientField field = {});

/// Product of powers of AlgIndets, kept in strictly decreasing rank order.
using DiffMonomial = std::vector<std::pair<AlgIndet, std::uint32_t>>;

/// Lexicographic comparison with variables ordered by rank.
std::strong_ordering monomial_compare(const DiffMonomial& a, const DiffMonomial& b);

struct DiffMonomialGreater {
  bool operator()(const DiffMonomial& a, const DiffMonomial& b) const { return monomial_compare(a, b) > 0; }
};

/// (leader, leading degree).
struct PolyRank {
  AlgIndet leader;
  unsigned degree = 0;
  std::strong_ordering operator<=>(const PolyRank& o) const;
  bool operator==(const PolyRank& o) const = default;
};

/// Differential polynomial with coefficients in the ring's field.
class DiffPoly {
 public:
  using TermMap = std::map<DiffMonomial, RatFunc, DiffMonomialGreater>;

  DiffPoly() = default;
  explicit DiffPoly(DiffRingPtr ring) : ring_(std::move(ring)) {}

  static DiffPoly constant(DiffRingPtr ring, const RatFunc& c);
  static DiffPoly constant(DiffRingPtr ring, const Rational& c);
  static DiffPoly indet(DiffRingPtr ring, const AlgIndet& v, std::uint32_t power = 1);
  /// theta u_j from an exponent list and 0-based variable.
  static DiffPoly indet(DiffRingPtr ring, std::vector<std::uint32_t> theta, std::size_t var);
  static DiffPoly from_terms(DiffRingPtr ring, TermMap terms);

  const DiffRingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when no AlgIndet occurs.
  bool is_constant() const;
  RatFunc constant_term() const;

  /// Occurring indeterminates in decreasing rank order.
  std::vector<AlgIndet> indets() const;
  unsigned degree_in(const AlgIndet& v) const;
  /// Coefficient of v^d, as a polynomial free of v.
  DiffPoly coefficient(const AlgIndet& v, unsigned d) const;

  /// Maximal order of an occurring indeterminate; 0 for constants.
  unsigned order() const;
  const AlgIndet& leader() const;
  unsigned leading_degree() const;
  PolyRank rank() const;
  DiffPoly separant() const;
  DiffPoly initial() const;

  DiffPoly operator-() const;
  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const RatFunc& c, const DiffPoly& a);
  DiffPoly pow(unsigned e) const;

  /// Formal partial derivative with respect to one indeterminate.
  DiffPoly partial(const AlgIndet& v) const;
  /// Total derivative d_{k+1} (0-based k): acts on coefficients through the
  /// field action and on indeterminates by raising e_k, extended by Leibniz.
  DiffPoly derive(std::size_t k) const;
  DiffPoly apply(const DerivativeIndex& theta) const;

  /// Substitutes polynomials for some indeterminates.
  DiffPoly substitute(const std::map<AlgIndet, DiffPoly>& values) const;

  bool operator==(const DiffPoly& o) const;
  std::string to_string() const;

 private:
  void check_ring(const DiffPoly& o, const char* op) const;
  void add_term(const DiffMonomial& m, const RatFunc& c);

  DiffRingPtr ring_;
  TermMap terms_;
};

std::strong_ordering poly_rank_compare(const DiffPoly& f, const DiffPoly& g);

struct AutoreducedViolation {
  std::size_t reduced_against;  // index of f whose leader is the problem
  std::size_t offender;         // index of g that is not reduced w.r.t. f
  enum class Reason { constant_element, proper_derivative, leader_degree } reason;
  AlgIndet indet;
  std::string describe() const;
};

struct AutoreducedCheck {
  bool ok = true;
  std::optional<AutoreducedViolation> violation;
};

AutoreducedCheck is_autoreduced(const std::vector<DiffPoly>& set);

/// Autoreduced set sorted by increasing rank.
class AutoreducedSet {
 public:
  AutoreducedSet() = default;
  /// Sorts by rank and validates; throws PreconditionError with the
  /// violation description otherwise.
  explicit AutoreducedSet(std::vector<DiffPoly> elements);

  const std::vector<DiffPoly>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const DiffPoly& operator[](std::size_t i) const { return elements_[i]; }
  const DiffRingPtr& ring() const;

 private:
  std::vector<DiffPoly> elements_;
};

/// Elementwise rank comparison; a rank-equal proper extension is lower.
std::strong_ordering set_rank_compare(const AutoreducedSet& a, const AutoreducedSet& b);

/// (prod S_i^{a_i} I_i^{b_i}) g = sum q_nu theta_nu f_nu + remainder.
struct RittCertificate {
  std::vector<unsigned> separant_exponents;
  std::vector<unsigned> initial_exponents;
  struct Step {
    DiffPoly q;
    DerivativeIndex theta;
    std::size_t element;
  };
  std::vector<Step> steps;
};

struct RittResult {
  DiffPoly remainder;
  RittCertificate certificate;
};

RittResult ritt_reduce(const DiffPoly& g, const AutoreducedSet& a);

/// Re-expands the certificate and checks the identity exactly.
bool verify_certificate(const DiffPoly& g, const AutoreducedSet& a, const RittResult& r);

/// True iff no proper derivative of a leader occurs in p and each leader
/// occurs with degree below its leading degree.
bool is_partially_reduced(const DiffPoly& p, const AutoreducedSet& a);

}  // namespace deltak
