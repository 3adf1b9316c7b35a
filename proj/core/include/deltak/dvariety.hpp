#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "deltak/groebner.hpp"
#include "deltak/multipoly.hpp"
#include "deltak/prolongation.hpp"
#include "deltak/ratfunc.hpp"

namespace deltak {

/// m polynomial derivations on Q[x_1..x_n], optionally restricted to V(ideal).
struct DSpec {
  Signature vars;
  std::size_t m = 1;
  std::vector<std::vector<MultiPoly>> fields;  // fields[k][j] = d_{k+1}(x_{j+1})
  std::vector<MultiPoly> ideal;

  DSpec() = default;
  DSpec(Signature vars, std::vector<std::vector<MultiPoly>> fields, std::vector<MultiPoly> ideal = {});

  std::size_t n() const { return vars.size(); }
  MultiPoly apply(std::size_t k, const MultiPoly& f) const;
  RatFunc apply(std::size_t k, const RatFunc& f) const;
  /// max_j deg d_k(x_j), or -1 when d_k is zero.
  int field_degree(std::size_t k) const;
};

struct CommutationCheck {
  bool ok = true;
  std::size_t k = 0, l = 0, j = 0;  // first failing triple
  MultiPoly remainder;
};

CommutationCheck check_commuting(const DSpec& spec);

struct SubvarietyCheck {
  bool ok = true;
  std::size_t k = 0;          // failing derivation
  std::size_t generator = 0;  // failing generator
  MultiPoly remainder;        // nonzero normal form of d_k(g)
};

SubvarietyCheck is_dsubvariety(const DSpec& spec, std::span<const MultiPoly> ideal_gens);

/// d_k f = 0 for all k modulo the ideal of V. Throws PreconditionError when
/// the denominator vanishes on V.
bool is_dconstant(const RatFunc& f, const DSpec& spec);

/// D-constant test for prolongation data: f is a function of the level-ell
/// frame and its differential must vanish on every fiber of S.
bool is_dconstant(const DiffFraction& f, const DVarietyData& data);

enum class Irreducibility { verified_irreducible, verified_reducible, not_checked };
const char* to_string(Irreducibility i);

struct DarbouxResult {
  MultiPoly f;
  std::vector<MultiPoly> cofactors;
  int degree = 0;
  Irreducibility irreducibility = Irreducibility::not_checked;
};

/// All f with d_k f = K_k f for one cofactor tuple K, as a canonical
/// reduced-echelon basis (constants removed when K = 0).
struct CofactorGroup {
  std::vector<MultiPoly> cofactors;
  std::vector<MultiPoly> basis;
};

enum class DarbouxMethod { automatic, eigen, groebner };
const char* to_string(DarbouxMethod m);

struct DarbouxOptions {
  DarbouxMethod method = DarbouxMethod::automatic;
  bool check_commuting = true;
};

struct DarbouxReport {
  unsigned degree_bound = 0;
  DarbouxMethod method = DarbouxMethod::automatic;  // the path actually taken
  std::vector<CofactorGroup> groups;
  std::vector<DarbouxResult> results;  // every basis element of every group
  /// Cofactors outside Q exist and were not reported.
  bool non_rational_cofactors = false;
};

DarbouxReport darboux_search(const DSpec& spec, unsigned d, const DarbouxOptions& options = {});

struct FirstIntegralReport {
  std::vector<MultiPoly> polynomial;
  std::vector<RatFunc> rational;
  DarbouxReport darboux;
};

FirstIntegralReport first_integral_search(const DSpec& spec, unsigned d, const DarbouxOptions& options = {});

struct LogDerivative {
  RatFunc value;  // a'/a in lowest terms
  bool is_constant = false;
};

LogDerivative log_derivative(const RatFunc& a, std::size_t var = 0);

/// Some nonzero a in Q(t) with a'/a = gamma, if one exists (univariate).
std::optional<RatFunc> solve_log_derivative(const RatFunc& gamma, std::size_t var = 0);

/// gamma lies in {gamma in Q : d x = gamma x has a nonzero solution in Q(t)}.
bool gamma_membership(const Rational& gamma);

}  // namespace deltak
