#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "deltak/groebner.hpp"
#include "deltak/multipoly.hpp"
#include "deltak/ratfunc.hpp"

namespace deltak {

/// P(x, y) with coefficients in Q(t_1..t_s), stored as a primitive
/// polynomial over [x, y, t_1..t_s]. The differential equation is
/// P(x, d x / d t_k) = 0 for the chosen k.
class OdePoly {
 public:
  /// `poly` lives over [x, y, params...]; denominators already cleared.
  OdePoly(MultiPoly poly, std::size_t derivation = 0);
  /// Coefficients c_ij in Q(params) of x^i y^j.
  static OdePoly from_coefficients(const Signature& params,
                                   const std::vector<std::pair<std::pair<unsigned, unsigned>, RatFunc>>& coeffs,
                                   std::size_t derivation = 0);

  const MultiPoly& poly() const { return poly_; }
  const Signature& params() const { return params_; }
  std::size_t derivation() const { return derivation_; }
  std::size_t nparams() const { return params_.size(); }
  bool experimental() const { return params_.size() > 1; }
  std::string to_string() const { return poly_.to_string(); }

 private:
  MultiPoly poly_;
  Signature params_;
  std::size_t derivation_;
};

/// max(deg p, deg q) for g = p/q in lowest terms (total degree when
/// several variables are present).
unsigned height_ratfunc(const RatFunc& g);

/// P(g, g') == 0 exactly; g must live over P's parameter signature.
bool verify_ode_solution(const OdePoly& P, const RatFunc& g);

struct SolutionFamily {
  std::string denominator_lead;  // leading monomial of q in this branch
  GroebnerBasis coefficient_ideal;  // over the ansatz unknowns
  int dimension = 0;
  std::vector<RatFunc> samples;  // verified, lowest terms
  std::vector<unsigned> heights;
  bool sampled = false;
  bool truncated = false;
};

struct HeightReport {
  unsigned D = 0;
  std::vector<SolutionFamily> families;
  /// Union of all verified samples, canonical and sorted by (height, text).
  std::vector<RatFunc> solutions;
  unsigned N_obs = 0;
  bool experimental = false;
  /// Sample values used for free ansatz coefficients.
  std::vector<Rational> sample_values;
};

/// Ansatz x = p/q with deg p, deg q <= D, one branch per leading monomial
/// of q (coefficient 1, higher monomials absent).
HeightReport rational_solution_search(const OdePoly& P, unsigned D);

struct HeightAxiomsVerdict {
  bool ok = true;
  std::size_t checks = 0;
  std::string failure;  // empty when ok
};

/// h(1/g) = h(g), h(g^n) = n h(g), h(0 or constant) = 0 iff constant, and
/// subadditivity of products and sums over consecutive pairs.
HeightAxiomsVerdict height_axioms_check(const std::vector<RatFunc>& samples, unsigned n = 3);

}  // namespace deltak
