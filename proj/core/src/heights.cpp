#include "deltak/heights.hpp"

#include <algorithm>
#include <map>

#include "deltak/errors.hpp"

namespace deltak {

namespace {

using Exponents = std::pair<unsigned, unsigned>;

/// Coefficients of x^i y^j as polynomials over the parameter signature.
std::map<Exponents, MultiPoly> split_xy(const MultiPoly& p, const Signature& params) {
  std::map<Exponents, std::vector<Term>> by;
  for (const auto& t : p.terms()) {
    Monomial rest(t.exponents.begin() + 2, t.exponents.end());
    by[{t.exponents[0], t.exponents[1]}].push_back({std::move(rest), t.coeff});
  }
  std::map<Exponents, MultiPoly> out;
  for (auto& [e, terms] : by) out.emplace(e, MultiPoly::from_terms(params, std::move(terms)));
  return out;
}

}  // namespace

OdePoly::OdePoly(MultiPoly poly, std::size_t derivation) : derivation_(derivation) {
  const auto& names = poly.signature().names();
  if (names.size() < 3) throw PreconditionError("OdePoly: expected variables x, y and at least one parameter");
  if (poly.is_zero()) throw PreconditionError("OdePoly: P must be nonzero");
  params_ = Signature(std::vector<std::string>(names.begin() + 2, names.end()));
  if (derivation_ >= params_.size()) throw PreconditionError("OdePoly: derivation index out of range");
  poly = poly.with_order(TermOrder::grevlex());
  MultiPoly content(params_);
  for (const auto& [e, c] : split_xy(poly, params_)) content = content.is_zero() ? c : gcd(content, c);
  std::vector<std::size_t> up(params_.size());
  for (std::size_t i = 0; i < up.size(); ++i) up[i] = i + 2;
  poly = exact_div(poly, content.remap(poly.signature(), up, TermOrder::grevlex()));
  poly_ = poly * MultiPoly::constant(poly.signature(), 1 / poly.leading_coefficient());
}

OdePoly OdePoly::from_coefficients(const Signature& params,
                                   const std::vector<std::pair<Exponents, RatFunc>>& coeffs,
                                   std::size_t derivation) {
  std::vector<std::string> names{"x", "y"};
  for (const auto& n : params.names()) names.push_back(n);
  const Signature sig(std::move(names));
  MultiPoly den = MultiPoly::constant(params, 1);
  for (const auto& [e, c] : coeffs) den = den * exact_div(c.den(), gcd(den, c.den()));
  std::vector<std::size_t> up(params.size());
  for (std::size_t i = 0; i < up.size(); ++i) up[i] = i + 2;
  MultiPoly p(sig);
  for (const auto& [e, c] : coeffs) {
    Monomial xy(sig.size(), 0);
    xy[0] = e.first;
    xy[1] = e.second;
    p += (c.num() * exact_div(den, c.den())).remap(sig, up, TermOrder::grevlex()) * MultiPoly::monomial(sig, xy, 1);
  }
  return OdePoly(std::move(p), derivation);
}

unsigned height_ratfunc(const RatFunc& g) {
  if (g.is_zero()) return 0;
  return static_cast<unsigned>(std::max(g.num().total_degree(), g.den().total_degree()));
}

bool verify_ode_solution(const OdePoly& P, const RatFunc& g) {
  if (!(g.signature() == P.params())) throw SignatureMismatch("verify_ode_solution: g lives over another signature");
  const RatFunc dg = g.derivative(P.derivation());
  RatFunc sum = RatFunc::zero(P.params());
  for (const auto& [e, c] : split_xy(P.poly(), P.params())) sum += RatFunc(c) * g.pow(static_cast<int>(e.first)) * dg.pow(static_cast<int>(e.second));
  return sum.is_zero();
}

HeightReport rational_solution_search(const OdePoly& P, unsigned D) {
  const Signature& params = P.params();
  const std::size_t s = params.size();
  const std::size_t k = P.derivation();
  const auto mons = monomials_up_to(s, D);
  const std::size_t N = mons.size();
  const auto coeffs = split_xy(P.poly(), params);
  unsigned M = 0;
  for (const auto& [e, c] : coeffs) M = std::max(M, e.first + 2 * e.second);

  HeightReport rep;
  rep.D = D;
  rep.experimental = P.experimental();
  rep.sample_values = {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(3), Rational(1, 2)};
  RationalPointOptions opts;
  opts.sample_values = rep.sample_values;

  std::map<std::string, RatFunc> all;
  for (std::size_t lead = 0; lead < N; ++lead) {
    const std::size_t nq = N - lead - 1;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < N; ++j) names.push_back("p" + std::to_string(j));
    for (std::size_t j = 0; j < nq; ++j) names.push_back("q" + std::to_string(j));
    const std::size_t nu = names.size();
    const Signature usig(names);
    for (const auto& n : params.names()) names.push_back(n);
    const Signature all_sig(std::move(names));
    auto mono = [&](const Monomial& m, std::ptrdiff_t unknown) {
      Monomial e(all_sig.size(), 0);
      for (std::size_t i = 0; i < s; ++i) e[nu + i] = m[i];
      if (unknown >= 0) e[static_cast<std::size_t>(unknown)] = 1;
      return MultiPoly::monomial(all_sig, std::move(e), 1);
    };
    MultiPoly p(all_sig), q = mono(mons[lead], -1);
    for (std::size_t j = 0; j < N; ++j) p += mono(mons[j], static_cast<std::ptrdiff_t>(j));
    for (std::size_t j = 0; j < nq; ++j) q += mono(mons[lead + 1 + j], static_cast<std::ptrdiff_t>(N + j));
    const MultiPoly dp = p.derivative(nu + k), dq = q.derivative(nu + k);
    const MultiPoly w = dp * q - p * dq;  // x' = w / q^2

    std::vector<std::size_t> up(s);
    for (std::size_t i = 0; i < s; ++i) up[i] = nu + i;
    MultiPoly E(all_sig);
    for (const auto& [e, c] : coeffs) {
      E += c.remap(all_sig, up, TermOrder::grevlex()) * p.pow(e.first) * w.pow(e.second) * q.pow(M - e.first - 2 * e.second);
    }
    std::map<Monomial, std::vector<Term>> by_t;
    for (const auto& t : E.terms()) {
      Monomial tm(t.exponents.begin() + static_cast<std::ptrdiff_t>(nu), t.exponents.end());
      Monomial um(t.exponents.begin(), t.exponents.begin() + static_cast<std::ptrdiff_t>(nu));
      by_t[tm].push_back({std::move(um), t.coeff});
    }
    std::vector<MultiPoly> eqs;
    for (auto& [tm, terms] : by_t) eqs.push_back(MultiPoly::from_terms(usig, std::move(terms)));

    SolutionFamily fam;
    fam.denominator_lead = MultiPoly::monomial(params, mons[lead], 1).to_string();
    fam.coefficient_ideal = eqs.empty() ? GroebnerBasis{usig, TermOrder::grevlex(), {}, true} : buchberger(usig, eqs);
    if (fam.coefficient_ideal.is_unit()) continue;
    fam.dimension = ideal_dimension(fam.coefficient_ideal);
    const auto pts = rational_points(usig, fam.coefficient_ideal.generators, opts);
    fam.sampled = pts.sampled;
    fam.truncated = pts.truncated;
    std::map<std::string, RatFunc> seen;
    for (const auto& pt : pts.points) {
      std::vector<Rational> full(pt.begin(), pt.end());
      MultiPoly pp(params), qq = MultiPoly::monomial(params, mons[lead], 1);
      for (std::size_t j = 0; j < N; ++j) pp += MultiPoly::monomial(params, mons[j], full[j]);
      for (std::size_t j = 0; j < nq; ++j) qq += MultiPoly::monomial(params, mons[lead + 1 + j], full[N + j]);
      RatFunc g(pp, qq);
      if (!verify_ode_solution(P, g)) throw Error("rational_solution_search: sample failed verification: " + g.to_string());
      seen.emplace(g.to_string(), g);
    }
    for (auto& [key, g] : seen) {
      fam.samples.push_back(g);
      fam.heights.push_back(height_ratfunc(g));
      all.emplace(key, g);
    }
    rep.families.push_back(std::move(fam));
  }
  for (auto& [key, g] : all) rep.solutions.push_back(g);
  std::stable_sort(rep.solutions.begin(), rep.solutions.end(),
                   [](const RatFunc& a, const RatFunc& b) { return height_ratfunc(a) < height_ratfunc(b); });
  for (const auto& g : rep.solutions) rep.N_obs = std::max(rep.N_obs, height_ratfunc(g));
  return rep;
}

HeightAxiomsVerdict height_axioms_check(const std::vector<RatFunc>& samples, unsigned n) {
  HeightAxiomsVerdict v;
  auto fail = [&](const std::string& what, const RatFunc& g) {
    if (v.ok) v.failure = what + " fails for " + g.to_string();
    v.ok = false;
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const RatFunc& g = samples[i];
    const unsigned h = height_ratfunc(g);
    ++v.checks;
    if ((h == 0) != g.is_constant()) fail("h(g) = 0 iff g constant", g);
    if (!g.is_zero()) {
      ++v.checks;
      if (height_ratfunc(g.inverse()) != h) fail("h(1/g) = h(g)", g);
      ++v.checks;
      if (height_ratfunc(g.pow(static_cast<int>(n))) != n * h) fail("h(g^n) = n h(g)", g);
    }
    if (i + 1 < samples.size()) {
      const RatFunc& f = samples[i + 1];
      const unsigned hf = height_ratfunc(f);
      v.checks += 2;
      if (height_ratfunc(f * g) > hf + h) fail("h(fg) <= h(f) + h(g)", g);
      if (height_ratfunc(f + g) > hf + h) fail("h(f+g) <= h(f) + h(g)", g);
    }
  }
  return v;
}

}  // namespace deltak
