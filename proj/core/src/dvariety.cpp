#include "deltak/dvariety.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "deltak/eigen.hpp"
#include "deltak/errors.hpp"
#include "deltak/matrix.hpp"
#include "deltak/upoly.hpp"

namespace deltak {

// --- DSpec --------------------------------------------------------------------

DSpec::DSpec(Signature v, std::vector<std::vector<MultiPoly>> f, std::vector<MultiPoly> i)
    : vars(std::move(v)), m(f.size()), fields(std::move(f)), ideal(std::move(i)) {
  if (m == 0) throw PreconditionError("DSpec: at least one derivation is required");
  for (auto& row : fields) {
    if (row.size() != vars.size()) throw PreconditionError("DSpec: every derivation needs one image per variable");
    for (auto& p : row) {
      if (!(p.signature() == vars)) throw SignatureMismatch("DSpec: field outside the variable signature");
      p = p.with_order(TermOrder::grevlex());
    }
  }
  for (auto& p : ideal) {
    if (!(p.signature() == vars)) throw SignatureMismatch("DSpec: ideal generator outside the variable signature");
  }
}

MultiPoly DSpec::apply(std::size_t k, const MultiPoly& f) const {
  if (k >= m) throw PreconditionError("derivation index " + std::to_string(k + 1) + " exceeds m=" + std::to_string(m));
  MultiPoly r(vars, f.order());
  for (std::size_t j = 0; j < n(); ++j) {
    if (!f.involves(j) || fields[k][j].is_zero()) continue;
    r += f.derivative(j) * fields[k][j].with_order(f.order());
  }
  return r;
}

RatFunc DSpec::apply(std::size_t k, const RatFunc& f) const {
  const MultiPoly dn = apply(k, f.num());
  if (f.is_polynomial()) return RatFunc(dn);
  const MultiPoly dd = apply(k, f.den());
  return RatFunc(dn * f.den() - f.num() * dd, f.den() * f.den());
}

int DSpec::field_degree(std::size_t k) const {
  int d = -1;
  for (const auto& p : fields[k]) d = std::max(d, p.total_degree());
  return d;
}

namespace {

std::optional<GroebnerBasis> ideal_basis(const DSpec& spec) {
  std::vector<MultiPoly> gens;
  for (const auto& g : spec.ideal) {
    if (!g.is_zero()) gens.push_back(g);
  }
  if (gens.empty()) return std::nullopt;
  return buchberger(spec.vars, gens, TermOrder::grevlex());
}

MultiPoly reduce_mod(const MultiPoly& p, const std::optional<GroebnerBasis>& g) {
  return g ? normal_form(p, *g) : p.with_order(TermOrder::grevlex());
}

}  // namespace

CommutationCheck check_commuting(const DSpec& spec) {
  const auto g = ideal_basis(spec);
  for (std::size_t k = 0; k < spec.m; ++k) {
    for (std::size_t l = k + 1; l < spec.m; ++l) {
      for (std::size_t j = 0; j < spec.n(); ++j) {
        MultiPoly c = spec.apply(k, spec.fields[l][j]) - spec.apply(l, spec.fields[k][j]);
        MultiPoly r = reduce_mod(c, g);
        if (!r.is_zero()) return {false, k, l, j, r};
      }
    }
  }
  return {};
}

SubvarietyCheck is_dsubvariety(const DSpec& spec, std::span<const MultiPoly> ideal_gens) {
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal_gens) {
    if (!g.is_zero()) gens.push_back(g);
  }
  for (const auto& g : spec.ideal) {
    if (!g.is_zero()) gens.push_back(g);
  }
  std::optional<GroebnerBasis> basis;
  if (!gens.empty()) basis = buchberger(spec.vars, gens, TermOrder::grevlex());
  for (std::size_t i = 0; i < ideal_gens.size(); ++i) {
    for (std::size_t k = 0; k < spec.m; ++k) {
      MultiPoly r = reduce_mod(spec.apply(k, ideal_gens[i]), basis);
      if (!r.is_zero()) return {false, k, i, r};
    }
  }
  return {};
}

bool is_dconstant(const RatFunc& f, const DSpec& spec) {
  const auto g = ideal_basis(spec);
  if (g && ideal_contains(*g, f.den())) throw PreconditionError("is_dconstant: denominator vanishes on V");
  for (std::size_t k = 0; k < spec.m; ++k) {
    // numerator of the quotient rule
    MultiPoly num = spec.apply(k, f.num()) * f.den() - f.num() * spec.apply(k, f.den());
    if (!reduce_mod(num, g).is_zero()) return false;
  }
  return true;
}

bool is_dconstant(const DiffFraction& f, const DVarietyData& data) {
  const auto& coords = data.V.frame.coords;
  const DiffRingPtr ring = data.V.embedding->ring();
  for (const DiffPoly* p : {&f.num, &f.den}) {
    for (const auto& v : p->indets()) {
      if (!data.V.frame.index_of(v)) throw PreconditionError("is_dconstant: " + v.to_string() + " is not a level coordinate");
    }
  }
  for (std::size_t k = 0; k < data.section.size(); ++k) {
    AffineExpr sum = AffineExpr::constant_of(DiffFraction::of(DiffPoly(ring)));
    for (std::size_t i = 0; i < coords.size(); ++i) {
      DiffPoly dn = f.num.partial(coords[i]);
      DiffPoly dd = f.den.partial(coords[i]);
      if (dn.is_zero() && dd.is_zero()) continue;
      const DiffFraction df = DiffFraction::make(dn * f.den - f.num * dd, f.den * f.den);
      if (!df.is_zero()) sum += data.section[k][i].scaled(df);
    }
    std::vector<const DiffFraction*> parts{&sum.constant};
    for (const auto& [b, c] : sum.linear) parts.push_back(&c);
    for (const DiffFraction* part : parts) {
      if (part->is_zero()) continue;
      if (!ideal_contains(data.V_saturated.basis, data.V.embedding->clear(part->num).poly)) return false;
    }
  }
  return true;
}

const char* to_string(Irreducibility i) {
  switch (i) {
    case Irreducibility::verified_irreducible: return "verified-irreducible";
    case Irreducibility::verified_reducible: return "verified-reducible";
    case Irreducibility::not_checked: return "not-checked";
  }
  return "not-checked";
}

const char* to_string(DarbouxMethod m) {
  switch (m) {
    case DarbouxMethod::automatic: return "auto";
    case DarbouxMethod::eigen: return "eigen";
    case DarbouxMethod::groebner: return "groebner";
  }
  return "auto";
}

namespace {

using CofactorKey = std::vector<Rational>;

struct Setup {
  const DSpec& spec;
  std::vector<Monomial> domain;
  std::vector<Monomial> codomain;
  std::map<Monomial, std::size_t> codomain_index;
  std::vector<std::vector<Monomial>> cofactor_monomials;  // per derivation; empty when K_k = 0

  Setup(const DSpec& s, unsigned d) : spec(s) {
    domain = monomials_up_to(s.n(), d);
    int extra = 0;
    for (std::size_t k = 0; k < s.m; ++k) {
      const int e = s.field_degree(k) - 1;
      cofactor_monomials.push_back(e >= 0 ? monomials_up_to(s.n(), static_cast<unsigned>(e)) : std::vector<Monomial>{});
      extra = std::max(extra, e);
    }
    codomain = monomials_up_to(s.n(), d + static_cast<unsigned>(extra));
    for (std::size_t i = 0; i < codomain.size(); ++i) codomain_index[codomain[i]] = i;
  }

  MultiPoly domain_poly(const std::vector<Rational>& v) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (!is_zero(v[i])) terms.push_back({domain[i], v[i]});
    }
    return MultiPoly::from_terms(spec.vars, std::move(terms));
  }

  std::vector<MultiPoly> cofactors_of(const CofactorKey& key) const {
    std::vector<MultiPoly> out;
    std::size_t pos = 0;
    for (const auto& mons : cofactor_monomials) {
      std::vector<Term> terms;
      for (const auto& mono : mons) terms.push_back({mono, key[pos++]});
      out.push_back(MultiPoly::from_terms(spec.vars, std::move(terms)));
    }
    return out;
  }

  /// Rows: all derivations stacked, each block of codomain size. Column i
  /// holds d_k(m_i) - K_k m_i.
  Matrix<Rational> operator_matrix(const std::vector<MultiPoly>& cofactors) const {
    Matrix<Rational> mat(spec.m * codomain.size(), domain.size());
    for (std::size_t k = 0; k < spec.m; ++k) {
      for (std::size_t i = 0; i < domain.size(); ++i) {
        const MultiPoly mono = MultiPoly::monomial(spec.vars, domain[i], 1);
        MultiPoly img = spec.apply(k, mono);
        if (!cofactors.empty() && !cofactors[k].is_zero()) img -= cofactors[k] * mono;
        for (const auto& t : img.terms()) mat(k * codomain.size() + codomain_index.at(t.exponents), i) = t.coeff;
      }
    }
    return mat;
  }

  /// Canonical basis of the solution space for a cofactor tuple.
  std::vector<MultiPoly> solution_space(const CofactorKey& key) const {
    const auto cof = cofactors_of(key);
    auto null = operator_matrix(cof).nullspace();
    const bool zero_cofactor = std::all_of(key.begin(), key.end(), [](const Rational& q) { return is_zero(q); });
    if (zero_cofactor) {
      for (auto& v : null) v.back() = 0;  // the constant monomial is last
    }
    std::vector<MultiPoly> out;
    for (const auto& row : canonical_span(null, domain.size(), Rational(0), Rational(1))) out.push_back(domain_poly(row));
    return out;
  }
};

Irreducibility classify(const MultiPoly& f) {
  const auto supp = f.support();
  if (f.size() == 1) return f.total_degree() == 1 ? Irreducibility::verified_irreducible : Irreducibility::verified_reducible;
  if (supp.size() == 1) {
    return is_irreducible(to_upoly(f, supp.front())) ? Irreducibility::verified_irreducible
                                                      : Irreducibility::verified_reducible;
  }
  return Irreducibility::not_checked;
}

std::vector<CofactorKey> eigen_cofactors(const Setup& s, bool& non_rational) {
  // every d_k preserves the degree filtration, so cofactors are constants
  std::vector<std::vector<Rational>> choices;
  for (std::size_t k = 0; k < s.spec.m; ++k) {
    if (s.cofactor_monomials[k].empty()) {
      choices.push_back({Rational(0)});
      continue;
    }
    Matrix<Rational> mk(s.domain.size(), s.domain.size());
    const auto full = s.operator_matrix({});
    for (std::size_t i = 0; i < s.domain.size(); ++i) {
      for (std::size_t j = 0; j < s.domain.size(); ++j) mk(i, j) = full(k * s.codomain.size() + i, j);
    }
    const auto eig = rational_eigen(mk);
    non_rational = non_rational || eig.non_rational_spectrum;
    std::vector<Rational> vals;
    for (const auto& p : eig.pairs) vals.push_back(p.value);
    choices.push_back(std::move(vals));
  }
  std::vector<CofactorKey> keys;
  CofactorKey cur;
  auto rec = [&](auto& self, std::size_t k) -> void {
    if (k == choices.size()) {
      keys.push_back(cur);
      return;
    }
    if (s.cofactor_monomials[k].empty()) {
      self(self, k + 1);
      return;
    }
    for (const auto& v : choices[k]) {
      cur.push_back(v);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return keys;
}

std::vector<CofactorKey> groebner_cofactors(const Setup& s, bool& non_rational) {
  const std::size_t n = s.spec.n();
  std::size_t nk = 0;
  for (const auto& mons : s.cofactor_monomials) nk += mons.size();
  std::set<CofactorKey> keys;
  // branch i: the leading monomial of f is domain[i] with coefficient 1
  for (std::size_t lead = 0; lead + 1 < s.domain.size(); ++lead) {
    const std::size_t nc = s.domain.size() - lead - 1;
    std::vector<std::string> names;
    for (std::size_t j = 0; j < nc; ++j) names.push_back("c" + std::to_string(j));
    for (std::size_t j = 0; j < nk; ++j) names.push_back("k" + std::to_string(j));
    const std::size_t nu = names.size();
    for (std::size_t j = 0; j < n; ++j) names.push_back(s.spec.vars.name(j));
    const Signature all(std::move(names));
    std::vector<std::size_t> xmap(n);
    for (std::size_t j = 0; j < n; ++j) xmap[j] = nu + j;
    auto lift_x = [&](const MultiPoly& p) { return p.remap(all, xmap, TermOrder::grevlex()); };
    auto x_mono = [&](const Monomial& m) {
      Monomial e(all.size(), 0);
      for (std::size_t j = 0; j < n; ++j) e[nu + j] = m[j];
      return e;
    };

    MultiPoly f = MultiPoly::monomial(all, x_mono(s.domain[lead]), 1);
    for (std::size_t j = 0; j < nc; ++j) {
      Monomial e = x_mono(s.domain[lead + 1 + j]);
      e[j] = 1;
      f += MultiPoly::monomial(all, e, 1);
    }
    const Signature usig(std::vector<std::string>(all.names().begin(), all.names().begin() + static_cast<std::ptrdiff_t>(nu)));
    std::vector<MultiPoly> equations;
    std::size_t kpos = nc;
    for (std::size_t k = 0; k < s.spec.m; ++k) {
      MultiPoly df(all);
      for (std::size_t j = 0; j < n; ++j) {
        if (s.spec.fields[k][j].is_zero()) continue;
        df += f.derivative(nu + j) * lift_x(s.spec.fields[k][j]);
      }
      MultiPoly kk(all);
      for (const auto& mono : s.cofactor_monomials[k]) {
        Monomial e = x_mono(mono);
        e[kpos++] = 1;
        kk += MultiPoly::monomial(all, e, 1);
      }
      // coefficients with respect to the x monomials
      std::map<Monomial, std::vector<Term>> by_x;
      const MultiPoly rel = df - kk * f;
      for (const auto& t : rel.terms()) {
        Monomial xm(t.exponents.begin() + static_cast<std::ptrdiff_t>(nu), t.exponents.end());
        Monomial um(t.exponents.begin(), t.exponents.begin() + static_cast<std::ptrdiff_t>(nu));
        by_x[xm].push_back({std::move(um), t.coeff});
      }
      for (auto& [xm, terms] : by_x) equations.push_back(MultiPoly::from_terms(usig, std::move(terms), TermOrder::elimination(nc)));
    }
    if (nu == 0) {
      // no unknowns: the branch holds iff every equation is trivial
      if (std::all_of(equations.begin(), equations.end(), [](const MultiPoly& p) { return p.is_zero(); })) keys.insert(CofactorKey{});
      continue;
    }
    const GroebnerBasis g = buchberger(usig, equations, TermOrder::elimination(nc));
    if (g.is_unit()) continue;
    std::vector<std::string> knames(usig.names().begin() + static_cast<std::ptrdiff_t>(nc), usig.names().end());
    const Signature ksig(std::move(knames));
    std::vector<std::size_t> down(nu, 0);
    for (std::size_t j = nc; j < nu; ++j) down[j] = j - nc;
    std::vector<MultiPoly> kgens;
    for (const auto& p : eliminate_leading_block(g, nc)) kgens.push_back(p.remap(ksig, down, TermOrder::grevlex()));
    const GroebnerBasis kb = buchberger(ksig, kgens, TermOrder::grevlex());
    if (kb.is_unit()) continue;
    if (ideal_dimension(kb) > 0) {
      throw PreconditionError("darboux_search: cofactors with leading monomial " + std::to_string(lead) +
                              " form a positive-dimensional family");
    }
    const auto pts = rational_points(ksig, kb.generators);
    non_rational = non_rational || pts.nonrational_roots;
    for (const auto& p : pts.points) keys.insert(p);
  }
  return {keys.begin(), keys.end()};
}

}  // namespace

DarbouxReport darboux_search(const DSpec& spec, unsigned d, const DarbouxOptions& options) {
  if (d == 0) throw PreconditionError("darboux_search: degree bound must be positive");
  if (!spec.ideal.empty() && std::any_of(spec.ideal.begin(), spec.ideal.end(), [](const MultiPoly& p) { return !p.is_zero(); })) {
    throw PreconditionError("darboux_search: specs restricted to a subvariety are not supported");
  }
  if (options.check_commuting) {
    const auto c = check_commuting(spec);
    if (!c.ok) {
      throw PreconditionError("derivations d" + std::to_string(c.k + 1) + " and d" + std::to_string(c.l + 1) +
                              " do not commute on " + spec.vars.name(c.j));
    }
  }
  bool linear = true;
  for (std::size_t k = 0; k < spec.m; ++k) linear = linear && spec.field_degree(k) <= 1;

  DarbouxReport report;
  report.degree_bound = d;
  DarbouxMethod method = options.method;
  if (method == DarbouxMethod::automatic) method = linear ? DarbouxMethod::eigen : DarbouxMethod::groebner;
  if (method == DarbouxMethod::eigen && !linear) {
    throw PreconditionError("darboux_search: the eigen path needs every d_k(x_j) of degree <= 1");
  }
  report.method = method;

  const Setup s(spec, d);
  const auto keys = method == DarbouxMethod::eigen ? eigen_cofactors(s, report.non_rational_cofactors)
                                                   : groebner_cofactors(s, report.non_rational_cofactors);
  std::set<CofactorKey> seen;
  for (const auto& key : keys) {
    if (!seen.insert(key).second) continue;
    auto basis = s.solution_space(key);
    if (basis.empty()) continue;
    report.groups.push_back({s.cofactors_of(key), std::move(basis)});
  }
  for (const auto& g : report.groups) {
    for (const auto& f : g.basis) report.results.push_back({f, g.cofactors, f.total_degree(), classify(f)});
  }
  return report;
}

namespace {

bool all_zero(const std::vector<MultiPoly>& ps) {
  return std::all_of(ps.begin(), ps.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

std::vector<MultiPoly> sum_cofactors(const std::vector<MultiPoly>& a, const std::vector<MultiPoly>& b) {
  std::vector<MultiPoly> out = a;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b[k];
  return out;
}

}  // namespace

FirstIntegralReport first_integral_search(const DSpec& spec, unsigned d, const DarbouxOptions& options) {
  FirstIntegralReport rep;
  rep.darboux = darboux_search(spec, d, options);
  const Setup s(spec, d);

  auto null = s.operator_matrix({}).nullspace();
  for (auto& v : null) v.back() = 0;
  for (const auto& row : canonical_span(null, s.domain.size(), Rational(0), Rational(1))) {
    rep.polynomial.push_back(s.domain_poly(row));
  }

  struct Product {
    MultiPoly poly;
    std::vector<MultiPoly> cofactors;
    int degree;
  };
  std::vector<const DarbouxResult*> atoms;
  for (const auto& r : rep.darboux.results) {
    if (!all_zero(r.cofactors)) atoms.push_back(&r);
  }
  std::vector<Product> products;
  auto rec = [&](auto& self, std::size_t start, const Product& cur) -> void {
    for (std::size_t i = start; i < atoms.size(); ++i) {
      if (cur.degree + atoms[i]->degree > static_cast<int>(d)) continue;
      Product next{cur.poly * atoms[i]->f, sum_cofactors(cur.cofactors, atoms[i]->cofactors), cur.degree + atoms[i]->degree};
      products.push_back(next);
      self(self, i, next);
    }
  };
  rec(rec, 0, Product{MultiPoly::constant(spec.vars, 1), std::vector<MultiPoly>(spec.m, MultiPoly(spec.vars)), 0});

  std::map<std::string, RatFunc> found;
  const TermOrder order = TermOrder::grevlex();
  for (std::size_t i = 0; i < products.size(); ++i) {
    for (std::size_t j = i + 1; j < products.size(); ++j) {
      bool same = true;
      for (std::size_t k = 0; k < spec.m && same; ++k) same = products[i].cofactors[k] == products[j].cofactors[k];
      if (!same) continue;
      RatFunc r(products[i].poly, products[j].poly);
      if (r.is_constant()) continue;
      if (r.den().total_degree() > 0 &&
          (r.num().total_degree() == 0 || order.compare(r.den().leading_monomial(), r.num().leading_monomial()) > 0)) {
        r = r.inverse();
      }
      r = r * RatFunc::constant(spec.vars, 1 / r.num().leading_coefficient());
      if (!is_dconstant(r, spec)) throw Error("first_integral_search: candidate failed the D-constant check");
      found.emplace(r.to_string(), r);
    }
  }
  std::vector<RatFunc> rational;
  for (auto& [key, r] : found) rational.push_back(r);
  std::stable_sort(rational.begin(), rational.end(), [](const RatFunc& a, const RatFunc& b) {
    const int da = std::max(a.num().total_degree(), a.den().total_degree());
    const int db = std::max(b.num().total_degree(), b.den().total_degree());
    return da < db;
  });
  rep.rational = std::move(rational);
  return rep;
}

// --- logarithmic derivatives ---------------------------------------------------

LogDerivative log_derivative(const RatFunc& a, std::size_t var) {
  if (a.is_zero()) throw PreconditionError("log_derivative of zero");
  RatFunc v = a.derivative(var) / a;
  const bool c = v.is_constant();
  return {std::move(v), c};
}

std::optional<RatFunc> solve_log_derivative(const RatFunc& gamma, std::size_t var) {
  const Signature& sig = gamma.signature();
  if (gamma.is_zero()) return RatFunc::constant(sig, 1, gamma.order());
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i != var && (gamma.num().involves(i) || gamma.den().involves(i))) {
      throw PreconditionError("solve_log_derivative: gamma must be univariate");
    }
  }
  const UPoly p = to_upoly(gamma.num(), var);
  const UPoly q = to_upoly(gamma.den(), var);
  // a'/a is proper with simple poles
  if (p.degree() >= q.degree()) return std::nullopt;
  const UPoly dq = q.derivative();
  if (gcd(q, dq).degree() > 0) return std::nullopt;
  // residues are the roots of res_t(q, p - z q')
  const int deg = q.degree();
  std::vector<Rational> zs, rs;
  for (int i = 0; i <= deg; ++i) {
    zs.emplace_back(i);
    rs.push_back(resultant(q, p - Rational(i) * dq));
  }
  const UPoly res = interpolate(zs, rs);
  RatFunc a = RatFunc::constant(sig, 1, gamma.order());
  for (const auto& [c, mult] : rational_roots(res)) {
    if (!is_integer(c)) return std::nullopt;
    const UPoly g = gcd(q, p - c * dq);
    if (g.degree() <= 0) continue;
    const long e = c.get_num().get_si();
    a = a * RatFunc(from_upoly(g, sig, var, gamma.order())).pow(static_cast<int>(e));
  }
  if (!(log_derivative(a, var).value == gamma)) return std::nullopt;
  return a;
}

bool gamma_membership(const Rational& gamma) {
  const Signature t({"t"});
  return solve_log_derivative(RatFunc::constant(t, gamma), 0).has_value();
}

}  // namespace deltak
