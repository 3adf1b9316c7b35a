#include "deltak/prolongation.hpp"

#include <algorithm>
#include <map>

#include "deltak/errors.hpp"

namespace deltak {

namespace {

std::vector<DerivativeIndex> thetas_of_order(std::size_t m, unsigned order) {
  std::vector<DerivativeIndex> out;
  std::vector<std::uint32_t> e(m, 0);
  auto rec = [&](auto& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == m) {
      e[i] = left;
      out.push_back(DerivativeIndex{e});
      return;
    }
    for (unsigned x = 0; x <= left; ++x) {
      e[i] = x;
      self(self, i + 1, left - x);
    }
  };
  rec(rec, 0, order);
  std::sort(out.begin(), out.end(), [](const DerivativeIndex& a, const DerivativeIndex& b) {
    return AlgIndet{a, 0} < AlgIndet{b, 0};
  });
  return out;
}

MultiPoly poly_lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_constant()) return b.monic();
  if (b.is_constant()) return a.monic();
  return exact_div(a * b, gcd(a, b)).monic();
}

unsigned max_order(const AutoreducedSet& lambda) {
  unsigned o = 0;
  for (const auto& f : lambda.elements()) o = std::max(o, f.order());
  return o;
}

/// g = sum_w a_w * w + rest with w ranging over order-t indeterminates,
/// each occurring linearly with coefficients of lower order.
struct LinearSplit {
  std::vector<std::pair<AlgIndet, DiffPoly>> coeffs;  // increasing rank
  DiffPoly rest;
};

LinearSplit split_top_order(const DiffPoly& g, unsigned t) {
  LinearSplit s{{}, g};
  for (const auto& w : g.indets()) {
    if (w.order() != t) continue;
    if (g.degree_in(w) != 1) throw PreconditionError("prolonged relation is not linear in " + w.to_string());
    DiffPoly a = g.coefficient(w, 1);
    if (a.order() >= t && !a.is_constant()) {
      throw PreconditionError("prolonged relation has a top-order product involving " + w.to_string());
    }
    s.rest -= a * DiffPoly::indet(g.ring(), w);
    s.coeffs.emplace_back(w, std::move(a));
  }
  std::reverse(s.coeffs.begin(), s.coeffs.end());
  return s;
}

}  // namespace

// --- frames -------------------------------------------------------------------

std::optional<std::size_t> NablaFrame::index_of(const AlgIndet& v) const {
  if (v.theta.e.size() != m) return std::nullopt;
  auto it = std::lower_bound(coords.begin(), coords.end(), v);
  if (it == coords.end() || !(*it == v)) return std::nullopt;
  return static_cast<std::size_t>(it - coords.begin());
}

std::vector<std::string> NablaFrame::names() const {
  std::vector<std::string> out;
  for (const auto& c : coords) out.push_back(c.to_string());
  return out;
}

NablaFrame nabla_frame(std::size_t m, std::size_t n, unsigned t) {
  NablaFrame f{m, n, t, {}};
  for (unsigned o = 0; o <= t; ++o) {
    for (const auto& theta : thetas_of_order(m, o)) {
      for (std::size_t j = 0; j < n; ++j) f.coords.push_back({theta, j});
    }
  }
  std::sort(f.coords.begin(), f.coords.end());
  return f;
}

// --- embedding ----------------------------------------------------------------

PolyEmbedding::PolyEmbedding(DiffRingPtr ring, std::vector<AlgIndet> coords, std::vector<std::string> extra)
    : ring_(std::move(ring)), coords_(std::move(coords)), extra_(extra.size()) {
  std::vector<std::string> names = std::move(extra);
  for (const auto& c : coords_) names.push_back(c.to_string());
  for (const auto& p : ring_->field.params().names()) names.push_back(p);
  sig_ = Signature(std::move(names));
}

MultiPoly PolyEmbedding::embed_coefficient(const MultiPoly& field_poly, TermOrder order) const {
  std::vector<std::size_t> map(field_poly.nvars());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = param_offset() + i;
  return field_poly.remap(sig_, map, order);
}

RatFunc PolyEmbedding::to_field(const MultiPoly& params_only) const {
  const Signature& fsig = ring_->field.params();
  std::vector<Term> terms;
  for (const auto& t : params_only.terms()) {
    Monomial m(fsig.size(), 0);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (i < param_offset()) throw PreconditionError("to_field: polynomial involves frame variables");
      m[i - param_offset()] = t.exponents[i];
    }
    terms.push_back({std::move(m), t.coeff});
  }
  return RatFunc(MultiPoly::from_terms(fsig, std::move(terms)));
}

PolyEmbedding::Cleared PolyEmbedding::clear(const DiffPoly& p, TermOrder order) const {
  const Signature& fsig = ring_->field.params();
  MultiPoly l = MultiPoly::constant(fsig, 1);
  for (const auto& [m, c] : p.terms()) {
    if (!c.is_polynomial()) l = poly_lcm(l, c.den());
  }
  std::vector<Term> terms;
  for (const auto& [m, c] : p.terms()) {
    Monomial base(sig_.size(), 0);
    for (const auto& [v, e] : m) {
      auto it = std::lower_bound(coords_.begin(), coords_.end(), v);
      if (it == coords_.end() || !(*it == v)) {
        // coords need not be rank sorted; fall back to a scan
        auto lin = std::find(coords_.begin(), coords_.end(), v);
        if (lin == coords_.end()) throw PreconditionError("indeterminate " + v.to_string() + " lies outside the frame");
        it = lin;
      }
      base[coord_offset() + static_cast<std::size_t>(it - coords_.begin())] = e;
    }
    MultiPoly scaled = c.is_polynomial() ? c.num() * (1 / c.den().constant_value()) : c.num();
    if (!l.is_constant()) scaled = scaled * (c.is_polynomial() ? l : exact_div(l, c.den()));
    for (const auto& t : scaled.terms()) {
      Monomial mono = base;
      for (std::size_t i = 0; i < t.exponents.size(); ++i) mono[param_offset() + i] += t.exponents[i];
      terms.push_back({std::move(mono), t.coeff});
    }
  }
  return {MultiPoly::from_terms(sig_, std::move(terms), order), embed_coefficient(l, order)};
}

DiffPoly PolyEmbedding::lift(const MultiPoly& p) const {
  const Signature& fsig = ring_->field.params();
  std::map<DiffMonomial, std::vector<Term>, DiffMonomialGreater> grouped;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < extra_; ++i) {
      if (t.exponents[i] != 0) throw PreconditionError("lift: polynomial involves auxiliary variables");
    }
    DiffMonomial mono;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (auto e = t.exponents[coord_offset() + i]; e != 0) mono.emplace_back(coords_[i], e);
    }
    std::sort(mono.begin(), mono.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    Monomial pm(fsig.size(), 0);
    for (std::size_t i = 0; i < fsig.size(); ++i) pm[i] = t.exponents[param_offset() + i];
    grouped[mono].push_back({std::move(pm), t.coeff});
  }
  DiffPoly::TermMap terms;
  for (auto& [mono, ts] : grouped) terms.emplace(mono, RatFunc(MultiPoly::from_terms(fsig, std::move(ts))));
  return DiffPoly::from_terms(ring_, std::move(terms));
}

// --- fractions ----------------------------------------------------------------

DiffFraction DiffFraction::of(DiffPoly p) {
  DiffPoly one = DiffPoly::constant(p.ring(), Rational(1));
  return {std::move(p), std::move(one)};
}

DiffFraction DiffFraction::make(DiffPoly num, DiffPoly den) {
  if (den.is_zero()) throw PreconditionError("DiffFraction: zero denominator");
  const DiffRingPtr ring = num.ring() ? num.ring() : den.ring();
  if (num.is_zero()) return of(DiffPoly(ring));
  if (den.is_constant()) {
    const RatFunc inv = den.constant_term().inverse();
    return of(inv * num);
  }
  std::vector<AlgIndet> vars = num.indets();
  for (const auto& v : den.indets()) vars.push_back(v);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  const PolyEmbedding emb(ring, vars);
  auto cn = emb.clear(num);
  auto cd = emb.clear(den);
  const MultiPoly g = gcd(cn.poly, cd.poly);
  if (!g.is_constant()) {
    cn.poly = exact_div(cn.poly, g);
    cd.poly = exact_div(cd.poly, g);
  }
  DiffPoly n = emb.lift(cn.poly);
  DiffPoly d = emb.lift(cd.poly);
  const RatFunc ratio = emb.to_field(cd.denominator) / emb.to_field(cn.denominator);
  n = ratio * n;
  if (d.is_constant()) {
    const RatFunc inv = d.constant_term().inverse();
    return of(inv * n);
  }
  const RatFunc lc_inv = d.terms().begin()->second.inverse();
  return {lc_inv * n, lc_inv * d};
}

DiffFraction DiffFraction::operator-() const { return {-num, den}; }

DiffFraction operator+(const DiffFraction& a, const DiffFraction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den == b.den) return DiffFraction::make(a.num + b.num, a.den);
  return DiffFraction::make(a.num * b.den + b.num * a.den, a.den * b.den);
}

DiffFraction operator-(const DiffFraction& a, const DiffFraction& b) { return a + (-b); }

DiffFraction operator*(const DiffFraction& a, const DiffFraction& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  return DiffFraction::make(a.num * b.num, a.den * b.den);
}

DiffFraction operator/(const DiffFraction& a, const DiffFraction& b) {
  if (b.is_zero()) throw PreconditionError("DiffFraction: division by zero");
  return DiffFraction::make(a.num * b.den, a.den * b.num);
}

std::string DiffFraction::to_string() const {
  if (den.is_constant()) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

// --- prolonged ideals ---------------------------------------------------------

ProlongedIdeal prolonged_generators(const AutoreducedSet& lambda, unsigned t) {
  if (lambda.size() == 0) throw PreconditionError("prolong: empty set");
  const DiffRingPtr& ring = lambda.ring();
  ProlongedIdeal ideal;
  ideal.level = t;
  ideal.frame = nabla_frame(ring->m, ring->n, t);
  ideal.embedding = std::make_shared<const PolyEmbedding>(ring, ideal.frame.coords);
  const PolyEmbedding& emb = *ideal.embedding;

  std::vector<MultiPoly> sat;
  auto add_saturating = [&](const MultiPoly& p) {
    if (p.is_constant()) return;
    const MultiPoly q = p.monic();
    if (std::find(sat.begin(), sat.end(), q) == sat.end()) sat.push_back(q);
  };

  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const DiffPoly& f = lambda[i];
    const unsigned o = f.order();
    if (o > t) continue;
    for (const DiffPoly& h : {f.separant(), f.initial()}) {
      if (h.is_constant()) continue;
      if (std::find(ideal.saturating.begin(), ideal.saturating.end(), h) == ideal.saturating.end()) {
        ideal.saturating.push_back(h);
        add_saturating(emb.clear(h).poly);
      }
    }
    for (unsigned k = 0; k <= t - o; ++k) {
      for (const auto& theta : thetas_of_order(ring->m, k)) {
        DiffPoly g = f.apply(theta);
        auto cleared = emb.clear(g);
        add_saturating(cleared.denominator);
        ideal.generators.push_back({std::move(cleared.poly), std::move(g), theta, i});
      }
    }
  }
  ideal.saturating_polys = std::move(sat);
  return ideal;
}

ProlongedIdeal prolong_ideal(const AutoreducedSet& lambda, unsigned t) {
  if (lambda.size() == 0) throw PreconditionError("prolong: empty set");
  const unsigned o = max_order(lambda);
  if (t < o) {
    throw PreconditionError("prolong: level " + std::to_string(t) + " is below the maximal order " + std::to_string(o));
  }
  return prolonged_generators(lambda, t);
}

SaturatedIdeal saturate(const ProlongedIdeal& ideal) {
  const PolyEmbedding& emb = *ideal.embedding;
  const Signature& sig = emb.signature();
  const int nparams = static_cast<int>(emb.ring()->field.nparams());
  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.generators) gens.push_back(g.poly);

  SaturatedIdeal out;
  if (ideal.saturating_polys.empty()) {
    out.basis = buchberger(sig, gens, TermOrder::grevlex());
  } else {
    std::vector<std::string> names{"z_"};
    for (const auto& n : sig.names()) names.push_back(n);
    const Signature zsig(std::move(names));
    const TermOrder elim = TermOrder::elimination(1);
    std::vector<std::size_t> up(sig.size());
    for (std::size_t i = 0; i < up.size(); ++i) up[i] = i + 1;
    std::vector<MultiPoly> zgens;
    for (const auto& g : gens) zgens.push_back(g.remap(zsig, up, elim));
    MultiPoly h = MultiPoly::constant(zsig, 1, elim);
    for (const auto& s : ideal.saturating_polys) h = h * s.remap(zsig, up, elim);
    zgens.push_back(MultiPoly::variable(zsig, 0, elim) * h - MultiPoly::constant(zsig, 1, elim));
    const GroebnerBasis zb = buchberger(zsig, zgens, elim);
    std::vector<std::size_t> down(zsig.size());
    for (std::size_t i = 1; i < down.size(); ++i) down[i] = i - 1;
    std::vector<MultiPoly> kept;
    for (const auto& p : eliminate_leading_block(zb, 1)) kept.push_back(p.remap(sig, down, TermOrder::grevlex()));
    // the z-free part of a reduced elimination basis is a reduced grevlex basis
    std::sort(kept.begin(), kept.end(), [](const MultiPoly& a, const MultiPoly& b) {
      return TermOrder::grevlex().compare(a.leading_monomial(), b.leading_monomial()) > 0;
    });
    out.basis = GroebnerBasis{sig, TermOrder::grevlex(), std::move(kept), true};
  }
  const int d = ideal_dimension(out.basis);
  out.dimension = d < 0 ? -1 : d - nparams;
  return out;
}

// --- affine fibers ------------------------------------------------------------

AffineExpr AffineExpr::constant_of(DiffFraction c) { return {std::move(c), {}}; }

AffineExpr AffineExpr::coordinate(const DiffRingPtr& ring, const AlgIndet& b) {
  AffineExpr e{DiffFraction::of(DiffPoly(ring)), {}};
  e.linear.emplace_back(b, DiffFraction::of(DiffPoly::constant(ring, Rational(1))));
  return e;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& o) {
  constant = constant + o.constant;
  std::vector<std::pair<AlgIndet, DiffFraction>> merged;
  std::size_t i = 0, j = 0;
  while (i < linear.size() || j < o.linear.size()) {
    if (j == o.linear.size() || (i < linear.size() && linear[i].first < o.linear[j].first)) {
      merged.push_back(linear[i++]);
    } else if (i == linear.size() || o.linear[j].first < linear[i].first) {
      merged.push_back(o.linear[j++]);
    } else {
      DiffFraction s = linear[i].second + o.linear[j].second;
      if (!s.is_zero()) merged.emplace_back(linear[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  linear = std::move(merged);
  return *this;
}

AffineExpr AffineExpr::scaled(const DiffFraction& c) const {
  AffineExpr e{constant * c, {}};
  for (const auto& [b, x] : linear) {
    DiffFraction y = x * c;
    if (!y.is_zero()) e.linear.emplace_back(b, std::move(y));
  }
  return e;
}

bool AffineExpr::is_zero() const { return constant.is_zero() && linear.empty(); }

std::string AffineExpr::to_string() const {
  std::string out;
  if (!constant.is_zero() || linear.empty()) out = constant.to_string();
  for (const auto& [b, c] : linear) {
    if (!out.empty()) out += " + ";
    const bool unit = c.den.is_constant() && c.num.is_constant() && c.num.constant_term().is_constant() &&
                      c.num.constant_term().constant_value() == 1;
    out += unit ? b.to_string() : "(" + c.to_string() + ")*" + b.to_string();
  }
  return out;
}

const FiberEntry* AffineFiberModel::find(const AlgIndet& v) const {
  for (const auto& e : entries) {
    if (e.coordinate == v) return &e;
  }
  return nullptr;
}

namespace {

AffineExpr substitute_split(const LinearSplit& s, const AffineFiberModel& model, const DiffRingPtr& ring,
                            const std::optional<AlgIndet>& skip) {
  AffineExpr expr = AffineExpr::constant_of(DiffFraction::of(s.rest));
  for (const auto& [w, a] : s.coeffs) {
    if (skip && w == *skip) continue;
    const DiffFraction coeff = DiffFraction::of(a);
    if (const FiberEntry* e = model.find(w)) {
      expr += e->value.scaled(coeff);
    } else if (std::find(model.basis.begin(), model.basis.end(), w) != model.basis.end()) {
      expr += AffineExpr::coordinate(ring, w).scaled(coeff);
    } else {
      throw Error("affine_fiber: coordinate " + w.to_string() + " used before it was solved");
    }
  }
  return expr;
}

}  // namespace

AffineFiberModel affine_fiber(const AutoreducedSet& lambda, unsigned t) {
  if (lambda.size() == 0) throw PreconditionError("affine_fiber: empty set");
  const unsigned o = max_order(lambda);
  if (t <= o) {
    throw PreconditionError("affine_fiber: level " + std::to_string(t) + " must exceed the maximal order " +
                            std::to_string(o));
  }
  const DiffRingPtr& ring = lambda.ring();
  const InitialSetRep b = leaders_to_E(lambda);
  AffineFiberModel model;
  model.level = t;
  for (const auto& ru : nabla_frame(ring->m, ring->n, t).coords) {
    if (ru.order() != t) continue;
    if (b.contains(ExpPoint::of(ru))) {
      model.basis.push_back(ru);
      continue;
    }
    std::size_t pick = lambda.size();
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      const AlgIndet& u = lambda[i].leader();
      if (u.var == ru.var && u.theta.divides(ru.theta)) {
        pick = i;
        break;
      }
    }
    const DiffPoly& f = lambda[pick];
    const DerivativeIndex theta = ru.theta - f.leader().theta;
    const LinearSplit split = split_top_order(f.apply(theta), t);
    auto it = std::find_if(split.coeffs.begin(), split.coeffs.end(), [&](const auto& p) { return p.first == ru; });
    if (it == split.coeffs.end() || it->second.is_zero()) {
      throw PreconditionError("affine_fiber: separant of element " + std::to_string(pick) + " vanishes identically");
    }
    const DiffPoly sep = f.separant();
    if (!(it->second == sep)) throw Error("affine_fiber: leading coefficient differs from the separant");
    if (!sep.is_constant() && std::find(model.separants.begin(), model.separants.end(), sep) == model.separants.end()) {
      model.separants.push_back(sep);
    }
    AffineExpr expr = substitute_split(split, model, ring, ru);
    const DiffFraction factor = DiffFraction::make(DiffPoly::constant(ring, Rational(-1)), sep);
    model.entries.push_back({ru, expr.scaled(factor), pick, theta});
  }
  return model;
}

namespace {

bool fiber_consistent_with(const AutoreducedSet& lambda, const AffineFiberModel& model, const SaturatedIdeal& sat,
                           const PolyEmbedding& emb) {
  const DiffRingPtr& ring = lambda.ring();
  const unsigned t = model.level;
  for (const auto& f : lambda.elements()) {
    for (const auto& theta : thetas_of_order(ring->m, t - f.order())) {
      const LinearSplit split = split_top_order(f.apply(theta), t);
      const AffineExpr expr = substitute_split(split, model, ring, std::nullopt);
      std::vector<const DiffFraction*> parts{&expr.constant};
      for (const auto& [b, c] : expr.linear) parts.push_back(&c);
      for (const DiffFraction* p : parts) {
        if (p->is_zero()) continue;
        if (!ideal_contains(sat.basis, emb.clear(p->num).poly)) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool fiber_consistent(const AutoreducedSet& lambda, const AffineFiberModel& model) {
  const ProlongedIdeal lower = prolonged_generators(lambda, model.level - 1);
  return fiber_consistent_with(lambda, model, saturate(lower), *lower.embedding);
}

DVarietyData extract_dvariety(const AutoreducedSet& lambda) {
  if (lambda.size() == 0) throw PreconditionError("extract_dvariety: empty set");
  const DiffRingPtr& ring = lambda.ring();
  DVarietyData d;
  d.bound = prolongation_bound(lambda);
  const unsigned ell = d.bound.ell;
  const InitialSetRep b = leaders_to_E(lambda);
  const std::size_t b_ell = count_Bt(b, ell);
  const std::size_t b_next = count_Bt(b, ell + 1);

  d.V = prolong_ideal(lambda, ell);
  d.V_saturated = saturate(d.V);
  if (d.V_saturated.dimension != static_cast<int>(b_ell)) {
    throw PreconditionError("non-characteristic input: saturated level-" + std::to_string(ell) + " ideal has dimension " +
                            std::to_string(d.V_saturated.dimension) + " but |B_" + std::to_string(ell) +
                            "| = " + std::to_string(b_ell));
  }
  d.S = affine_fiber(lambda, ell + 1);
  d.r = b_next - b_ell;
  if (d.S.basis.size() != d.r) {
    throw PreconditionError("non-characteristic input: fiber model has " + std::to_string(d.S.basis.size()) +
                            " free coordinates but |B_" + std::to_string(ell + 1) + "| - |B_" + std::to_string(ell) +
                            "| = " + std::to_string(d.r));
  }
  if (!fiber_consistent_with(lambda, d.S, d.V_saturated, *d.V.embedding)) {
    throw PreconditionError("non-characteristic input: prolonged relations disagree with the fiber model");
  }
  d.section.assign(ring->m, {});
  for (std::size_t k = 0; k < ring->m; ++k) {
    for (const auto& w : d.V.frame.coords) {
      AlgIndet dw = w;
      ++dw.theta.e[k];
      if (dw.order() <= ell) {
        d.section[k].push_back(AffineExpr::constant_of(DiffFraction::of(DiffPoly::indet(ring, dw))));
      } else if (const FiberEntry* e = d.S.find(dw)) {
        d.section[k].push_back(e->value);
      } else {
        d.section[k].push_back(AffineExpr::coordinate(ring, dw));
      }
    }
  }
  return d;
}

}  // namespace deltak
