#include "deltak/diff_ring.hpp"

#include <algorithm>
#include <sstream>

#include "deltak/errors.hpp"

namespace deltak {

// --- DerivativeIndex / AlgIndet ---------------------------------------------

unsigned DerivativeIndex::order() const {
  unsigned s = 0;
  for (auto x : e) s += x;
  return s;
}

bool DerivativeIndex::divides(const DerivativeIndex& other) const {
  if (e.size() != other.e.size()) return false;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] > other.e[i]) return false;
  }
  return true;
}

DerivativeIndex DerivativeIndex::operator-(const DerivativeIndex& other) const {
  if (!other.divides(*this)) throw PreconditionError("DerivativeIndex: subtraction underflow");
  DerivativeIndex r{e};
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= other.e[i];
  return r;
}

DerivativeIndex DerivativeIndex::operator+(const DerivativeIndex& other) const {
  if (e.size() != other.e.size()) throw SignatureMismatch("DerivativeIndex: length mismatch");
  DerivativeIndex r{e};
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += other.e[i];
  return r;
}

RankKey AlgIndet::key() const {
  RankKey k;
  k.reserve(theta.e.size() + 2);
  k.push_back(order());
  k.push_back(var);
  for (std::size_t i = theta.e.size(); i-- > 0;) k.push_back(theta.e[i]);
  return k;
}

std::string AlgIndet::to_string() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < theta.e.size(); ++k) {
    if (theta.e[k] == 0) continue;
    out << 'd' << (k + 1);
    if (theta.e[k] > 1) out << '^' << theta.e[k];
    out << '*';
  }
  out << 'u' << (var + 1);
  return out.str();
}

std::strong_ordering AlgIndet::operator<=>(const AlgIndet& other) const {
  if (theta.e.size() != other.theta.e.size()) throw SignatureMismatch("rank_compare: different numbers of derivations");
  return key() <=> other.key();
}

std::strong_ordering rank_compare(const AlgIndet& v, const AlgIndet& w) { return v <=> w; }

// --- CoefficientField --------------------------------------------------------

CoefficientField::CoefficientField(Signature params, std::vector<std::vector<RatFunc>> action)
    : params_(std::move(params)), action_(std::move(action)) {
  for (const auto& row : action_) {
    if (row.size() != params_.size()) throw PreconditionError("CoefficientField: action row has wrong length");
    for (const auto& a : row) {
      if (!(a.signature() == params_)) throw SignatureMismatch("CoefficientField: action outside the field");
    }
  }
}

CoefficientField CoefficientField::partial_derivatives(std::vector<std::string> names, std::size_t m) {
  Signature sig(std::move(names));
  std::vector<std::vector<RatFunc>> action(m, std::vector<RatFunc>(sig.size(), RatFunc::zero(sig)));
  for (std::size_t k = 0; k < m && k < sig.size(); ++k) action[k][k] = RatFunc::constant(sig, 1);
  return CoefficientField(sig, std::move(action));
}

CoefficientField CoefficientField::constants(std::vector<std::string> names, std::size_t m) {
  Signature sig(std::move(names));
  std::vector<std::vector<RatFunc>> action(m, std::vector<RatFunc>(sig.size(), RatFunc::zero(sig)));
  return CoefficientField(sig, std::move(action));
}

RatFunc CoefficientField::action(std::size_t k, std::size_t i) const {
  if (k < action_.size() && i < action_[k].size()) return action_[k][i];
  return zero();
}

bool CoefficientField::has_zero_action() const {
  for (const auto& row : action_) {
    for (const auto& a : row) {
      if (!a.is_zero()) return false;
    }
  }
  return true;
}

RatFunc CoefficientField::derive(const RatFunc& c, std::size_t k) const {
  RatFunc r = zero();
  if (c.is_constant()) return r;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const RatFunc a = action(k, i);
    if (a.is_zero()) continue;
    r += c.derivative(i) * a;
  }
  return r;
}

bool CoefficientField::operator==(const CoefficientField& o) const {
  if (!(params_ == o.params_)) return false;
  const std::size_t rows = std::max(action_.size(), o.action_.size());
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (!(action(k, i) == o.action(k, i))) return false;
    }
  }
  return true;
}

DiffRingPtr make_diff_ring(std::size_t m, std::size_t n, CoefficientField field) {
  if (m == 0 || n == 0) throw PreconditionError("make_diff_ring: m and n must be positive");
  return std::make_shared<const DiffRing>(DiffRing{m, n, std::move(field)});
}

// --- monomials ----------------------------------------------------------------

std::strong_ordering monomial_compare(const DiffMonomial& a, const DiffMonomial& b) {
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (auto c = a[i].first <=> b[i].first; c != 0) return c;
    if (auto c = a[i].second <=> b[i].second; c != 0) return c;
  }
  return a.size() <=> b.size();
}

namespace {

DiffMonomial mono_mul(const DiffMonomial& a, const DiffMonomial& b) {
  DiffMonomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first > a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

/// Removes one power of the factor at position pos.
DiffMonomial mono_drop_one(const DiffMonomial& a, std::size_t pos) {
  DiffMonomial out = a;
  if (--out[pos].second == 0) out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
  return out;
}

bool same_ring(const DiffRingPtr& a, const DiffRingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->m == b->m && a->n == b->n && a->field == b->field;
}

}  // namespace

std::strong_ordering PolyRank::operator<=>(const PolyRank& o) const {
  if (auto c = leader <=> o.leader; c != 0) return c;
  return degree <=> o.degree;
}

// --- DiffPoly -----------------------------------------------------------------

DiffPoly DiffPoly::constant(DiffRingPtr ring, const RatFunc& c) {
  DiffPoly p(std::move(ring));
  if (!(c.signature() == p.ring_->field.params())) throw SignatureMismatch("DiffPoly: coefficient outside the field");
  if (!c.is_zero()) p.terms_.emplace(DiffMonomial{}, c);
  return p;
}

DiffPoly DiffPoly::constant(DiffRingPtr ring, const Rational& c) {
  const RatFunc rc = ring->field.constant(c);
  return constant(std::move(ring), rc);
}

DiffPoly DiffPoly::indet(DiffRingPtr ring, const AlgIndet& v, std::uint32_t power) {
  if (v.theta.e.size() != ring->m || v.var >= ring->n) {
    throw SignatureMismatch("DiffPoly: indeterminate " + v.to_string() + " outside the ring");
  }
  DiffPoly p(ring);
  if (power == 0) {
    p.terms_.emplace(DiffMonomial{}, ring->field.one());
  } else {
    p.terms_.emplace(DiffMonomial{{v, power}}, ring->field.one());
  }
  return p;
}

DiffPoly DiffPoly::indet(DiffRingPtr ring, std::vector<std::uint32_t> theta, std::size_t var) {
  return indet(std::move(ring), AlgIndet{DerivativeIndex{std::move(theta)}, var});
}

DiffPoly DiffPoly::from_terms(DiffRingPtr ring, TermMap terms) {
  DiffPoly p(std::move(ring));
  for (auto& [m, c] : terms) {
    if (!c.is_zero()) p.terms_.emplace(m, std::move(c));
  }
  return p;
}

bool DiffPoly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

RatFunc DiffPoly::constant_term() const {
  auto it = terms_.find(DiffMonomial{});
  return it == terms_.end() ? ring_->field.zero() : it->second;
}

std::vector<AlgIndet> DiffPoly::indets() const {
  std::vector<AlgIndet> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

unsigned DiffPoly::degree_in(const AlgIndet& v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& [w, e] : m) {
      if (w == v) d = std::max<unsigned>(d, e);
    }
  }
  return d;
}

DiffPoly DiffPoly::coefficient(const AlgIndet& v, unsigned d) const {
  DiffPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    DiffMonomial rest;
    unsigned e = 0;
    for (const auto& f : m) {
      if (f.first == v) {
        e = f.second;
      } else {
        rest.push_back(f);
      }
    }
    if (e == d) r.add_term(rest, c);
  }
  return r;
}

unsigned DiffPoly::order() const {
  unsigned o = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m) o = std::max(o, v.order());
  }
  return o;
}

const AlgIndet& DiffPoly::leader() const {
  if (is_constant()) throw PreconditionError("leader of an element of the coefficient field");
  // lex order with rank-ordered variables: the leading term starts with the
  // highest-ranked indeterminate
  return terms_.begin()->first.front().first;
}

unsigned DiffPoly::leading_degree() const { return is_constant() ? 0 : degree_in(leader()); }

PolyRank DiffPoly::rank() const { return {leader(), degree_in(leader())}; }

DiffPoly DiffPoly::separant() const { return partial(leader()); }

DiffPoly DiffPoly::initial() const {
  const AlgIndet& u = leader();
  return coefficient(u, degree_in(u));
}

void DiffPoly::check_ring(const DiffPoly& o, const char* op) const {
  if (!same_ring(ring_, o.ring_)) throw SignatureMismatch(std::string("DiffPoly ") + op + ": ring mismatch");
}

void DiffPoly::add_term(const DiffMonomial& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  check_ring(o, "+");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  check_ring(o, "-");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  a.check_ring(b, "*");
  DiffPoly r(a.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(mono_mul(ma, mb), ca * cb);
  }
  return r;
}

DiffPoly operator*(const RatFunc& c, const DiffPoly& a) {
  DiffPoly r(a.ring_);
  if (c.is_zero()) return r;
  for (const auto& [m, x] : a.terms_) r.add_term(m, c * x);
  return r;
}

DiffPoly DiffPoly::pow(unsigned e) const {
  DiffPoly r = constant(ring_, Rational(1));
  DiffPoly base = *this;
  while (e > 0) {
    if (e & 1U) r = r * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return r;
}

DiffPoly DiffPoly::partial(const AlgIndet& v) const {
  DiffPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].first == v) {
        r.add_term(mono_drop_one(m, i), c * ring_->field.constant(Rational(m[i].second)));
      }
    }
  }
  return r;
}

DiffPoly DiffPoly::derive(std::size_t k) const {
  if (k >= ring_->m) {
    throw PreconditionError("derivation index " + std::to_string(k + 1) + " exceeds m=" + std::to_string(ring_->m));
  }
  DiffPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    r.add_term(m, ring_->field.derive(c, k));
    for (std::size_t i = 0; i < m.size(); ++i) {
      AlgIndet dv = m[i].first;
      ++dv.theta.e[k];
      const RatFunc coeff = m[i].second == 1 ? c : c * ring_->field.constant(Rational(m[i].second));
      r.add_term(mono_mul(mono_drop_one(m, i), DiffMonomial{{dv, 1}}), coeff);
    }
  }
  return r;
}

DiffPoly DiffPoly::apply(const DerivativeIndex& theta) const {
  if (theta.e.size() != ring_->m) throw SignatureMismatch("apply: derivative index has wrong length");
  DiffPoly r = *this;
  for (std::size_t k = 0; k < theta.e.size(); ++k) {
    for (std::uint32_t i = 0; i < theta.e[k]; ++i) r = r.derive(k);
  }
  return r;
}

DiffPoly DiffPoly::substitute(const std::map<AlgIndet, DiffPoly>& values) const {
  DiffPoly r(ring_);
  for (const auto& [m, c] : terms_) {
    DiffPoly term = constant(ring_, c);
    DiffMonomial kept;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) {
        kept.emplace_back(v, e);
      } else {
        term = term * it->second.pow(e);
      }
    }
    DiffPoly mono(ring_);
    mono.terms_.emplace(kept, ring_->field.one());
    r += term * mono;
  }
  return r;
}

bool DiffPoly::operator==(const DiffPoly& o) const {
  if (!same_ring(ring_, o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [m, c] : terms_) {
    if (!(m == it->first) || !(c == it->second)) return false;
    ++it;
  }
  return true;
}

std::string DiffPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono;
    for (const auto& [v, e] : m) {
      if (!mono.empty()) mono += '*';
      if (e == 1) {
        mono += v.to_string();
      } else if (v.order() == 0) {
        mono += v.to_string() + "^" + std::to_string(e);
      } else {
        mono += "(" + v.to_string() + ")^" + std::to_string(e);
      }
    }
    if (c.is_constant()) {
      Rational q = c.constant_value();
      const bool negative = sgn(q) < 0;
      if (first) {
        if (negative) out << '-';
      } else {
        out << (negative ? " - " : " + ");
      }
      if (negative) q = -q;
      if (mono.empty()) {
        out << deltak::to_string(q);
      } else {
        if (q != 1) out << deltak::to_string(q) << '*';
        out << mono;
      }
    } else {
      if (!first) out << " + ";
      out << '(' << c.to_string() << ')';
      if (!mono.empty()) out << '*' << mono;
    }
    first = false;
  }
  return out.str();
}

std::strong_ordering poly_rank_compare(const DiffPoly& f, const DiffPoly& g) {
  if (f.is_constant() || g.is_constant()) {
    // elements of the field rank below every nonconstant polynomial
    if (f.is_constant() && g.is_constant()) return std::strong_ordering::equal;
    return f.is_constant() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return f.rank() <=> g.rank();
}

// --- autoreduced sets ---------------------------------------------------------

std::string AutoreducedViolation::describe() const {
  std::ostringstream out;
  switch (reason) {
    case Reason::constant_element:
      out << "element " << reduced_against << " lies in the coefficient field";
      break;
    case Reason::proper_derivative:
      out << "element " << offender << " contains " << indet.to_string() << ", a proper derivative of the leader of element "
          << reduced_against;
      break;
    case Reason::leader_degree:
      out << "element " << offender << " contains the leader " << indet.to_string() << " of element " << reduced_against
          << " with degree at least its leading degree";
      break;
  }
  return out.str();
}

AutoreducedCheck is_autoreduced(const std::vector<DiffPoly>& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i].is_constant()) {
      return {false, AutoreducedViolation{i, i, AutoreducedViolation::Reason::constant_element, AlgIndet{}}};
    }
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    const AlgIndet& u = set[i].leader();
    const unsigned d = set[i].leading_degree();
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (i == j) continue;
      for (const auto& v : set[j].indets()) {
        if (v.var == u.var && u.theta.divides(v.theta) && !(v == u)) {
          return {false, AutoreducedViolation{i, j, AutoreducedViolation::Reason::proper_derivative, v}};
        }
      }
      if (set[j].degree_in(u) >= d) {
        return {false, AutoreducedViolation{i, j, AutoreducedViolation::Reason::leader_degree, u}};
      }
    }
  }
  return {};
}

AutoreducedSet::AutoreducedSet(std::vector<DiffPoly> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    if (!same_ring(elements_[0].ring(), elements_[i].ring())) throw SignatureMismatch("AutoreducedSet: ring mismatch");
  }
  const auto check = is_autoreduced(elements_);
  if (!check.ok) throw PreconditionError("not autoreduced: " + check.violation->describe());
  std::stable_sort(elements_.begin(), elements_.end(),
                   [](const DiffPoly& a, const DiffPoly& b) { return a.rank() < b.rank(); });
}

const DiffRingPtr& AutoreducedSet::ring() const {
  if (elements_.empty()) throw PreconditionError("AutoreducedSet: empty set has no ring");
  return elements_.front().ring();
}

std::strong_ordering set_rank_compare(const AutoreducedSet& a, const AutoreducedSet& b) {
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t j = 0; j < len; ++j) {
    if (auto c = a[j].rank() <=> b[j].rank(); c != 0) return c;
  }
  // the longer set extends a rank-equal prefix and is therefore lower
  return b.size() <=> a.size();
}

// --- Ritt reduction -----------------------------------------------------------

RittResult ritt_reduce(const DiffPoly& g, const AutoreducedSet& a) {
  RittResult res{g, {std::vector<unsigned>(a.size(), 0), std::vector<unsigned>(a.size(), 0), {}}};
  DiffPoly& r = res.remainder;
  std::map<std::pair<std::size_t, std::vector<std::uint32_t>>, DiffPoly> derived;

  while (true) {
    std::optional<std::size_t> pick;
    AlgIndet v;
    bool proper = false;
    for (const auto& cand : r.indets()) {
      for (std::size_t i = 0; i < a.size() && !pick; ++i) {
        const AlgIndet& u = a[i].leader();
        if (u.var != cand.var || !u.theta.divides(cand.theta)) continue;
        if (!(u == cand)) {
          pick = i;
          proper = true;
        } else if (r.degree_in(cand) >= a[i].leading_degree()) {
          pick = i;
          proper = false;
        }
      }
      if (pick) {
        v = cand;
        break;
      }
    }
    if (!pick) break;

    const DiffPoly& f = a[*pick];
    const unsigned e = r.degree_in(v);
    const DiffPoly c = r.coefficient(v, e);
    DerivativeIndex theta{std::vector<std::uint32_t>(f.ring()->m, 0)};
    DiffPoly h, reducer, q;
    if (proper) {
      theta = v.theta - f.leader().theta;
      auto key = std::make_pair(*pick, theta.e);
      auto it = derived.find(key);
      if (it == derived.end()) it = derived.emplace(key, f.apply(theta)).first;
      reducer = it->second;
      h = f.separant();
      q = c * DiffPoly::indet(f.ring(), v, e - 1);
      ++res.certificate.separant_exponents[*pick];
    } else {
      reducer = f;
      h = f.initial();
      q = c * DiffPoly::indet(f.ring(), v, e - f.leading_degree());
      ++res.certificate.initial_exponents[*pick];
    }
    r = h * r - q * reducer;
    for (auto& step : res.certificate.steps) step.q = h * step.q;
    res.certificate.steps.push_back({q, theta, *pick});
  }
  return res;
}

bool verify_certificate(const DiffPoly& g, const AutoreducedSet& a, const RittResult& r) {
  const auto& cert = r.certificate;
  if (cert.separant_exponents.size() != a.size() || cert.initial_exponents.size() != a.size()) return false;
  DiffPoly lhs = g;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (cert.separant_exponents[i] > 0) lhs = a[i].separant().pow(cert.separant_exponents[i]) * lhs;
    if (cert.initial_exponents[i] > 0) lhs = a[i].initial().pow(cert.initial_exponents[i]) * lhs;
  }
  DiffPoly rhs = r.remainder;
  for (const auto& step : cert.steps) {
    if (step.element >= a.size()) return false;
    rhs += step.q * a[step.element].apply(step.theta);
  }
  return lhs == rhs;
}

bool is_partially_reduced(const DiffPoly& p, const AutoreducedSet& a) {
  for (const auto& f : a.elements()) {
    const AlgIndet& u = f.leader();
    for (const auto& v : p.indets()) {
      if (v.var == u.var && u.theta.divides(v.theta) && !(v == u)) return false;
    }
    if (p.degree_in(u) >= f.leading_degree()) return false;
  }
  return true;
}

}  // namespace deltak
