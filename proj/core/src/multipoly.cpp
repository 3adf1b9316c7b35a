#include "deltak/multipoly.hpp"

#include <algorithm>
#include <sstream>

#include "deltak/errors.hpp"

namespace deltak {

unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
  Monomial out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Monomial operator-(const Monomial& a, const Monomial& b) {
  Monomial out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

namespace {

int compare_grevlex(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end) {
  unsigned da = 0, db = 0;
  for (std::size_t i = begin; i < end; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = end; i-- > begin;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case TermOrderKind::lex:
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case TermOrderKind::grevlex:
      return compare_grevlex(a, b, 0, a.size());
    case TermOrderKind::elimination: {
      const std::size_t k = std::min(block_, a.size());
      if (int c = compare_grevlex(a, b, 0, k); c != 0) return c;
      return compare_grevlex(a, b, k, a.size());
    }
  }
  return 0;
}

std::string TermOrder::name() const {
  switch (kind_) {
    case TermOrderKind::lex:
      return "lex";
    case TermOrderKind::grevlex:
      return "grevlex";
    case TermOrderKind::elimination:
      return "elim(" + std::to_string(block_) + ")";
  }
  return "?";
}

Signature::Signature() : names_(std::make_shared<const std::vector<std::string>>()) {}

Signature::Signature(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}

std::optional<std::size_t> Signature::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_->size(); ++i) {
    if ((*names_)[i] == name) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

MultiPoly MultiPoly::constant(Signature sig, const Rational& c, TermOrder order) {
  MultiPoly p(std::move(sig), order);
  if (!deltak::is_zero(c)) p.terms_.push_back({Monomial(p.nvars(), 0), c});
  return p;
}

MultiPoly MultiPoly::variable(Signature sig, std::size_t index, TermOrder order) {
  MultiPoly p(std::move(sig), order);
  Monomial m(p.nvars(), 0);
  m.at(index) = 1;
  p.terms_.push_back({std::move(m), Rational(1)});
  return p;
}

MultiPoly MultiPoly::monomial(Signature sig, Monomial exps, const Rational& c, TermOrder order) {
  MultiPoly p(std::move(sig), order);
  if (exps.size() != p.nvars()) throw SignatureMismatch("monomial length does not match signature");
  if (!deltak::is_zero(c)) p.terms_.push_back({std::move(exps), c});
  return p;
}

MultiPoly MultiPoly::from_terms(Signature sig, std::vector<Term> terms, TermOrder order) {
  MultiPoly p(std::move(sig), order);
  for (const auto& t : terms) {
    if (t.exponents.size() != p.nvars()) {
      throw SignatureMismatch("monomial length does not match signature");
    }
  }
  p.terms_ = std::move(terms);
  p.canonicalize();
  return p;
}

void MultiPoly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), [this](const Term& a, const Term& b) {
    return order_.compare(a.exponents, b.exponents) > 0;
  });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exponents == t.exponents) {
      merged.back().coeff += t.coeff;
    } else {
      if (!merged.empty() && deltak::is_zero(merged.back().coeff)) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && deltak::is_zero(merged.back().coeff)) merged.pop_back();
  terms_ = std::move(merged);
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.front().exponents) {
    if (e != 0) return false;
  }
  return true;
}

Rational MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw PreconditionError("constant_value of a non-constant polynomial");
  return terms_.front().coeff;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(deltak::total_degree(t.exponents)));
  return d;
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents[var]);
  return d;
}

std::vector<std::size_t> MultiPoly::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (involves(i)) out.push_back(i);
  }
  return out;
}

MultiPoly MultiPoly::with_order(TermOrder order) const {
  MultiPoly p(sig_, order);
  p.terms_ = terms_;
  if (!(order == order_)) p.canonicalize();
  return p;
}

void MultiPoly::check_compatible(const MultiPoly& other, const char* op) const {
  if (!(sig_ == other.sig_)) {
    throw SignatureMismatch(std::string(op) + ": variable signatures differ");
  }
  if (!(order_ == other.order_)) {
    throw SignatureMismatch(std::string(op) + ": term orders differ");
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p(*this);
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

void MultiPoly::add_scaled(const MultiPoly& other, const Monomial& m, const Rational& c) {
  check_compatible(other, "add");
  if (deltak::is_zero(c) || other.is_zero()) return;
  const bool shift = std::any_of(m.begin(), m.end(), [](auto e) { return e != 0; });
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  Monomial shifted;
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end()) {
      out.push_back(std::move(*a++));
      continue;
    }
    shifted = shift ? b->exponents + m : b->exponents;
    if (a == terms_.end()) {
      out.push_back({std::move(shifted), b->coeff * c});
      ++b;
      continue;
    }
    const int cmp = order_.compare(a->exponents, shifted);
    if (cmp > 0) {
      out.push_back(std::move(*a++));
    } else if (cmp < 0) {
      out.push_back({std::move(shifted), b->coeff * c});
      ++b;
    } else {
      Rational sum = a->coeff + b->coeff * c;
      if (!deltak::is_zero(sum)) out.push_back({std::move(a->exponents), std::move(sum)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  add_scaled(other, Monomial(nvars(), 0), Rational(1));
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  add_scaled(other, Monomial(nvars(), 0), Rational(-1));
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (deltak::is_zero(c)) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.coeff *= c;
  }
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& other) {
  *this = *this * other;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_compatible(b, "mul");
  MultiPoly p(a.sig_, a.order_);
  if (a.is_zero() || b.is_zero()) return p;
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].exponents, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].exponents, b.terms_[0].coeff);
  p.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) p.terms_.push_back({s.exponents + t.exponents, s.coeff * t.coeff});
  }
  p.canonicalize();
  return p;
}

MultiPoly MultiPoly::mul_term(const Monomial& m, const Rational& c) const {
  MultiPoly p(sig_, order_);
  if (deltak::is_zero(c)) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.exponents + m, t.coeff * c});
  return p;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(sig_, 1, order_);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::monic() const {
  if (is_zero()) return *this;
  MultiPoly p(*this);
  const Rational inv = 1 / leading_coefficient();
  return p *= inv;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponents[var] == 0) continue;
    Term d{t.exponents, t.coeff * t.exponents[var]};
    --d.exponents[var];
    out.push_back(std::move(d));
  }
  return from_terms(sig_, std::move(out), order_);
}

MultiPoly MultiPoly::substitute(std::size_t var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term s{t.exponents, t.coeff};
    if (s.exponents[var] > 0) {
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), s.exponents[var]);
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), s.exponents[var]);
      s.coeff *= pw;
      s.exponents[var] = 0;
    }
    out.push_back(std::move(s));
  }
  return from_terms(sig_, std::move(out), order_);
}

MultiPoly MultiPoly::substitute(std::size_t var, const MultiPoly& value) const {
  check_compatible(value, "substitute");
  const auto coeffs = coefficients_in(var);
  MultiPoly result(sig_, order_);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    result = result * value;
    result += coeffs[k];
  }
  return result;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw SignatureMismatch("evaluate: point dimension mismatch");
  Rational sum = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < nvars(); ++i) {
      for (unsigned e = 0; e < t.exponents[i]; ++e) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(degree_in(var) + 1);
  for (const auto& t : terms_) {
    Term s = t;
    const auto k = s.exponents[var];
    s.exponents[var] = 0;
    buckets[k].push_back(std::move(s));
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) {
    MultiPoly p(sig_, order_);
    p.terms_ = std::move(b);  // removing one variable keeps the relative order
    p.canonicalize();
    out.push_back(std::move(p));
  }
  return out;
}

MultiPoly MultiPoly::remap(const Signature& target, std::span<const std::size_t> index_map,
                           TermOrder order) const {
  if (index_map.size() != nvars()) throw SignatureMismatch("remap: index map size mismatch");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target.size(), 0);
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (index_map[i] >= target.size()) throw SignatureMismatch("remap: index out of range");
      m[index_map[i]] += t.exponents[i];
    }
    out.push_back({std::move(m), t.coeff});
  }
  return from_terms(target, std::move(out), order);
}

bool MultiPoly::operator==(const MultiPoly& other) const {
  return sig_ == other.sig_ && terms_.size() == other.terms_.size() &&
         (order_ == other.order_ ? terms_ == other.terms_
                                 : terms_ == other.with_order(order_).terms_);
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    c = abs(c);
    first = false;
    bool wrote = false;
    const bool unit = (c == 1);
    const bool is_const = deltak::total_degree(t.exponents) == 0;
    if (!unit || is_const) {
      os << deltak::to_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (wrote) os << "*";
      os << sig_.name(i);
      if (t.exponents[i] > 1) os << "^" << t.exponents[i];
      wrote = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::optional<MultiPoly> try_exact_div(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) return std::nullopt;
  if (!(a.signature() == b.signature()) || !(a.order() == b.order())) {
    throw SignatureMismatch("exact_div: variable signatures or orders differ");
  }
  MultiPoly q(a.signature(), a.order());
  MultiPoly r = a;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  std::vector<Term> qterms;
  while (!r.is_zero()) {
    const Term& lt = r.leading_term();
    if (!divides(lb, lt.exponents)) return std::nullopt;
    Monomial m = lt.exponents - lb;
    Rational c = lt.coeff / cb;
    r.add_scaled(b, m, -c);
    qterms.push_back({std::move(m), std::move(c)});
  }
  return MultiPoly::from_terms(a.signature(), std::move(qterms), a.order());
}

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw InexactDivision("exact_div: division by zero polynomial");
  auto q = try_exact_div(a, b);
  if (!q) throw InexactDivision("exact_div: (" + b.to_string() + ") does not divide (" + a.to_string() + ")");
  return *std::move(q);
}

MultiPoly poly_arith(const MultiPoly& a, const MultiPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return a + b;
    case ArithOp::sub:
      return a - b;
    case ArithOp::mul:
      return a * b;
    case ArithOp::exact_div:
      return exact_div(a, b);
  }
  return a;
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var, unsigned* steps) {
  if (b.is_zero()) throw PreconditionError("pseudo_remainder by zero");
  const unsigned db = b.degree_in(var);
  const auto bc = b.coefficients_in(var);
  const MultiPoly& lcb = bc.back();
  MultiPoly tail(b.signature(), b.order());
  for (unsigned k = 0; k < db; ++k) {
    Monomial m(b.nvars(), 0);
    m[var] = k;
    tail.add_scaled(bc[k], m, 1);
  }
  MultiPoly r = a;
  unsigned count = 0;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const unsigned dr = r.degree_in(var);
    auto rc = r.coefficients_in(var);
    // r = lcb * r - lc(r) * var^(dr-db) * b; the top power cancels exactly.
    MultiPoly rest(r.signature(), r.order());
    for (unsigned k = 0; k < dr; ++k) {
      Monomial m(r.nvars(), 0);
      m[var] = k;
      rest.add_scaled(rc[k], m, 1);
    }
    Monomial shift(r.nvars(), 0);
    shift[var] = dr - db;
    MultiPoly next = lcb * rest;
    next -= (rc.back() * tail).mul_term(shift, 1);
    r = std::move(next);
    ++count;
  }
  if (steps) *steps = count;
  return r;
}

namespace {

MultiPoly gcd_list(const std::vector<MultiPoly>& polys);

MultiPoly primitive_part_in(const MultiPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return exact_div(p, content_in(p, var));
}

std::optional<std::size_t> lowest_var(const MultiPoly& a, const MultiPoly& b) {
  for (std::size_t i = 0; i < a.nvars(); ++i) {
    if (a.involves(i) || b.involves(i)) return i;
  }
  return std::nullopt;
}

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto v = lowest_var(a, b);
  if (!v) return MultiPoly::constant(a.signature(), 1, a.order());
  if (!a.involves(*v)) return gcd_impl(a, content_in(b, *v));
  if (!b.involves(*v)) return gcd_impl(content_in(a, *v), b);

  const MultiPoly ca = content_in(a, *v);
  const MultiPoly cb = content_in(b, *v);
  const MultiPoly c = gcd_impl(ca, cb);
  MultiPoly f = exact_div(a, ca);
  MultiPoly g = exact_div(b, cb);
  if (f.degree_in(*v) < g.degree_in(*v)) std::swap(f, g);
  while (!g.is_zero() && g.involves(*v)) {
    MultiPoly r = pseudo_remainder(f, g, *v);
    f = std::move(g);
    g = primitive_part_in(r, *v);
  }
  // g == 0: f is the primitive gcd; otherwise g is a nonzero v-free
  // remainder and the primitive parts are coprime in v.
  MultiPoly h = g.is_zero() ? primitive_part_in(f, *v) : MultiPoly::constant(a.signature(), 1, a.order());
  return (c * h).monic();
}

MultiPoly gcd_list(const std::vector<MultiPoly>& polys) {
  MultiPoly g;
  bool first = true;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (first) {
      g = p.monic();
      first = false;
    } else {
      g = gcd_impl(g, p);
    }
    if (g.is_constant()) break;
  }
  return g;
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  return gcd_list(p.coefficients_in(var));
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (!(a.signature() == b.signature()) || !(a.order() == b.order())) {
    throw SignatureMismatch("gcd: variable signatures or orders differ");
  }
  return gcd_impl(a, b);
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  Monomial m(nvars, 0);
  auto rec = [&](auto& self, std::size_t i, unsigned left) -> void {
    if (i == nvars) {
      out.push_back(m);
      return;
    }
    for (unsigned x = 0; x <= left; ++x) {
      m[i] = x;
      self(self, i + 1, left - x);
    }
    m[i] = 0;
  };
  rec(rec, 0, d);
  const TermOrder order = TermOrder::grevlex();
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return order.compare(a, b) > 0; });
  return out;
}

}  // namespace deltak
