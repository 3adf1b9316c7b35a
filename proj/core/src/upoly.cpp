#include "deltak/upoly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "deltak/errors.hpp"

namespace deltak {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && deltak::is_zero(c_.back())) c_.pop_back();
}

UPoly UPoly::operator-() const {
  UPoly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  std::vector<Rational> c(a.c_);
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return Rational(1 / leading()) * *this;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::pow(unsigned e) const {
  UPoly r = constant(1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Rational UPoly::evaluate(const Rational& x) const {
  Rational v = 0;
  for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
  return v;
}

UPoly UPoly::primitive_integer() const {
  if (is_zero()) return *this;
  Integer l = 1;
  for (const auto& c : c_) l = lcm(l, c.get_den());
  Integer g = 0;
  for (const auto& c : c_) g = gcd(g, Integer(c.get_num() * (l / c.get_den())));
  Rational scale(l, g);
  scale.canonicalize();
  if (sgn(leading()) < 0) scale = -scale;
  return scale * *this;
}

std::string UPoly::to_string(const std::string& var) const {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    terms.push_back({Monomial{static_cast<std::uint32_t>(i)}, c_[i]});
  }
  return MultiPoly::from_terms(Signature({var}), std::move(terms)).to_string();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw PreconditionError("UPoly division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> q(a.degree() - db + 1);
  const Rational inv = 1 / b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (deltak::is_zero(r[i])) continue;
    const Rational c = r[i] * inv;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b.coeffs()[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly f = a, g = b;
  while (!g.is_zero()) {
    UPoly r = divmod(f, g).second;
    f = std::move(g);
    g = std::move(r);
  }
  return f.monic();
}

Rational resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree(), n = b.degree();
  if (n == 0) {
    Rational r = 1;
    for (int i = 0; i < m; ++i) r *= b.leading();
    return r;
  }
  if (m < n) {
    Rational r = resultant(b, a);
    return (m * n) % 2 ? Rational(-r) : r;
  }
  UPoly rem = divmod(a, b).second;
  if (rem.is_zero()) return 0;
  const int k = rem.degree();
  Rational factor = 1;
  for (int i = 0; i < m - k; ++i) factor *= b.leading();
  if ((m * n) % 2) factor = -factor;
  return factor * resultant(b, rem);
}

std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& a) {
  std::vector<std::pair<UPoly, unsigned>> out;
  if (a.degree() <= 0) return out;
  const UPoly f = a.monic();
  const UPoly fp = f.derivative();
  UPoly g = gcd(f, fp);
  UPoly b = divmod(f, g).first;
  UPoly c = divmod(fp, g).first;
  UPoly d = c - b.derivative();
  for (unsigned i = 1; b.degree() > 0; ++i) {
    UPoly h = gcd(b, d);
    if (h.degree() > 0) out.emplace_back(h, i);
    b = divmod(b, h).first;
    c = divmod(d, h).first;
    d = c - b.derivative();
  }
  return out;
}

namespace {

std::vector<Rational> rational_roots_squarefree(const UPoly& f) {
  std::vector<Rational> roots;
  UPoly p = f.primitive_integer();
  if (p.degree() <= 0) return roots;
  if (deltak::is_zero(p.coeff(0))) {
    roots.emplace_back(0);
    p = divmod(p, UPoly::x()).first;
    if (p.degree() <= 0) return roots;
  }
  const Integer a0 = p.coeff(0).get_num();
  const Integer an = p.leading().get_num();
  if (p.degree() == 1) {
    Rational r(-a0, an);
    r.canonicalize();
    roots.push_back(r);
    return roots;
  }
  const auto num_divs = divisors(a0);
  const auto den_divs = divisors(an);
  std::map<Rational, bool> seen;
  for (const auto& d : num_divs) {
    for (const auto& e : den_divs) {
      for (int sign : {1, -1}) {
        Rational cand(d * sign, e);
        cand.canonicalize();
        if (seen.count(cand)) continue;
        seen[cand] = true;
        if (deltak::is_zero(p.evaluate(cand))) roots.push_back(cand);
      }
    }
  }
  return roots;
}

bool all_integer(const UPoly& g) {
  return std::all_of(g.coeffs().begin(), g.coeffs().end(), [](const Rational& c) { return is_integer(c); });
}

/// A nontrivial factor of a primitive integer squarefree polynomial with no
/// rational roots, or nothing if it is irreducible.
std::optional<UPoly> kronecker_split(const UPoly& f) {
  const int n = f.degree();
  if (n < 4) return std::nullopt;  // no linear factor => irreducible up to degree 3
  // candidate evaluation points ranked by how few divisors f(a) has
  std::vector<std::pair<std::size_t, Rational>> ranked;
  for (int a = -12; a <= 12; ++a) {
    const Rational v = f.evaluate(a);
    ranked.emplace_back(divisors(v.get_num()).size(), Rational(a));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (int k = 2; k <= n / 2; ++k) {
    std::vector<Rational> xs;
    std::vector<std::vector<Integer>> options;
    for (int i = 0; i <= k; ++i) {
      xs.push_back(ranked[i].second);
      const Integer v = f.evaluate(xs.back()).get_num();
      std::vector<Integer> opts;
      for (const auto& d : divisors(v)) {
        opts.push_back(d);
        if (i > 0) opts.push_back(-d);  // g(x_0) > 0 fixes the sign of g
      }
      options.push_back(std::move(opts));
    }
    std::vector<std::size_t> idx(k + 1, 0);
    std::vector<Rational> ys(k + 1);
    while (true) {
      for (int i = 0; i <= k; ++i) ys[i] = options[i][idx[i]];
      UPoly g = interpolate(xs, ys);
      if (g.degree() == k && all_integer(g)) {
        auto [q, r] = divmod(f, g);
        if (r.is_zero()) return g;
      }
      int pos = 0;
      while (pos <= k && ++idx[pos] == options[pos].size()) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos > k) break;
    }
  }
  return std::nullopt;
}

void split_fully(const UPoly& f, std::vector<UPoly>& out) {
  if (f.degree() <= 0) return;
  auto g = kronecker_split(f.primitive_integer());
  if (!g) {
    out.push_back(f.monic());
    return;
  }
  split_fully(*g, out);
  split_fully(divmod(f, *g).first, out);
}

bool upoly_less(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  }
  return false;
}

}  // namespace

std::vector<std::pair<Rational, unsigned>> rational_roots(const UPoly& a) {
  std::vector<std::pair<Rational, unsigned>> out;
  for (const auto& [f, mult] : squarefree_decomposition(a)) {
    for (const auto& r : rational_roots_squarefree(f)) out.emplace_back(r, mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

UFactorization factor(const UPoly& a) {
  if (a.is_zero()) throw PreconditionError("factor of the zero polynomial");
  UFactorization result{a.leading(), {}};
  for (const auto& [f, mult] : squarefree_decomposition(a)) {
    UPoly rest = f;
    for (const auto& r : rational_roots_squarefree(f)) {
      result.factors.emplace_back(UPoly::linear(r), mult);
      rest = divmod(rest, UPoly::linear(r)).first;
    }
    std::vector<UPoly> pieces;
    split_fully(rest, pieces);
    for (auto& p : pieces) result.factors.emplace_back(std::move(p), mult);
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& x, const auto& y) { return upoly_less(x.first, y.first); });
  return result;
}

bool is_irreducible(const UPoly& a) {
  if (a.degree() <= 0) return false;
  const auto f = factor(a);
  return f.factors.size() == 1 && f.factors.front().second == 1;
}

UPoly interpolate(std::span<const Rational> xs, std::span<const Rational> ys) {
  UPoly result;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    UPoly basis = UPoly::constant(1);
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UPoly::linear(xs[j]);
      denom *= xs[i] - xs[j];
    }
    result = result + Rational(ys[i] / denom) * basis;
  }
  return result;
}

UPoly to_upoly(const MultiPoly& p, std::size_t var) {
  std::vector<Rational> c(p.degree_in(var) + 1);
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (i != var && t.exponents[i] != 0) {
        throw PreconditionError("to_upoly: polynomial involves more than one variable");
      }
    }
    c[t.exponents[var]] += t.coeff;
  }
  return UPoly(std::move(c));
}

MultiPoly from_upoly(const UPoly& u, const Signature& sig, std::size_t var, TermOrder order) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < u.coeffs().size(); ++i) {
    Monomial m(sig.size(), 0);
    m[var] = static_cast<std::uint32_t>(i);
    terms.push_back({std::move(m), u.coeffs()[i]});
  }
  return MultiPoly::from_terms(sig, std::move(terms), order);
}

}  // namespace deltak
