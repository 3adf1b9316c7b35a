#include "deltak/initial_sets.hpp"

#include <algorithm>
#include <sstream>

#include "deltak/errors.hpp"

namespace deltak {

unsigned ExpPoint::norm() const {
  unsigned s = 0;
  for (auto x : r) s += x;
  return s;
}

bool ExpPoint::leq(const ExpPoint& other) const {
  if (var != other.var || r.size() != other.r.size()) return false;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] > other.r[i]) return false;
  }
  return true;
}

std::string ExpPoint::to_string() const {
  std::ostringstream out;
  out << '(';
  for (auto x : r) out << x << ',';
  out << (var + 1) << ')';
  return out.str();
}

std::strong_ordering ExpPoint::operator<=>(const ExpPoint& other) const {
  if (auto c = norm() <=> other.norm(); c != 0) return c;
  if (auto c = var <=> other.var; c != 0) return c;
  return r <=> other.r;
}

InitialSetRep::InitialSetRep(std::size_t m, std::size_t n, std::vector<ExpPoint> e) : m_(m), n_(n), e_(std::move(e)) {
  for (const auto& p : e_) {
    if (p.r.size() != m_ || p.var >= n_) throw SignatureMismatch("InitialSetRep: point " + p.to_string() + " outside (m, n)");
  }
  std::sort(e_.begin(), e_.end());
  e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
}

bool InitialSetRep::contains(const ExpPoint& p) const {
  if (p.r.size() != m_ || p.var >= n_) throw SignatureMismatch("b_membership: point outside (m, n)");
  return std::none_of(e_.begin(), e_.end(), [&](const ExpPoint& e) { return e.leq(p); });
}

InitialSetRep leaders_to_E(const AutoreducedSet& lambda) {
  if (lambda.size() == 0) throw PreconditionError("leaders_to_E: empty set");
  const auto& ring = lambda.ring();
  std::vector<ExpPoint> e;
  for (const auto& f : lambda.elements()) e.push_back(ExpPoint::of(f.leader()));
  return InitialSetRep(ring->m, ring->n, std::move(e));
}

bool b_membership(const InitialSetRep& b, const ExpPoint& p) { return b.contains(p); }

namespace {

/// Calls fn on every exponent vector of length m with sum exactly t.
template <class Fn>
void for_each_composition(std::size_t m, unsigned t, Fn&& fn) {
  std::vector<std::uint32_t> r(m, 0);
  auto rec = [&](auto& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == m) {
      r[i] = left;
      fn(r);
      return;
    }
    for (unsigned x = 0; x <= left; ++x) {
      r[i] = x;
      self(self, i + 1, left - x);
    }
  };
  rec(rec, 0, t);
}

}  // namespace

std::vector<ExpPoint> b_points_of_order(const InitialSetRep& b, unsigned t) {
  std::vector<ExpPoint> out;
  for (std::size_t j = 0; j < b.n(); ++j) {
    for_each_composition(b.m(), t, [&](const std::vector<std::uint32_t>& r) {
      ExpPoint p{r, j};
      if (b.contains(p)) out.push_back(std::move(p));
    });
  }
  std::sort(out.begin(), out.end(), [](const ExpPoint& x, const ExpPoint& y) { return x.indet() < y.indet(); });
  return out;
}

std::size_t count_Bt(const InitialSetRep& b, unsigned t) {
  std::size_t total = 0;
  for (unsigned o = 0; o <= t; ++o) {
    for (std::size_t j = 0; j < b.n(); ++j) {
      for_each_composition(b.m(), o, [&](const std::vector<std::uint32_t>& r) {
        if (b.contains(ExpPoint{r, j})) ++total;
      });
    }
  }
  return total;
}

bool removal_keeps_initial(const InitialSetRep& b, const ExpPoint& p) {
  if (!b.contains(p)) return false;
  for (std::size_t k = 0; k < b.m(); ++k) {
    ExpPoint q = p;
    ++q.r[k];
    if (b.contains(q)) return false;
  }
  return true;
}

std::vector<ExpPoint> removable_points(const InitialSetRep& b) {
  std::vector<ExpPoint> out;
  for (std::size_t j = 0; j < b.n(); ++j) {
    std::vector<std::uint32_t> bound(b.m(), 0);
    bool any = false;
    for (const auto& e : b.leaders()) {
      if (e.var != j) continue;
      any = true;
      for (std::size_t i = 0; i < b.m(); ++i) bound[i] = std::max(bound[i], e.r[i]);
    }
    if (!any) continue;
    if (std::any_of(bound.begin(), bound.end(), [](std::uint32_t x) { return x == 0; })) continue;
    // box 0 <= r_i <= M_i - 1
    std::vector<std::uint32_t> r(b.m(), 0);
    while (true) {
      ExpPoint p{r, j};
      if (removal_keeps_initial(b, p)) out.push_back(p);
      std::size_t pos = 0;
      while (pos < r.size() && ++r[pos] == bound[pos]) {
        r[pos] = 0;
        ++pos;
      }
      if (pos == r.size()) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DimensionFunction dimension_function(const InitialSetRep& b, unsigned max_t) {
  // Inclusion-exclusion over the generators shows the count is polynomial
  // from the degree of the lcm of each E_j onward.
  unsigned onset = 0;
  for (std::size_t j = 0; j < b.n(); ++j) {
    std::vector<std::uint32_t> l(b.m(), 0);
    for (const auto& e : b.leaders()) {
      if (e.var != j) continue;
      for (std::size_t i = 0; i < b.m(); ++i) l[i] = std::max(l[i], e.r[i]);
    }
    unsigned deg = 0;
    for (auto x : l) deg += x;
    onset = std::max(onset, deg);
  }
  DimensionFunction df;
  df.onset = onset;
  const unsigned top = std::max<unsigned>(max_t, onset + static_cast<unsigned>(b.m()));
  std::vector<std::size_t> all;
  for (unsigned t = 0; t <= top; ++t) all.push_back(count_Bt(b, t));
  std::vector<Rational> xs, ys;
  for (unsigned t = onset; t <= onset + b.m(); ++t) {
    xs.emplace_back(t);
    ys.emplace_back(static_cast<unsigned long>(all[t]));
  }
  df.eventual_polynomial = interpolate(xs, ys);
  df.values.assign(all.begin(), all.begin() + max_t + 1);
  return df;
}

ProlongationBound prolongation_bound(const InitialSetRep& b, unsigned max_order) {
  ProlongationBound pb;
  pb.ell1 = max_order;
  pb.removable = removable_points(b);
  for (const auto& p : pb.removable) pb.ell2 = std::max(pb.ell2, p.norm());
  pb.ell = std::max(pb.ell1, pb.ell2);
  return pb;
}

ProlongationBound prolongation_bound(const AutoreducedSet& lambda) {
  unsigned ord = 0;
  for (const auto& f : lambda.elements()) ord = std::max(ord, f.order());
  return prolongation_bound(leaders_to_E(lambda), ord);
}

}  // namespace deltak
