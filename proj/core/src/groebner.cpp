#include "deltak/groebner.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "deltak/errors.hpp"
#include "deltak/upoly.hpp"

namespace deltak {

bool GroebnerBasis::is_unit() const {
  return generators.size() == 1 && generators.front().is_constant() && !generators.front().is_zero();
}

namespace {

/// Index of the first generator whose leading monomial divides m.
std::optional<std::size_t> find_divisor(const std::vector<MultiPoly>& basis,
                                        const std::vector<bool>& active, const Monomial& m) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (active[i] && divides(basis[i].leading_monomial(), m)) return i;
  }
  return std::nullopt;
}

MultiPoly reduce_full(MultiPoly p, const std::vector<MultiPoly>& basis, const std::vector<bool>& active) {
  std::vector<Term> remainder;
  while (!p.is_zero()) {
    const Term lt = p.leading_term();
    if (auto d = find_divisor(basis, active, lt.exponents)) {
      const MultiPoly& g = basis[*d];
      p.add_scaled(g, lt.exponents - g.leading_monomial(), -lt.coeff / g.leading_coefficient());
    } else {
      remainder.push_back(lt);
      p.add_scaled(MultiPoly::monomial(p.signature(), lt.exponents, 1, p.order()),
                   Monomial(p.nvars(), 0), -lt.coeff);
    }
  }
  return MultiPoly::from_terms(p.signature(), std::move(remainder), p.order());
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  MultiPoly s = f.mul_term(l - f.leading_monomial(), 1 / f.leading_coefficient());
  s.add_scaled(g, l - g.leading_monomial(), -1 / g.leading_coefficient());
  return s;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

}  // namespace

GroebnerBasis buchberger(const Signature& sig, std::span<const MultiPoly> gens, TermOrder order) {
  std::vector<MultiPoly> basis;
  std::vector<bool> active;
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_set;

  auto add = [&](MultiPoly h) {
    const std::size_t k = basis.size();
    basis.push_back(h.monic());
    active.push_back(true);
    for (std::size_t i = 0; i < k; ++i) {
      if (!active[i]) continue;
      pending.push_back({i, k, lcm(basis[i].leading_monomial(), basis[k].leading_monomial())});
      pending_set.insert({i, k});
    }
  };

  for (const auto& g : gens) {
    if (!(g.signature() == sig)) throw SignatureMismatch("buchberger: generator signature mismatch");
    if (g.is_zero()) continue;
    MultiPoly h = reduce_full(g.with_order(order), basis, active);
    if (h.is_zero()) continue;
    if (h.is_constant()) {
      basis.assign(1, MultiPoly::constant(sig, 1, order));
      return {sig, order, basis, true};
    }
    add(std::move(h));
  }

  auto has_pending = [&](std::size_t a, std::size_t b) {
    return pending_set.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!pending.empty()) {
    // normal selection: smallest lcm first; ties by creation order
    auto best = pending.begin();
    for (auto it = pending.begin() + 1; it != pending.end(); ++it) {
      if (order.compare(it->lcm, best->lcm) < 0) best = it;
    }
    const Pair p = *best;
    pending.erase(best);
    pending_set.erase({p.i, p.j});
    if (!active[p.i] || !active[p.j]) continue;
    if (coprime(basis[p.i].leading_monomial(), basis[p.j].leading_monomial())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == p.i || k == p.j || !active[k]) continue;
      chain = divides(basis[k].leading_monomial(), p.lcm) && !has_pending(p.i, k) && !has_pending(p.j, k);
    }
    if (chain) continue;
    MultiPoly h = reduce_full(s_polynomial(basis[p.i], basis[p.j]), basis, active);
    if (h.is_zero()) continue;
    if (h.is_constant()) {
      basis.assign(1, MultiPoly::constant(sig, 1, order));
      return {sig, order, basis, true};
    }
    add(std::move(h));
  }

  // minimal basis: drop generators whose leading monomial is divisible by
  // another active leading monomial
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!active[i]) continue;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j || !active[j]) continue;
      if (divides(basis[j].leading_monomial(), basis[i].leading_monomial())) {
        active[i] = false;
        break;
      }
    }
  }
  std::vector<MultiPoly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (active[i]) minimal.push_back(basis[i]);
  }
  // inter-reduce tails
  std::vector<MultiPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<bool> others(minimal.size(), true);
    others[i] = false;
    MultiPoly tail = minimal[i];
    const Term lt = tail.leading_term();
    tail.add_scaled(MultiPoly::monomial(sig, lt.exponents, 1, order), Monomial(sig.size(), 0), -lt.coeff);
    MultiPoly r = reduce_full(tail, minimal, others);
    r.add_scaled(MultiPoly::monomial(sig, lt.exponents, 1, order), Monomial(sig.size(), 0), lt.coeff);
    reduced.push_back(r.monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const MultiPoly& a, const MultiPoly& b) {
    return order.compare(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  return {sig, order, std::move(reduced), true};
}

GroebnerBasis buchberger(std::span<const MultiPoly> gens, TermOrder order) {
  if (gens.empty()) throw PreconditionError("buchberger: empty generator list needs an explicit signature");
  return buchberger(gens.front().signature(), gens, order);
}

MultiPoly normal_form(const MultiPoly& p, const GroebnerBasis& g) {
  if (!(p.signature() == g.signature)) throw SignatureMismatch("normal_form: signature mismatch");
  const std::vector<bool> active(g.generators.size(), true);
  return reduce_full(p.with_order(g.order), g.generators, active);
}

bool ideal_contains(const GroebnerBasis& g, const MultiPoly& p) { return normal_form(p, g).is_zero(); }

namespace {

using Edge = std::vector<std::size_t>;

void min_hitting_set(const std::vector<Edge>& edges, std::vector<bool>& chosen, std::size_t size,
                     std::optional<std::vector<bool>>& best, std::size_t& best_size) {
  const Edge* open = nullptr;
  for (const auto& e : edges) {
    if (std::none_of(e.begin(), e.end(), [&](std::size_t v) { return chosen[v]; })) {
      open = &e;
      break;
    }
  }
  if (open == nullptr) {
    if (!best || size < best_size) {
      best = chosen;
      best_size = size;
    }
    return;
  }
  if (best && size + 1 >= best_size) return;
  for (std::size_t v : *open) {
    chosen[v] = true;
    min_hitting_set(edges, chosen, size + 1, best, best_size);
    chosen[v] = false;
  }
}

}  // namespace

std::vector<std::size_t> maximal_independent_set(const GroebnerBasis& g) {
  if (g.is_unit()) return {};
  const std::size_t n = g.signature.size();
  std::vector<Edge> edges;
  for (const auto& p : g.generators) {
    Edge e;
    for (std::size_t i = 0; i < n; ++i) {
      if (p.leading_monomial()[i] != 0) e.push_back(i);
    }
    edges.push_back(std::move(e));
  }
  // keep only inclusion-minimal supports
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Edge> minimal;
  for (const auto& e : edges) {
    const bool superset = std::any_of(minimal.begin(), minimal.end(), [&](const Edge& m) {
      return std::includes(e.begin(), e.end(), m.begin(), m.end());
    });
    if (!superset) minimal.push_back(e);
  }
  std::vector<bool> chosen(n, false);
  std::optional<std::vector<bool>> best;
  std::size_t best_size = 0;
  min_hitting_set(minimal, chosen, 0, best, best_size);
  std::vector<std::size_t> independent;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(*best)[i]) independent.push_back(i);
  }
  return independent;
}

int ideal_dimension(const GroebnerBasis& g) {
  if (g.is_unit()) return -1;
  return static_cast<int>(maximal_independent_set(g).size());
}

std::vector<MultiPoly> eliminate_leading_block(const GroebnerBasis& g, std::size_t k) {
  std::vector<MultiPoly> out;
  for (const auto& p : g.generators) {
    bool free = true;
    for (std::size_t i = 0; i < k && free; ++i) free = !p.involves(i);
    if (free) out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PointSearch {
  const Signature& sig;
  std::vector<MultiPoly> eqs;
  const RationalPointOptions& options;
  RationalPointSet result;

  void run(std::vector<std::optional<Rational>>& assignment) {
    if (result.points.size() >= options.max_points) {
      result.truncated = true;
      return;
    }
    std::vector<MultiPoly> current;
    for (const auto& e : eqs) {
      MultiPoly s = e;
      for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] && s.involves(i)) s = s.substitute(i, *assignment[i]);
      }
      if (!s.is_zero()) current.push_back(std::move(s));
    }
    const GroebnerBasis g = buchberger(sig, current, TermOrder::grevlex());
    if (g.is_unit()) return;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (!assignment[i]) free.push_back(i);
    }
    if (free.empty()) {
      std::vector<Rational> point;
      for (const auto& a : assignment) point.push_back(*a);
      result.points.push_back(std::move(point));
      return;
    }
    std::vector<std::size_t> independent;
    for (auto v : maximal_independent_set(g)) {
      if (!assignment[v]) independent.push_back(v);
    }
    if (independent.empty()) {
      const GroebnerBasis lex = buchberger(sig, g.generators, TermOrder::lex());
      const std::size_t v = free.back();
      const MultiPoly* uni = nullptr;
      for (const auto& p : lex.generators) {
        const auto supp = p.support();
        if (supp.size() == 1 && supp.front() == v) {
          uni = &p;
          break;
        }
      }
      if (uni == nullptr) throw Error("rational_points: zero-dimensional ideal without univariate element");
      const UPoly u = to_upoly(*uni, v);
      const auto roots = rational_roots(u);
      unsigned counted = 0;
      for (const auto& [root, mult] : roots) counted += mult;
      if (static_cast<int>(counted) < u.degree()) result.nonrational_roots = true;
      for (const auto& [root, mult] : roots) {
        assignment[v] = root;
        run(assignment);
        assignment[v].reset();
      }
      return;
    }
    result.sampled = true;
    const std::size_t per = std::min(options.samples_per_variable, options.sample_values.size());
    std::vector<std::size_t> idx(independent.size(), 0);
    while (true) {
      for (std::size_t i = 0; i < independent.size(); ++i) assignment[independent[i]] = options.sample_values[idx[i]];
      run(assignment);
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == per) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos == idx.size()) break;
    }
    for (auto v : independent) assignment[v].reset();
  }
};

}  // namespace

RationalPointSet rational_points(const Signature& sig, std::span<const MultiPoly> eqs,
                                 const RationalPointOptions& options) {
  PointSearch search{sig, std::vector<MultiPoly>(eqs.begin(), eqs.end()), options, {}};
  std::vector<std::optional<Rational>> assignment(sig.size());
  search.run(assignment);
  std::sort(search.result.points.begin(), search.result.points.end());
  search.result.points.erase(std::unique(search.result.points.begin(), search.result.points.end()),
                             search.result.points.end());
  return search.result;
}

}  // namespace deltak
