#include "deltak/exterior.hpp"

#include <algorithm>
#include <optional>

#include "deltak/matrix.hpp"

namespace deltak {

const char* to_string(A2Outcome o) {
  switch (o) {
    case A2Outcome::confirmed: return "confirmed";
    case A2Outcome::vacuous: return "vacuous";
    case A2Outcome::gamma_zero: return "precondition-failed: gamma = 0";
    case A2Outcome::omega_not_killed: return "precondition-failed: omega ^ alpha != 0";
    case A2Outcome::refuted: return "refuted";
  }
  return "refuted";
}

namespace {

Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  return Rational(d(rng));
}

ExtVector<Rational> random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::vector<Rational> c(dim);
  for (auto& x : c) x = small_rational(rng);
  return ExtVector<Rational>::from_coordinates(c);
}

}  // namespace

A2Instance random_a2_instance(std::mt19937_64& rng, std::size_t max_dim) {
  const Rational one(1);
  std::uniform_int_distribution<std::size_t> dim_d(2, std::max<std::size_t>(2, max_dim));
  const std::size_t dim = dim_d(rng);
  std::uniform_int_distribution<std::size_t> ell_d(1, dim);
  const std::size_t ell = ell_d(rng);
  A2Instance inst;
  ExtVector<Rational> gamma(dim, 0);
  do {
    inst.alphas.clear();
    for (std::size_t i = 0; i < ell; ++i) inst.alphas.push_back(random_vector(rng, dim));
    gamma = wedge_all(dim, inst.alphas, one);
  } while (gamma.is_zero());
  std::uniform_int_distribution<std::size_t> p_d(ell, dim);
  const std::size_t p = p_d(rng);
  do {
    std::vector<ExtVector<Rational>> extra;
    for (std::size_t i = ell; i < p; ++i) extra.push_back(random_vector(rng, dim));
    Rational c;
    do c = small_rational(rng);
    while (is_zero(c));
    inst.omega = c * wedge(gamma, wedge_all(dim, extra, one));
  } while (inst.omega.is_zero());
  inst.beta = ExtVector<Rational>(dim, 1);
  for (const auto& a : inst.alphas) inst.beta += small_rational(rng) * a;
  return inst;
}

namespace {

using FlatKey = std::pair<IndexSubset, Monomial>;

/// Coordinates over Q of elements of Q(t)^M after multiplying everything by
/// one common denominator; Q-linear relations are preserved.
std::vector<std::vector<Rational>> flatten(const std::vector<std::vector<std::pair<IndexSubset, RatFunc>>>& vs) {
  std::optional<MultiPoly> lcm;
  for (const auto& v : vs) {
    for (const auto& [s, f] : v) {
      if (!lcm) {
        lcm = f.den();
        continue;
      }
      *lcm = *lcm * exact_div(f.den(), gcd(*lcm, f.den()));
    }
  }
  std::map<FlatKey, std::size_t> cols;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> sparse;
  for (const auto& v : vs) {
    auto& row = sparse.emplace_back();
    for (const auto& [s, f] : v) {
      const MultiPoly p = f.num() * exact_div(*lcm, f.den());
      for (const auto& t : p.terms()) {
        auto [it, fresh] = cols.emplace(FlatKey{s, t.exponents}, cols.size());
        row.emplace_back(it->second, t.coeff);
      }
    }
  }
  std::vector<std::vector<Rational>> out(vs.size(), std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t i = 0; i < sparse.size(); ++i) {
    for (const auto& [c, q] : sparse[i]) out[i][c] += q;
  }
  return out;
}

std::vector<std::pair<IndexSubset, RatFunc>> entries(const ExtVector<RatFunc>& v) {
  return {v.terms().begin(), v.terms().end()};
}

std::size_t rank_over_Q(const std::vector<std::vector<std::pair<IndexSubset, RatFunc>>>& vs) {
  const auto rows = flatten(vs);
  if (rows.empty() || rows.front().empty()) return 0;
  return Matrix<Rational>::from_rows(rows).rank();
}

/// Basis of {c in Q^k : sum c_j v_j = 0}.
std::vector<std::vector<Rational>> relations_over_Q(const std::vector<std::vector<std::pair<IndexSubset, RatFunc>>>& vs) {
  const auto rows = flatten(vs);
  const std::size_t width = rows.empty() ? 0 : rows.front().size();
  Matrix<Rational> m(width, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    for (std::size_t i = 0; i < width; ++i) m(i, j) = rows[j][i];
  }
  return m.nullspace();
}

}  // namespace

A1Report lemma_a1_span_probe(const std::vector<ExtVector<RatFunc>>& U_sample, unsigned ell) {
  if (ell == 0) throw PreconditionError("lemma_a1_span_probe: ell must be positive");
  A1Report rep;
  rep.ell = ell;
  std::vector<ExtVector<RatFunc>> U;
  for (const auto& u : U_sample) {
    if (u.grade() != 1) throw PreconditionError("lemma_a1_span_probe: sample vectors must have grade 1");
    if (!U.empty() && u.dim() != U.front().dim()) throw SignatureMismatch("lemma_a1_span_probe: ambient dimensions differ");
    if (!u.is_zero()) U.push_back(u);
  }
  if (U.empty()) return rep;
  const std::size_t dim = U.front().dim();
  const Signature sig = U.front().terms().begin()->second.signature();
  const RatFunc zero = RatFunc::zero(sig), one = RatFunc::constant(sig, 1);

  std::vector<std::vector<std::pair<IndexSubset, RatFunc>>> flatU;
  for (const auto& u : U) flatU.push_back(entries(u));
  rep.dim_k_U = rank_over_Q(flatU);
  {
    Matrix<RatFunc> m(U.size(), dim, zero, one);
    for (std::size_t i = 0; i < U.size(); ++i) {
      for (const auto& [s, c] : U[i].terms()) m(i, s[0]) = c;
    }
    rep.dim_K_U = m.rank();
  }

  // B: all ell-fold wedges of distinct sample vectors; beta is the first nonzero one
  std::vector<ExtVector<RatFunc>> wedges;
  std::vector<std::size_t> beta_idx;
  std::vector<std::size_t> pick(ell);
  auto rec = [&](auto& self, std::size_t pos, std::size_t start) -> void {
    if (pos == ell) {
      std::vector<ExtVector<RatFunc>> vs;
      for (auto i : pick) vs.push_back(U[i]);
      ExtVector<RatFunc> w = wedge_all(dim, vs, one);
      if (!w.is_zero()) {
        if (beta_idx.empty()) beta_idx = pick;
        wedges.push_back(std::move(w));
      }
      return;
    }
    for (std::size_t i = start; i < U.size(); ++i) {
      pick[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  if (ell <= dim) rec(rec, 0, 0);
  std::vector<std::vector<std::pair<IndexSubset, RatFunc>>> flatB;
  for (const auto& w : wedges) flatB.push_back(entries(w));
  rep.dim_B = rank_over_Q(flatB);
  rep.beta_found = !beta_idx.empty();
  if (!rep.beta_found) return rep;

  std::vector<ExtVector<RatFunc>> us;
  for (auto i : beta_idx) us.push_back(U[i]);
  const ExtVector<RatFunc> beta = wedge_all(dim, us, one);
  const auto& [key, beta_key] = *beta.terms().begin();

  // A = {a : a beta in B}: c-relations of b_j - (b_j[key]/beta[key]) beta
  std::vector<std::vector<std::pair<IndexSubset, RatFunc>>> shifted;
  std::vector<RatFunc> ratios;
  for (const auto& w : wedges) {
    const RatFunc* c = w.coefficient(key);
    RatFunc ratio = c ? *c / beta_key : zero;
    shifted.push_back(entries(w - ratio * beta));
    ratios.push_back(std::move(ratio));
  }
  std::vector<std::vector<std::pair<IndexSubset, RatFunc>>> A;
  for (const auto& rel : relations_over_Q(shifted)) {
    RatFunc a = zero;
    for (std::size_t j = 0; j < rel.size(); ++j) {
      if (!is_zero(rel[j])) a += RatFunc::constant(sig, rel[j]) * ratios[j];
    }
    if (!a.is_zero()) A.push_back({{IndexSubset{}, a}});
  }
  rep.dim_A = rank_over_Q(A);

  // kernel of v -> u_1 ^ ... ^ u_{ell-1} ^ v on the Q-span of the sample
  std::vector<ExtVector<RatFunc>> head(us.begin(), us.end() - 1);
  const ExtVector<RatFunc> h = wedge_all(dim, head, one);
  std::vector<std::vector<std::pair<IndexSubset, RatFunc>>> images;
  for (const auto& u : U) images.push_back(entries(wedge(h, u)));
  const auto kernel = relations_over_Q(images);
  for (const auto& rel : kernel) {
    ExtVector<RatFunc> v(dim, 1);
    for (std::size_t j = 0; j < rel.size(); ++j) {
      if (!is_zero(rel[j])) v += RatFunc::constant(sig, rel[j]) * U[j];
    }
    if (v.is_zero()) continue;
    ++rep.kernel_dim;
    ++rep.checked;
    // a_i beta = u_1 ^ .. v (slot i) .. ^ u_ell
    ExtVector<RatFunc> rebuilt(dim, 1);
    for (std::size_t i = 0; i + 1 < ell; ++i) {
      auto slot = us;
      slot[i] = v;
      const ExtVector<RatFunc> w = wedge_all(dim, slot, one);
      const RatFunc* c = w.coefficient(key);
      const RatFunc a = c ? *c / beta_key : zero;
      if (!(w == a * beta)) rep.containment = false;
      auto withA = A;
      withA.push_back({{IndexSubset{}, a}});
      if (!a.is_zero() && rank_over_Q(withA) != rep.dim_A) rep.containment = false;
      rebuilt += a * us[i];
    }
    if (!(rebuilt == v)) rep.containment = false;
  }
  return rep;
}

}  // namespace deltak
