#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "deltak/cli/expr.hpp"
#include "deltak/groebner.hpp"
#include "deltak/initial_sets.hpp"
#include "testing.hpp"

namespace deltak {

void PrintTo(const ExpPoint& p, std::ostream* os) { *os << p.to_string(); }

namespace {

ExpPoint E(std::vector<std::uint32_t> r, std::size_t j = 0) { return {std::move(r), j}; }

AutoreducedSet lambda(std::size_t m, std::vector<std::string> polys) {
  const DiffRingPtr ring = make_diff_ring(m, 1);
  std::vector<DiffPoly> ps;
  for (const auto& p : polys) ps.push_back(cli::parse_diffpoly(ring, p));
  return AutoreducedSet(std::move(ps));
}

const InitialSetRep kSquare(2, 1, {E({2, 0}), E({0, 2})});
const InitialSetRep kHeat(2, 1, {E({2, 0})});

TEST(LeadersToE, Examples) {
  EXPECT_EQ(leaders_to_E(lambda(2, {"d1^2*u1 - u1", "d2^2*u1 - u1"})).leaders(), (std::vector<ExpPoint>{E({0, 2}), E({2, 0})}));
  EXPECT_EQ(leaders_to_E(lambda(2, {"d2*u1 - d1^2*u1"})).leaders(), (std::vector<ExpPoint>{E({2, 0})}));
  const InitialSetRep b = leaders_to_E(lambda(2, {"u1 - 3"}));
  EXPECT_EQ(b.leaders(), (std::vector<ExpPoint>{E({0, 0})}));
  EXPECT_EQ(count_Bt(b, 5), 0u);
}

TEST(BMembership, Examples) {
  EXPECT_TRUE(b_membership(kSquare, E({1, 1})));
  EXPECT_FALSE(b_membership(kSquare, E({2, 5})));
  EXPECT_TRUE(b_membership(InitialSetRep(2, 1, {}), E({7, 3})));
}

TEST(CountBt, Examples) {
  const std::vector<std::size_t> sq{1, 3, 4, 4}, heat{1, 3, 5, 7};
  for (unsigned t = 0; t < 4; ++t) {
    EXPECT_EQ(count_Bt(kSquare, t), sq[t]);
    EXPECT_EQ(count_Bt(kHeat, t), heat[t]);
    EXPECT_EQ(count_Bt(InitialSetRep(1, 1, {}), t), t + 1);
  }
}

TEST(DimensionFunction, EventualPolynomial) {
  const auto df = dimension_function(kHeat, 6);
  EXPECT_EQ(df.values, (std::vector<std::size_t>{1, 3, 5, 7, 9, 11, 13}));
  EXPECT_EQ(df.eventual_polynomial, UPoly({1, 2}));
  const auto sq = dimension_function(kSquare, 4);
  EXPECT_EQ(sq.eventual_polynomial, UPoly::constant(4));
  for (unsigned t = sq.onset; t <= 4; ++t) EXPECT_EQ(sq.eventual_polynomial.evaluate(t), static_cast<long>(sq.values[t]));
}

TEST(RemovablePoints, Examples) {
  EXPECT_EQ(removable_points(kSquare), (std::vector<ExpPoint>{E({1, 1})}));
  EXPECT_TRUE(removable_points(kHeat).empty());
  EXPECT_EQ(removable_points(InitialSetRep(1, 1, {E({1})})), (std::vector<ExpPoint>{E({0})}));
}

TEST(ProlongationBound, Examples) {
  const auto a = prolongation_bound(lambda(2, {"d1^2*u1 - u1", "d2^2*u1 - u1"}));
  EXPECT_EQ(a.ell1, 2u);
  EXPECT_EQ(a.ell2, 2u);
  EXPECT_EQ(a.ell, 2u);
  EXPECT_EQ(a.removable, (std::vector<ExpPoint>{E({1, 1})}));
  const auto b = prolongation_bound(lambda(2, {"d2*u1 - d1^2*u1"}));
  EXPECT_EQ(b.ell1, 2u);
  EXPECT_EQ(b.ell2, 0u);
  EXPECT_EQ(b.ell, 2u);
  EXPECT_TRUE(b.removable.empty());
  const auto c = prolongation_bound(lambda(1, {"d1*u1 - u1"}));
  EXPECT_EQ(c.ell1, 1u);
  EXPECT_EQ(c.ell2, 0u);
  EXPECT_EQ(c.ell, 1u);
  EXPECT_EQ(c.removable, (std::vector<ExpPoint>{E({0})}));
}

/// All points with |r| <= bound.
std::vector<ExpPoint> simplex(std::size_t m, std::size_t n, unsigned bound) {
  std::vector<ExpPoint> out;
  std::vector<std::uint32_t> r(m, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == m) {
      for (std::size_t j = 0; j < n; ++j) out.push_back({r, j});
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      r[i] = v;
      rec(i + 1, left - v);
    }
    r[i] = 0;
  };
  rec(0, bound);
  return out;
}

std::vector<ExpPoint> brute_removable(const InitialSetRep& b) {
  unsigned bound = static_cast<unsigned>(b.m());
  for (const auto& e : b.leaders()) bound = std::max(bound, e.norm() + static_cast<unsigned>(b.m()));
  std::vector<ExpPoint> out;
  for (const auto& p : simplex(b.m(), b.n(), bound)) {
    if (!b.contains(p)) continue;
    bool maximal = true;
    for (std::size_t k = 0; k < b.m(); ++k) {
      ExpPoint q = p;
      ++q.r[k];
      if (b.contains(q)) maximal = false;
    }
    if (maximal) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(InitialSetProperties, DownwardClosedAndRemovable) {
  auto rng = testing::make_rng(30);
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
    const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 2));
    const InitialSetRep b = testing::random_initial_set(rng, m, n, 4);
    auto rem = removable_points(b);
    std::sort(rem.begin(), rem.end());
    ASSERT_EQ(rem, brute_removable(b));
    for (const auto& p : simplex(m, n, 6)) {
      if (!b.contains(p)) continue;
      for (const auto& q : simplex(m, n, p.norm())) {
        if (q.leq(p)) ASSERT_TRUE(b.contains(q));
      }
      const bool is_rem = std::find(rem.begin(), rem.end(), p) != rem.end();
      ASSERT_EQ(removal_keeps_initial(b, p), is_rem) << p.to_string();
    }
  }
}

TEST(InitialSetProperties, CountMatchesStandardMonomials) {
  auto rng = testing::make_rng(31);
  for (int i = 0; i < 30; ++i) {
    const std::size_t m = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
    const InitialSetRep b = testing::random_initial_set(rng, m, 1, 3);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < m; ++k) names.push_back("d" + std::to_string(k + 1));
    const Signature sig(names);
    std::vector<MultiPoly> gens;
    for (const auto& e : b.leaders()) gens.push_back(MultiPoly::monomial(sig, Monomial(e.r.begin(), e.r.end()), 1));
    const GroebnerBasis g = buchberger(sig, gens);
    for (unsigned t = 0; t <= 5; ++t) {
      std::size_t standard = 0;
      for (unsigned d = 0; d <= t; ++d) {
        for (const auto& mono : monomials_up_to(m, d)) {
          if (total_degree(mono) != d) continue;
          if (normal_form(MultiPoly::monomial(sig, mono, 1), g) == MultiPoly::monomial(sig, mono, 1)) ++standard;
        }
      }
      ASSERT_EQ(standard, count_Bt(b, t));
    }
  }
}

}  // namespace
}  // namespace deltak
