#include <gtest/gtest.h>

#include <algorithm>

#include "deltak/cli/expr.hpp"
#include "deltak/groebner.hpp"
#include "testing.hpp"

namespace deltak {
namespace {

const Signature kXY({"x", "y"});

MultiPoly P(const std::string& s, const Signature& sig = kXY) { return cli::parse_multipoly(sig, s); }

std::vector<std::string> texts(const GroebnerBasis& g) {
  std::vector<std::string> out;
  for (const auto& p : g.generators) out.push_back(p.to_string());
  return out;
}

TEST(Buchberger, LexExample) {
  const std::vector<MultiPoly> gens{P("x*y - 1"), P("y^2 - 1")};
  const auto g = buchberger(gens, TermOrder::lex());
  EXPECT_TRUE(g.reduced);
  EXPECT_EQ(texts(g), (std::vector<std::string>{"x - y", "y^2 - 1"}));
}

TEST(Buchberger, PrincipalAndUnit) {
  const std::vector<MultiPoly> a{P("x")};
  EXPECT_EQ(texts(buchberger(a)), (std::vector<std::string>{"x"}));
  const std::vector<MultiPoly> b{P("x"), P("x + 1")};
  const auto g = buchberger(b);
  EXPECT_TRUE(g.is_unit());
  EXPECT_EQ(texts(g), (std::vector<std::string>{"1"}));
}

TEST(NormalForm, Examples) {
  const std::vector<MultiPoly> gens{P("x - y"), P("y^2 - 1")};
  const auto g = buchberger(gens, TermOrder::lex());
  EXPECT_TRUE(normal_form(P("x^2 - 1").with_order(TermOrder::lex()), g).is_zero());
  EXPECT_TRUE(normal_form(MultiPoly(kXY, TermOrder::lex()), g).is_zero());
  const std::vector<MultiPoly> y{P("y")};
  EXPECT_EQ(normal_form(P("x"), buchberger(y)), P("x"));
}

TEST(IdealDimension, Examples) {
  const std::vector<MultiPoly> hyp{P("x*y - 1")};
  EXPECT_EQ(ideal_dimension(buchberger(hyp)), 1);
  const std::vector<MultiPoly> one{P("1")};
  EXPECT_EQ(ideal_dimension(buchberger(one)), -1);
  const Signature xyz({"x", "y", "z"});
  EXPECT_EQ(ideal_dimension(buchberger(xyz, {})), 3);
}

int brute_force_dimension(const GroebnerBasis& g) {
  if (g.is_unit()) return -1;
  const std::size_t n = g.signature.size();
  int best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool independent = true;
    for (const auto& p : g.generators) {
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (p.leading_monomial()[i] > 0 && !(mask & (1u << i))) inside = false;
      }
      if (inside) independent = false;
    }
    if (independent) best = std::max(best, __builtin_popcount(mask));
  }
  return best;
}

std::vector<MultiPoly> random_ideal(const Signature& sig, std::mt19937_64& rng) {
  std::vector<MultiPoly> gens;
  const int k = testing::uniform(rng, 1, 3);
  for (int i = 0; i < k; ++i) {
    MultiPoly p = testing::random_poly(sig, rng, 3, 2);
    if (!p.is_zero()) gens.push_back(p);
  }
  return gens;
}

TEST(GroebnerProperties, MultiplesReduceToZero) {
  auto rng = testing::make_rng(10);
  const Signature sig({"a", "b", "c"});
  for (int i = 0; i < 60; ++i) {
    const auto gens = random_ideal(sig, rng);
    const auto g = buchberger(sig, gens);
    for (const auto& f : gens) {
      const MultiPoly p = testing::random_poly(sig, rng, 3, 2);
      ASSERT_TRUE(normal_form(p * f, g).is_zero()) << f.to_string();
    }
    for (const auto& b : g.generators) {
      ASSERT_EQ(b.leading_coefficient(), 1);
    }
  }
}

TEST(GroebnerProperties, IndependentOfGeneratorOrder) {
  auto rng = testing::make_rng(11);
  const Signature sig({"a", "b", "c"});
  for (int i = 0; i < 60; ++i) {
    auto gens = random_ideal(sig, rng);
    const auto g1 = buchberger(sig, gens);
    std::reverse(gens.begin(), gens.end());
    std::shuffle(gens.begin(), gens.end(), rng);
    const auto g2 = buchberger(sig, gens);
    ASSERT_EQ(texts(g1), texts(g2));
  }
}

TEST(GroebnerProperties, DimensionMatchesBruteForce) {
  auto rng = testing::make_rng(12);
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i + 1));
    const Signature sig(names);
    for (int i = 0; i < 15; ++i) {
      const auto g = buchberger(sig, random_ideal(sig, rng));
      ASSERT_EQ(ideal_dimension(g), brute_force_dimension(g));
    }
  }
}

TEST(RationalPoints, FiniteAndSampled) {
  const std::vector<MultiPoly> eqs{P("x^2 - 1"), P("y - x")};
  const auto pts = rational_points(kXY, eqs);
  EXPECT_FALSE(pts.sampled);
  EXPECT_EQ(pts.points.size(), 2u);
  const std::vector<MultiPoly> circle{P("x^2 + y^2 - 1"), P("y")};
  EXPECT_EQ(rational_points(kXY, circle).points.size(), 2u);
  const std::vector<MultiPoly> irr{P("x^2 - 2"), P("y")};
  const auto none = rational_points(kXY, irr);
  EXPECT_TRUE(none.points.empty());
  EXPECT_TRUE(none.nonrational_roots);
  const std::vector<MultiPoly> line{P("x - y")};
  const auto fam = rational_points(kXY, line);
  EXPECT_TRUE(fam.sampled);
  for (const auto& p : fam.points) EXPECT_EQ(p[0], p[1]);
}

TEST(Elimination, BlockOrder) {
  const Signature sig({"z", "x", "y"});
  const std::vector<MultiPoly> gens{P("z*x - 1", sig), P("x - y", sig)};
  const auto g = buchberger(sig, gens, TermOrder::elimination(1));
  for (const auto& p : eliminate_leading_block(g, 1)) EXPECT_FALSE(p.involves(0));
}

}  // namespace
}  // namespace deltak
