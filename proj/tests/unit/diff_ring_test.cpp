#include <gtest/gtest.h>

#include <algorithm>

#include "deltak/cli/expr.hpp"
#include "deltak/diff_ring.hpp"
#include "deltak/errors.hpp"
#include "testing.hpp"

namespace deltak {
namespace {

AlgIndet V(std::vector<std::uint32_t> e, std::size_t var) { return {DerivativeIndex{std::move(e)}, var}; }

struct Ring {
  DiffRingPtr ring;
  explicit Ring(std::size_t m, std::size_t n = 1, CoefficientField f = {}) : ring(make_diff_ring(m, n, std::move(f))) {}
  DiffPoly operator()(const std::string& s) const { return cli::parse_diffpoly(ring, s); }
};

TEST(Ranking, Examples) {
  EXPECT_TRUE(rank_compare(V({0, 0}, 1), V({1, 0}, 0)) < 0);  // u2 < d1 u1
  EXPECT_TRUE(rank_compare(V({1, 0}, 0), V({0, 1}, 0)) < 0);  // d1 u1 < d2 u1
  EXPECT_TRUE(rank_compare(V({0, 1}, 0), V({1, 0}, 1)) < 0);  // d2 u1 < d1 u2
  EXPECT_EQ(V({1, 0}, 0).key(), (RankKey{1, 0, 0, 1}));
}

TEST(Ranking, TotalOrderWithUniqueMinimum) {
  auto rng = testing::make_rng(20);
  const DiffRing ring{3, 2, {}};
  for (int i = 0; i < 100; ++i) {
    std::vector<AlgIndet> vs;
    for (int k = 0; k < 8; ++k) vs.push_back(testing::random_indet(ring, rng, 3));
    for (const auto& a : vs) {
      for (const auto& b : vs) {
        const auto ab = rank_compare(a, b), ba = rank_compare(b, a);
        ASSERT_EQ(ab == 0, a == b);
        ASSERT_EQ(ab < 0, ba > 0);
        for (const auto& c : vs) {
          if (ab < 0 && rank_compare(b, c) < 0) ASSERT_TRUE(rank_compare(a, c) < 0);
        }
      }
    }
    const auto lo = std::min_element(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return rank_compare(a, b) < 0; });
    ASSERT_EQ(std::count_if(vs.begin(), vs.end(), [&](const auto& v) { return rank_compare(v, *lo) <= 0 && !(v == *lo); }), 0);
  }
}

TEST(Leader, Examples) {
  const Ring r(2);
  EXPECT_EQ(r("d2*u1 - d1^2*u1").leader(), V({2, 0}, 0));
  const DiffPoly f = r("(d1*u1)^2 + u1");
  EXPECT_EQ(f.leader(), V({1, 0}, 0));
  EXPECT_EQ(f.leading_degree(), 2u);
  EXPECT_EQ(r("u1").leader(), V({0, 0}, 0));
  EXPECT_EQ(r("u1").leading_degree(), 1u);
  EXPECT_EQ(r("d1*d2*u1 + d2^3*u1").order(), 3u);
  EXPECT_THROW(r("7").leader(), PreconditionError);
}

TEST(Separant, Examples) {
  const Ring r(2);
  EXPECT_EQ(r("(d1*u1)^2 + u1").separant(), r("2*d1*u1"));
  EXPECT_EQ(r("d2*u1 - d1^2*u1").separant(), r("-1"));
  const DiffPoly f = r("u1*(d1*u1)^3 + d1*u1");
  EXPECT_EQ(f.separant(), r("3*u1*(d1*u1)^2 + 1"));
  EXPECT_EQ(f.initial(), r("u1"));
  EXPECT_THROW(r("3").separant(), PreconditionError);
}

TEST(Derivation, Examples) {
  const Ring r(2);
  EXPECT_EQ(r("(d1*u1)^2 - u1").derive(0), r("2*d1*u1*d1^2*u1 - d1*u1"));
  const DiffPoly g = r("u1*d1*u1");
  EXPECT_EQ(g.derive(0).derive(1), g.derive(1).derive(0));
  const DiffPoly f = r("d2*u1 - d1^2*u1");
  const DiffPoly df = f.derive(1);
  EXPECT_EQ(df, r("d2^2*u1 - d1^2*d2*u1"));
  const AlgIndet top = V({2, 1}, 0);
  EXPECT_EQ(df.degree_in(top), 1u);
  EXPECT_EQ(df.coefficient(top, 1), f.separant());
  EXPECT_THROW(f.derive(2), PreconditionError);
}

TEST(Derivation, ParameterAction) {
  const Ring r(1, 1, CoefficientField::partial_derivatives({"t"}, 1));
  EXPECT_EQ(r("t^2*u1").derive(0), r("2*t*u1 + t^2*d1*u1"));
}

TEST(PolyRank, Examples) {
  const Ring r(2);
  EXPECT_TRUE(poly_rank_compare(r("(d1*u1)^2 + u1"), r("d1*u1 + u1")) > 0);
  const AutoreducedSet a({r("d1*u1 - u1")});
  const AutoreducedSet b({r("d1*u1 - u1"), r("d2*u1")});
  EXPECT_TRUE(set_rank_compare(b, a) < 0);
  EXPECT_TRUE(set_rank_compare(a, b) > 0);
  EXPECT_TRUE(set_rank_compare(AutoreducedSet({r("u1")}), AutoreducedSet({r("d1*u1")})) < 0);
}

TEST(Autoreduced, Examples) {
  const Ring r(2);
  EXPECT_TRUE(is_autoreduced({r("d1*u1 - u1"), r("d2*u1 - u1")}).ok);
  const auto bad = is_autoreduced({r("d1*u1 - u1"), r("d1^2*u1")});
  ASSERT_FALSE(bad.ok);
  EXPECT_EQ(bad.violation->reason, AutoreducedViolation::Reason::proper_derivative);
  EXPECT_TRUE(is_autoreduced({r("u1*(d2*u1)^2 + d1*u1")}).ok);
  const auto deg = is_autoreduced({r("(d1*u1)^2 - u1"), r("(d1*u1)^2 + d2*u1")});
  ASSERT_FALSE(deg.ok);
  EXPECT_EQ(deg.violation->reason, AutoreducedViolation::Reason::leader_degree);
  EXPECT_THROW(AutoreducedSet({r("d1*u1"), r("d1^2*u1")}), PreconditionError);
}

TEST(RittReduce, HandExample) {
  const Ring r(1);
  const AutoreducedSet a({r("(d1*u1)^2 - u1")});
  const DiffPoly g = r("d1^2*u1");
  const RittResult res = ritt_reduce(g, a);
  EXPECT_EQ(res.remainder, r("d1*u1"));
  EXPECT_EQ(res.certificate.separant_exponents, (std::vector<unsigned>{1}));
  EXPECT_EQ(res.certificate.initial_exponents, (std::vector<unsigned>{0}));
  ASSERT_EQ(res.certificate.steps.size(), 1u);
  EXPECT_EQ(res.certificate.steps[0].theta.e, (std::vector<std::uint32_t>{1}));
  EXPECT_EQ(res.certificate.steps[0].q, r("1"));
  EXPECT_TRUE(verify_certificate(g, a, res));
}

TEST(RittReduce, TrivialCases) {
  const Ring r(1);
  const AutoreducedSet a({r("(d1*u1)^2 - u1")});
  const RittResult same = ritt_reduce(r("d1*u1 + u1^3"), a);
  EXPECT_EQ(same.remainder, r("d1*u1 + u1^3"));
  EXPECT_TRUE(same.certificate.steps.empty());
  EXPECT_TRUE(ritt_reduce(r("(d1*u1)^2 - u1"), a).remainder.is_zero());
}

class DiffRingLaws : public ::testing::TestWithParam<int> {};

TEST_P(DiffRingLaws, CommutationLeibnizSeparant) {
  auto rng = testing::make_rng(100 + static_cast<std::uint64_t>(GetParam()));
  const std::size_t m = static_cast<std::size_t>(testing::uniform(rng, 1, 3));
  const std::size_t n = static_cast<std::size_t>(testing::uniform(rng, 1, 2));
  const CoefficientField field =
      testing::uniform(rng, 0, 1) ? CoefficientField::rationals() : CoefficientField::partial_derivatives({"t"}, m);
  const DiffRingPtr ring = make_diff_ring(m, n, field);
  for (int i = 0; i < 20; ++i) {
    const DiffPoly f = testing::random_diffpoly(ring, rng);
    const DiffPoly g = testing::random_diffpoly(ring, rng);
    for (std::size_t a = 0; a < m; ++a) {
      ASSERT_EQ((f * g).derive(a), f * g.derive(a) + g * f.derive(a));
      for (std::size_t b = 0; b < m; ++b) ASSERT_EQ(f.derive(a).derive(b), f.derive(b).derive(a));
    }
    if (!f.is_constant()) ASSERT_TRUE(poly_rank_compare(f.separant(), f) < 0) << f.to_string();
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, DiffRingLaws, ::testing::Range(0, 5));

TEST(RittReduce, RandomCertificates) {
  auto rng = testing::make_rng(21);
  for (int i = 0; i < 40; ++i) {
    const std::size_t m = static_cast<std::size_t>(testing::uniform(rng, 1, 2));
    const DiffRingPtr ring = make_diff_ring(m, static_cast<std::size_t>(testing::uniform(rng, 1, 2)));
    const AutoreducedSet a = testing::random_autoreduced(ring, rng, 2);
    const DiffPoly g = testing::random_diffpoly(ring, rng, {3, 2, 3});
    const RittResult res = ritt_reduce(g, a);
    ASSERT_TRUE(verify_certificate(g, a, res)) << g.to_string();
    ASSERT_TRUE(is_partially_reduced(res.remainder, a)) << res.remainder.to_string();
  }
}

}  // namespace
}  // namespace deltak
