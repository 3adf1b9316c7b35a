#include <gtest/gtest.h>

#include "deltak/cli/expr.hpp"
#include "deltak/dvariety.hpp"
#include "deltak/errors.hpp"
#include "deltak/prolongation.hpp"
#include "testing.hpp"

namespace deltak {
namespace {

AutoreducedSet lambda(std::size_t m, std::vector<std::string> polys) {
  const DiffRingPtr ring = make_diff_ring(m, 1);
  std::vector<DiffPoly> ps;
  for (const auto& p : polys) ps.push_back(cli::parse_diffpoly(ring, p));
  return AutoreducedSet(std::move(ps));
}

std::vector<std::string> sources(const ProlongedIdeal& p) {
  std::vector<std::string> out;
  for (const auto& g : p.generators) out.push_back(g.source.to_string());
  return out;
}

std::vector<std::string> basis_texts(const SaturatedIdeal& s) {
  std::vector<std::string> out;
  for (const auto& g : s.basis.generators) out.push_back(g.to_string());
  return out;
}

TEST(NablaFrame, Examples) {
  EXPECT_EQ(nabla_frame(1, 1, 2).names(), (std::vector<std::string>{"u1", "d1*u1", "d1^2*u1"}));
  EXPECT_EQ(nabla_frame(2, 1, 1).names(), (std::vector<std::string>{"u1", "d1*u1", "d2*u1"}));
  EXPECT_EQ(nabla_frame(2, 2, 2).coords.size(), 12u);
  const auto f = nabla_frame(3, 2, 3);
  EXPECT_EQ(f.coords.size(), 2u * 20u);
  for (std::size_t i = 1; i < f.coords.size(); ++i) EXPECT_TRUE(rank_compare(f.coords[i - 1], f.coords[i]) < 0);
}

TEST(ProlongIdeal, Examples) {
  const auto a = lambda(1, {"d1*u1 - u1"});
  const auto pa = prolong_ideal(a, 2);
  EXPECT_EQ(sources(pa), (std::vector<std::string>{"d1*u1 - u1", "d1^2*u1 - d1*u1"}));
  EXPECT_EQ(saturate(pa).dimension, 1);

  const auto b = lambda(2, {"d2*u1 - d1^2*u1"});
  const auto pb = prolong_ideal(b, 2);
  EXPECT_EQ(sources(pb), (std::vector<std::string>{"-d1^2*u1 + d2*u1"}));
  EXPECT_EQ(pb.frame.coords.size(), 6u);
  EXPECT_EQ(saturate(pb).dimension, 5);

  const auto c = lambda(1, {"(d1*u1)^2 - u1"});
  const auto pc = prolong_ideal(c, 2);
  EXPECT_EQ(sources(pc), (std::vector<std::string>{"(d1*u1)^2 - u1", "2*d1^2*u1*d1*u1 - d1*u1"}));
  EXPECT_EQ(saturate(pc).dimension, 1);

  EXPECT_THROW(prolong_ideal(b, 1), PreconditionError);
}

TEST(AffineFiber, Examples) {
  const auto a = affine_fiber(lambda(1, {"d1*u1 - u1"}), 2);
  ASSERT_EQ(a.entries.size(), 1u);
  EXPECT_EQ(a.entries[0].coordinate.to_string(), "d1^2*u1");
  EXPECT_EQ(a.entries[0].value.to_string(), "d1*u1");

  const auto c = affine_fiber(lambda(1, {"(d1*u1)^2 - u1"}), 2);
  ASSERT_EQ(c.entries.size(), 1u);
  EXPECT_EQ(c.entries[0].value.to_string(), "1/2");

  const auto heat = lambda(2, {"d2*u1 - d1^2*u1"});
  const auto h = affine_fiber(heat, 3);
  EXPECT_EQ(h.basis.size(), 2u);
  EXPECT_EQ(h.entries.size(), 2u);
  const FiberEntry* e = h.find(AlgIndet{DerivativeIndex{{2, 1}}, 0});
  ASSERT_NE(e, nullptr);
  EXPECT_EQ(e->value.to_string(), "d2^2*u1");
  EXPECT_TRUE(fiber_consistent(heat, h));

  EXPECT_THROW(affine_fiber(heat, 2), PreconditionError);
}

TEST(ExtractDVariety, Examples) {
  const auto a = extract_dvariety(lambda(1, {"d1*u1 - u1"}));
  EXPECT_EQ(a.bound.ell, 1u);
  EXPECT_EQ(a.r, 0u);
  EXPECT_EQ(a.V.frame.names(), (std::vector<std::string>{"u1", "d1*u1"}));
  EXPECT_EQ(a.V_saturated.dimension, 1);
  ASSERT_EQ(a.section.size(), 1u);
  EXPECT_EQ(a.section[0][0].to_string(), "d1*u1");
  EXPECT_EQ(a.section[0][1].to_string(), "d1*u1");

  const auto c = extract_dvariety(lambda(1, {"(d1*u1)^2 - u1"}));
  EXPECT_EQ(c.bound.ell, 1u);
  EXPECT_EQ(c.r, 0u);
  EXPECT_EQ(c.section[0][0].to_string(), "d1*u1");
  EXPECT_EQ(c.section[0][1].to_string(), "1/2");

  const auto h = extract_dvariety(lambda(2, {"d2*u1 - d1^2*u1"}));
  EXPECT_EQ(h.bound.ell, 2u);
  EXPECT_EQ(h.r, 2u);
  EXPECT_EQ(h.S.basis.size(), h.r);
}

TEST(ProlongationProperties, OracleEquivalenceOnCorpus) {
  for (const auto& entry : testing::corpus()) {
    const InitialSetRep b = leaders_to_E(entry.lambda);
    const auto bound = prolongation_bound(entry.lambda);
    for (unsigned t = 0; t <= bound.ell + 2; ++t) {
      const ProlongedIdeal ideal = t < bound.ell1 ? prolonged_generators(entry.lambda, t) : prolong_ideal(entry.lambda, t);
      ASSERT_EQ(saturate(ideal).dimension, static_cast<int>(count_Bt(b, t))) << entry.label << " t=" << t;
    }
  }
}

TEST(ProlongationProperties, FiberModelConsistentAndFreeCount) {
  for (const auto& entry : testing::corpus()) {
    const auto bound = prolongation_bound(entry.lambda);
    const InitialSetRep b = leaders_to_E(entry.lambda);
    const unsigned t = bound.ell + 1;
    const auto model = affine_fiber(entry.lambda, t);
    EXPECT_TRUE(fiber_consistent(entry.lambda, model)) << entry.label;
    EXPECT_EQ(model.basis.size(), count_Bt(b, t) - count_Bt(b, t - 1)) << entry.label;
  }
}

TEST(ProlongationProperties, EqualAtLevelEllStaysEqual) {
  // Same subvariety written two ways, and two different ones.
  const std::vector<std::pair<AutoreducedSet, AutoreducedSet>> pairs{
      {lambda(1, {"d1*u1 - u1"}), lambda(1, {"2*u1 - 2*d1*u1"})},
      {lambda(1, {"d1*u1 - u1"}), lambda(1, {"(d1*u1)^2 - u1"})},
      {lambda(2, {"d2*u1 - d1^2*u1"}), lambda(2, {"d1^2*u1 - u1", "d2^2*u1 - u1"})},
      {lambda(2, {"d1^2*u1 - u1", "d2^2*u1 - u1"}), lambda(2, {"-d1^2*u1 + u1", "3*d2^2*u1 - 3*u1"})},
  };
  std::size_t equal_pairs = 0;
  for (const auto& [a, b] : pairs) {
    const unsigned ell = std::max(prolongation_bound(a).ell, prolongation_bound(b).ell);
    const bool same = basis_texts(saturate(prolong_ideal(a, ell))) == basis_texts(saturate(prolong_ideal(b, ell)));
    if (!same) continue;
    ++equal_pairs;
    EXPECT_EQ(basis_texts(saturate(prolong_ideal(a, ell + 1))), basis_texts(saturate(prolong_ideal(b, ell + 1))));
  }
  EXPECT_EQ(equal_pairs, 2u);
}

TEST(DConstant, FiberData) {
  const auto a = lambda(1, {"d1*u1 - u1"});
  const auto data = extract_dvariety(a);
  const DiffRingPtr& ring = a.ring();
  const DiffPoly u = cli::parse_diffpoly(ring, "u1"), du = cli::parse_diffpoly(ring, "d1*u1");
  EXPECT_TRUE(is_dconstant(DiffFraction::make(u, du), data));
  EXPECT_FALSE(is_dconstant(DiffFraction::of(u), data));
  EXPECT_TRUE(is_dconstant(DiffFraction::of(cli::parse_diffpoly(ring, "5")), data));
}

}  // namespace
}  // namespace deltak
