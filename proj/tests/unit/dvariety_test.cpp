#include <gtest/gtest.h>

#include "deltak/cli/expr.hpp"
#include "deltak/dvariety.hpp"
#include "deltak/errors.hpp"
#include "testing.hpp"

namespace deltak {
namespace {

const Signature kXY({"x", "y"});

MultiPoly P(const std::string& s) { return cli::parse_multipoly(kXY, s); }
RatFunc R(const std::string& s) { return cli::parse_ratfunc(kXY, s); }

DSpec planar(const std::string& dx, const std::string& dy) { return DSpec(kXY, {{P(dx), P(dy)}}); }

const DSpec kRotation = planar("-y", "x");
const DSpec kShift = planar("1", "y");
const DSpec kEuler = planar("x", "2*y");

std::vector<std::string> fs(const DarbouxReport& r) {
  std::vector<std::string> out;
  for (const auto& d : r.results) out.push_back(d.f.to_string() + " : " + d.cofactors[0].to_string());
  return out;
}

TEST(DSubvariety, RotationExamples) {
  const std::vector<MultiPoly> circle{P("x^2 + y^2 - 1")};
  EXPECT_TRUE(is_dsubvariety(kRotation, circle).ok);
  const std::vector<MultiPoly> line{P("x - 1")};
  const auto bad = is_dsubvariety(kRotation, line);
  EXPECT_FALSE(bad.ok);
  EXPECT_FALSE(bad.remainder.is_zero());
  const std::vector<MultiPoly> whole{MultiPoly(kXY)};
  EXPECT_TRUE(is_dsubvariety(kRotation, whole).ok);
}

TEST(DConstant, RotationExamples) {
  EXPECT_TRUE(is_dconstant(R("x^2 + y^2"), kRotation));
  EXPECT_FALSE(is_dconstant(R("x"), kRotation));
  EXPECT_TRUE(is_dconstant(R("7"), kRotation));
  const DSpec on_line(kXY, {{P("-y"), P("x")}}, {P("x")});
  EXPECT_THROW(is_dconstant(R("1/x"), on_line), PreconditionError);
}

TEST(Darboux, Rotation) {
  const auto r = darboux_search(kRotation, 2);
  EXPECT_EQ(fs(r), (std::vector<std::string>{"x^2 + y^2 : 0"}));
  EXPECT_TRUE(r.non_rational_cofactors);
  EXPECT_EQ(r.method, DarbouxMethod::eigen);
}

TEST(Darboux, ShiftField) {
  const auto r = darboux_search(kShift, 3);
  EXPECT_EQ(fs(r), (std::vector<std::string>{"y : 1", "y^2 : 2", "y^3 : 3"}));
  std::size_t irreducible = 0;
  for (const auto& d : r.results) irreducible += d.irreducibility == Irreducibility::verified_irreducible;
  EXPECT_EQ(irreducible, 1u);
  for (unsigned d = 1; d <= 4; ++d) {
    const auto rd = darboux_search(kShift, d);
    ASSERT_EQ(rd.results.size(), d);
    for (unsigned k = 0; k < d; ++k) EXPECT_EQ(rd.results[k].f, P("y").pow(k + 1));
  }
}

TEST(Darboux, EulerField) {
  const auto r = darboux_search(kEuler, 2);
  EXPECT_EQ(fs(r), (std::vector<std::string>{"x : 1", "x^2 : 2", "y : 2", "x*y : 3", "y^2 : 4"}));
}

TEST(Darboux, Errors) {
  EXPECT_THROW(darboux_search(kRotation, 0), PreconditionError);
  const Signature xyz({"x", "y", "z"});
  auto Q = [&](const std::string& s) { return cli::parse_multipoly(xyz, s); };
  const DSpec noncommuting(xyz, {{Q("0"), Q("0"), Q("x")}, {Q("z"), Q("0"), Q("0")}});
  EXPECT_FALSE(check_commuting(noncommuting).ok);
  EXPECT_THROW(darboux_search(noncommuting, 1), PreconditionError);
  DarbouxOptions waive;
  waive.check_commuting = false;
  EXPECT_NO_THROW(darboux_search(noncommuting, 1, waive));
}

TEST(Darboux, QuadraticFieldUsesGroebnerPath) {
  // d x = x^2, d y = x y: x and y are Darboux with cofactor x.
  const auto r = darboux_search(planar("x^2", "x*y"), 1);
  EXPECT_EQ(r.method, DarbouxMethod::groebner);
  for (const auto& d : r.results) {
    EXPECT_EQ(planar("x^2", "x*y").apply(0, d.f), d.cofactors[0] * d.f);
  }
  EXPECT_GE(r.results.size(), 2u);
}

TEST(Darboux, PathsAgree) {
  for (const DSpec& spec : {kRotation, kShift, kEuler, planar("x + y", "y"), planar("y", "0")}) {
    for (unsigned d = 1; d <= 3; ++d) {
      DarbouxOptions e, g;
      e.method = DarbouxMethod::eigen;
      g.method = DarbouxMethod::groebner;
      const auto a = darboux_search(spec, d, e), b = darboux_search(spec, d, g);
      ASSERT_EQ(fs(a), fs(b)) << "d=" << d;
      ASSERT_EQ(a.non_rational_cofactors, b.non_rational_cofactors);
    }
  }
}

TEST(DarbouxProperties, MultiplicativityAndInvariance) {
  for (const DSpec& spec : {kRotation, kShift, kEuler, planar("x + y", "y")}) {
    const auto r = darboux_search(spec, 3);
    for (const auto& a : r.results) {
      for (std::size_t k = 0; k < spec.m; ++k) ASSERT_EQ(spec.apply(k, a.f), a.cofactors[k] * a.f);
      const std::vector<MultiPoly> curve{a.f};
      ASSERT_TRUE(is_dsubvariety(spec, curve).ok) << a.f.to_string();
      for (const auto& b : r.results) {
        const MultiPoly fg = a.f * b.f;
        for (std::size_t k = 0; k < spec.m; ++k) ASSERT_EQ(spec.apply(k, fg), (a.cofactors[k] + b.cofactors[k]) * fg);
      }
    }
  }
}

TEST(FirstIntegrals, Examples) {
  const auto rot = first_integral_search(kRotation, 2);
  ASSERT_EQ(rot.polynomial.size(), 1u);
  EXPECT_EQ(rot.polynomial[0], P("x^2 + y^2"));
  const auto eul = first_integral_search(kEuler, 2);
  EXPECT_TRUE(eul.polynomial.empty());
  ASSERT_EQ(eul.rational.size(), 1u);
  EXPECT_EQ(eul.rational[0], R("x^2/y"));
  for (unsigned d = 1; d <= 3; ++d) {
    const auto sh = first_integral_search(kShift, d);
    EXPECT_TRUE(sh.polynomial.empty());
    EXPECT_TRUE(sh.rational.empty());
  }
}

TEST(FirstIntegrals, OutputsAreDConstants) {
  for (const DSpec& spec : {kRotation, kEuler, planar("x", "-y"), planar("2*x", "3*y")}) {
    const auto r = first_integral_search(spec, 3);
    for (const auto& p : r.polynomial) ASSERT_TRUE(is_dconstant(RatFunc(p), spec)) << p.to_string();
    for (const auto& q : r.rational) ASSERT_TRUE(is_dconstant(q, spec)) << q.to_string();
  }
  EXPECT_FALSE(first_integral_search(planar("x", "-y"), 2).polynomial.empty());  // x*y
}

TEST(LogDerivative, Examples) {
  const Signature t({"t"});
  auto T = [&](const std::string& s) { return cli::parse_ratfunc(t, s); };
  const auto a = log_derivative(T("t^2"));
  EXPECT_EQ(a.value, T("2/t"));
  EXPECT_FALSE(a.is_constant);
  const auto b = log_derivative(T("5"));
  EXPECT_TRUE(b.value.is_zero());
  EXPECT_TRUE(b.is_constant);
  const auto c = log_derivative(T("(t-1)/(t+1)"));
  EXPECT_EQ(c.value, T("2/((t-1)*(t+1))"));
  EXPECT_FALSE(c.is_constant);
  EXPECT_THROW(log_derivative(T("0")), PreconditionError);
}

TEST(LogDerivative, SolveAndGamma) {
  const Signature t({"t"});
  auto T = [&](const std::string& s) { return cli::parse_ratfunc(t, s); };
  EXPECT_EQ(solve_log_derivative(T("3/t")), T("t^3"));
  EXPECT_FALSE(solve_log_derivative(T("1/(2*t)")).has_value());
  const auto s = solve_log_derivative(T("2/((t-1)*(t+1))"));
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(log_derivative(*s).value, T("2/((t-1)*(t+1))"));
  EXPECT_TRUE(gamma_membership(0));
  EXPECT_FALSE(gamma_membership(1));
  EXPECT_FALSE(gamma_membership(Rational(-3, 2)));
}

}  // namespace
}  // namespace deltak
