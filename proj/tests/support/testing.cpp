#include "testing.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <rapidjson/document.h>
#include <rapidjson/error/en.h>
#include <rapidjson/schema.h>
#include <rapidjson/stringbuffer.h>

namespace deltak::testing {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

}  // namespace

std::uint64_t seed() {
  if (const char* env = std::getenv("DELTA_KERNEL_SEED"); env && *env) return std::stoull(env);
  return kDefaultSeed;
}

std::mt19937_64 make_rng(std::uint64_t stream) {
  std::seed_seq seq{seed(), stream};
  return std::mt19937_64(seq);
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational random_rational(std::mt19937_64& rng, bool nonzero) {
  int n = uniform(rng, -5, 5);
  while (nonzero && n == 0) n = uniform(rng, -5, 5);
  Rational q(n, uniform(rng, 1, 4));
  q.canonicalize();
  return q;
}

MultiPoly random_poly(const Signature& sig, std::mt19937_64& rng, unsigned terms, unsigned max_deg) {
  std::vector<Term> ts;
  const unsigned count = static_cast<unsigned>(uniform(rng, 0, static_cast<int>(terms)));
  for (unsigned i = 0; i < count; ++i) {
    Monomial m(sig.size(), 0);
    unsigned budget = static_cast<unsigned>(uniform(rng, 0, static_cast<int>(max_deg)));
    while (budget > 0 && !m.empty()) {
      ++m[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(sig.size()) - 1))];
      --budget;
    }
    ts.push_back({std::move(m), random_rational(rng, true)});
  }
  return MultiPoly::from_terms(sig, std::move(ts));
}

RatFunc random_ratfunc(const Signature& sig, std::mt19937_64& rng, unsigned max_deg) {
  MultiPoly den = random_poly(sig, rng, 3, max_deg);
  while (den.is_zero()) den = random_poly(sig, rng, 3, max_deg);
  return RatFunc(random_poly(sig, rng, 3, max_deg), den);
}

AlgIndet random_indet(const DiffRing& ring, std::mt19937_64& rng, unsigned max_order) {
  AlgIndet v;
  v.theta.e.assign(ring.m, 0);
  v.var = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ring.n) - 1));
  const unsigned ord = static_cast<unsigned>(uniform(rng, 0, static_cast<int>(max_order)));
  for (unsigned i = 0; i < ord; ++i) ++v.theta.e[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ring.m) - 1))];
  return v;
}

namespace {

RatFunc random_coefficient(const DiffRing& ring, std::mt19937_64& rng) {
  if (ring.field.is_rationals() || uniform(rng, 0, 3) != 0) return ring.field.constant(random_rational(rng, true));
  const Signature& p = ring.field.params();
  const RatFunc t = ring.field.param(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(p.size()) - 1)));
  return t + ring.field.constant(random_rational(rng));
}

DiffPoly random_monomial(const DiffRingPtr& ring, std::mt19937_64& rng, unsigned max_order, unsigned max_degree) {
  DiffPoly m = DiffPoly::constant(ring, random_coefficient(*ring, rng));
  const unsigned deg = static_cast<unsigned>(uniform(rng, 0, static_cast<int>(max_degree)));
  for (unsigned i = 0; i < deg; ++i) m = m * DiffPoly::indet(ring, random_indet(*ring, rng, max_order));
  return m;
}

/// Random polynomial in indeterminates ranked strictly below v.
DiffPoly random_lower(const DiffRingPtr& ring, std::mt19937_64& rng, const AlgIndet& v, unsigned terms) {
  DiffPoly acc(ring);
  for (unsigned i = 0; i < terms; ++i) {
    DiffPoly m = DiffPoly::constant(ring, random_coefficient(*ring, rng));
    const unsigned deg = static_cast<unsigned>(uniform(rng, 0, 2));
    for (unsigned k = 0; k < deg; ++k) {
      const AlgIndet w = random_indet(*ring, rng, v.order());
      if (rank_compare(w, v) < 0) m = m * DiffPoly::indet(ring, w);
    }
    acc += m;
  }
  return acc;
}

DiffPoly random_element(const DiffRingPtr& ring, std::mt19937_64& rng, unsigned max_order) {
  while (true) {
    const AlgIndet v = random_indet(*ring, rng, max_order);
    const unsigned d = static_cast<unsigned>(uniform(rng, 1, 2));
    DiffPoly initial = DiffPoly::constant(ring, random_rational(rng, true));
    if (uniform(rng, 0, 2) == 0) initial += random_lower(ring, rng, v, 1);
    if (initial.is_zero()) continue;
    DiffPoly f = initial * DiffPoly::indet(ring, v, d) + random_lower(ring, rng, v, 2);
    if (d == 2 && uniform(rng, 0, 1) == 0) f += random_lower(ring, rng, v, 1) * DiffPoly::indet(ring, v);
    if (!f.is_constant() && f.leader() == v) return f;
  }
}

}  // namespace

DiffPoly random_diffpoly(const DiffRingPtr& ring, std::mt19937_64& rng, const DiffPolyShape& shape) {
  DiffPoly acc(ring);
  const unsigned terms = static_cast<unsigned>(uniform(rng, 1, static_cast<int>(shape.max_terms)));
  for (unsigned i = 0; i < terms; ++i) acc += random_monomial(ring, rng, shape.max_order, shape.max_degree);
  return acc;
}

AutoreducedSet random_autoreduced(const DiffRingPtr& ring, std::mt19937_64& rng, unsigned max_order) {
  while (true) {
    std::vector<DiffPoly> elems{random_element(ring, rng, max_order)};
    if (uniform(rng, 0, 1) == 1) elems.push_back(random_element(ring, rng, max_order));
    if (is_autoreduced(elems).ok) return AutoreducedSet(std::move(elems));
  }
}

InitialSetRep random_initial_set(std::mt19937_64& rng, std::size_t m, std::size_t n, unsigned max_coord) {
  std::vector<ExpPoint> e;
  const int count = uniform(rng, 0, 4);
  for (int i = 0; i < count; ++i) {
    ExpPoint p;
    p.var = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    for (std::size_t k = 0; k < m; ++k) p.r.push_back(static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(max_coord))));
    e.push_back(std::move(p));
  }
  return InitialSetRep(m, n, std::move(e));
}

std::vector<CorpusEntry> corpus() {
  const DiffRingPtr r1 = make_diff_ring(1, 1), r2 = make_diff_ring(2, 1);
  auto make = [](const DiffRingPtr& ring, std::vector<std::string> texts) {
    std::vector<DiffPoly> ps;
    for (const auto& t : texts) ps.push_back(cli::parse_diffpoly(ring, t));
    return AutoreducedSet(std::move(ps));
  };
  return {
      {"{d1*u1 - u1}", make(r1, {"d1*u1 - u1"})},
      {"{(d1*u1)^2 - u1}", make(r1, {"(d1*u1)^2 - u1"})},
      {"{d2*u1 - d1^2*u1}", make(r2, {"d2*u1 - d1^2*u1"})},
      {"{d1^2*u1 - u1, d2^2*u1 - u1}", make(r2, {"d1^2*u1 - u1", "d2^2*u1 - u1"})},
  };
}

ExtVector<Rational> random_ext(std::mt19937_64& rng, std::size_t dim, unsigned grade, unsigned terms) {
  ExtVector<Rational> v(dim, grade);
  if (grade > dim) return v;
  std::vector<std::uint32_t> idx(dim);
  for (std::size_t i = 0; i < dim; ++i) idx[i] = static_cast<std::uint32_t>(i);
  for (unsigned t = 0; t < terms; ++t) {
    std::shuffle(idx.begin(), idx.end(), rng);
    IndexSubset s(idx.begin(), idx.begin() + grade);
    std::sort(s.begin(), s.end());
    v.add(s, random_rational(rng));
  }
  return v;
}

std::string sample_problem() {
  return R"(m=2 n=1 coeffs=Q
system L = d1^2*u1 - u1, d2^2*u1 - u1
system H = d2*u1 - d1^2*u1
poly g = d1^3*d2*u1 + u1
dspec rot(x,y): d1 x = -y; d1 y = x
dspec eul(x,y): d1 x = x; d1 y = 2*y
ode E: y + x^2
query q01: analyze L
query q02: bound L
query q03: dimfn H --max-t 4
query q04: prolong L --t 2
query q05: extract-dvariety L
query q06: reduce g --modulo L
query q07: darboux rot --deg 2
query q08: integrals eul --deg 2
query q09: height (t^2+1)/(t-1)
query q10: solve-ode E --deg 1
query q11: wedge-check --instances 40
)";
}

std::string schema_violation(const std::string& json_text) {
  static const std::string schema_text = [] {
    std::ifstream in(DELTAK_REPORT_SCHEMA);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }();
  rapidjson::Document sd;
  if (sd.Parse(schema_text.c_str()).HasParseError()) return "schema file unreadable: " DELTAK_REPORT_SCHEMA;
  const rapidjson::SchemaDocument schema(sd);
  rapidjson::Document doc;
  if (doc.Parse(json_text.c_str()).HasParseError()) {
    return std::string("invalid JSON: ") + rapidjson::GetParseError_En(doc.GetParseError());
  }
  rapidjson::SchemaValidator validator(schema);
  if (doc.Accept(validator)) return {};
  rapidjson::StringBuffer where, rule;
  validator.GetInvalidSchemaPointer().StringifyUriFragment(rule);
  validator.GetInvalidDocumentPointer().StringifyUriFragment(where);
  return std::string("at ") + where.GetString() + ": violates " + rule.GetString() + " (" +
         validator.GetInvalidSchemaKeyword() + ")";
}

}  // namespace deltak::testing
