// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "deltak/cli/commands.hpp"
#include "deltak/cli/expr.hpp"
#include "deltak/cli/problem.hpp"
#include "deltak/diff_ring.hpp"
#include "deltak/dvariety.hpp"
#include "deltak/exterior.hpp"
#include "deltak/heights.hpp"
#include "deltak/initial_sets.hpp"
#include "deltak/prolongation.hpp"
#include "testing.hpp"

namespace {

using namespace deltak;
namespace dt = deltak::testing;

/// Thrown to stop a criterion at its first counterexample.
struct Failure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

struct Criterion {
  int id;
  std::string title;
  long limit_s;
  std::function<std::string()> body;  // returns a short summary
};

// 1
std::string diff_ring_laws() {
  auto rng = dt::make_rng(1001);
  std::size_t checked = 0;
  for (int batch = 0; batch < 50; ++batch) {
    const std::size_t m = static_cast<std::size_t>(dt::uniform(rng, 1, 3));
    const std::size_t n = static_cast<std::size_t>(dt::uniform(rng, 1, 2));
    const DiffRingPtr ring = make_diff_ring(m, n);
    for (int i = 0; i < 20; ++i, ++checked) {
      const DiffPoly f = dt::random_diffpoly(ring, rng);
      const DiffPoly g = dt::random_diffpoly(ring, rng);
      for (std::size_t a = 0; a < m; ++a) {
        require((f * g).derive(a) == f * g.derive(a) + g * f.derive(a), "Leibniz fails for " + f.to_string());
        for (std::size_t b = a + 1; b < m; ++b) {
          require(f.derive(a).derive(b) == f.derive(b).derive(a), "commutation fails for " + f.to_string());
        }
      }
      if (!f.is_constant()) require(poly_rank_compare(f.separant(), f) < 0, "rank(S_f) >= rank(f) for " + f.to_string());
    }
  }
  return std::to_string(checked) + " polynomials";
}

// 2
std::string ritt_certificates() {
  auto rng = dt::make_rng(1002);
  std::size_t steps = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t m = static_cast<std::size_t>(dt::uniform(rng, 1, 3));
    const std::size_t n = static_cast<std::size_t>(dt::uniform(rng, 1, 2));
    const DiffRingPtr ring = make_diff_ring(m, n);
    const AutoreducedSet a = dt::random_autoreduced(ring, rng, 2);
    const DiffPoly g = dt::random_diffpoly(ring, rng);
    const RittResult res = ritt_reduce(g, a);
    require(verify_certificate(g, a, res), "certificate does not re-expand for " + g.to_string());
    require(is_partially_reduced(res.remainder, a), "remainder not partially reduced: " + res.remainder.to_string());
    steps += res.certificate.steps.size();
  }
  return "200 pairs, " + std::to_string(steps) + " reduction steps";
}

// 3
std::string basis_oracle() {
  std::size_t cases = 0;
  for (const auto& entry : dt::corpus()) {
    const InitialSetRep b = leaders_to_E(entry.lambda);
    const auto bound = prolongation_bound(entry.lambda);
    for (unsigned t = 0; t <= bound.ell + 2; ++t, ++cases) {
      // below the top order no prolongation lands in the frame
      const ProlongedIdeal ideal = t < bound.ell1 ? prolonged_generators(entry.lambda, t) : prolong_ideal(entry.lambda, t);
      const int dim = saturate(ideal).dimension;
      require(dim == static_cast<int>(count_Bt(b, t)), entry.label + " t=" + std::to_string(t) + ": dimension " +
                                                            std::to_string(dim) + " vs |B_t| " +
                                                            std::to_string(count_Bt(b, t)));
    }
  }
  return std::to_string(cases) + " (entry, t) cases";
}

// 4
std::string bound_values() {
  const std::vector<unsigned> ell{1, 1, 2, 2};
  const std::vector<std::vector<std::string>> removable{{"(0,1)"}, {"(0,1)"}, {}, {"(1,1,1)"}};
  const auto corpus = dt::corpus();
  std::ostringstream summary;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto b = prolongation_bound(corpus[i].lambda);
    std::vector<std::string> got;
    for (const auto& p : b.removable) got.push_back(p.to_string());
    require(b.ell == ell[i], corpus[i].label + ": l = " + std::to_string(b.ell));
    require(got == removable[i], corpus[i].label + ": removable set differs");
    summary << (i ? ", " : "l = ") << b.ell;
  }
  return summary.str();
}

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

// 5
std::string removable_equivalence() {
  auto rng = dt::make_rng(1005);
  std::size_t total = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t m = static_cast<std::size_t>(dt::uniform(rng, 1, 3));
    const std::size_t n = static_cast<std::size_t>(dt::uniform(rng, 1, 2));
    const InitialSetRep b = dt::random_initial_set(rng, m, n, 4);
    unsigned bound = static_cast<unsigned>(m);
    for (const auto& e : b.leaders()) bound = std::max(bound, e.norm() + static_cast<unsigned>(m));
    std::vector<ExpPoint> scan;
    for (const auto& p : simplex(m, n, bound)) {
      if (!b.contains(p)) continue;
      bool maximal = true;
      for (std::size_t k = 0; k < m && maximal; ++k) {
        ExpPoint q = p;
        ++q.r[k];
        maximal = !b.contains(q);
      }
      if (maximal) scan.push_back(p);
    }
    std::sort(scan.begin(), scan.end());
    auto box = removable_points(b);
    std::sort(box.begin(), box.end());
    require(box == scan, "removable points differ for set " + std::to_string(i));
    total += box.size();
  }
  return "100 sets, " + std::to_string(total) + " removable points";
}

// 6
std::string darboux_engine() {
  const Signature xy({"x", "y"});
  auto P = [&](const std::string& s) { return cli::parse_multipoly(xy, s); };
  auto planar = [&](const std::string& a, const std::string& b) { return DSpec(xy, {{P(a), P(b)}}); };
  const DSpec rot = planar("-y", "x"), shift = planar("1", "y"), euler = planar("x", "2*y");

  const auto r = darboux_search(rot, 2);
  require(r.results.size() == 1 && r.results[0].f == P("x^2 + y^2") && r.results[0].cofactors[0].is_zero(),
          "rotation: expected x^2 + y^2 with cofactor 0");
  for (unsigned d = 1; d <= 4; ++d) {
    const auto s = darboux_search(shift, d);
    require(s.results.size() == d, "shift: wrong number of results at d=" + std::to_string(d));
    for (unsigned k = 0; k < d; ++k) require(s.results[k].f == P("y").pow(k + 1), "shift: non-power of y at d=" + std::to_string(d));
  }
  for (unsigned d = 1; d <= 3; ++d) {
    const auto fi = first_integral_search(shift, d);
    require(fi.polynomial.empty() && fi.rational.empty(), "shift: unexpected first integral at d=" + std::to_string(d));
  }
  const auto fe = first_integral_search(euler, 2);
  require(std::find(fe.rational.begin(), fe.rational.end(), cli::parse_ratfunc(xy, "x^2/y")) != fe.rational.end(),
          "euler: x^2/y missing");
  std::size_t compared = 0;
  for (const DSpec& spec : {rot, shift, euler, planar("x + y", "y"), planar("y", "0")}) {
    for (unsigned d = 1; d <= 3; ++d, ++compared) {
      DarbouxOptions e, g;
      e.method = DarbouxMethod::eigen;
      g.method = DarbouxMethod::groebner;
      const auto a = darboux_search(spec, d, e), b = darboux_search(spec, d, g);
      require(a.results.size() == b.results.size(), "paths disagree on result count");
      for (std::size_t i = 0; i < a.results.size(); ++i) {
        require(a.results[i].f == b.results[i].f && a.results[i].cofactors == b.results[i].cofactors, "paths disagree");
      }
    }
  }
  return "examples ok, " + std::to_string(compared) + " path comparisons";
}

// 7
std::string appendix_suite() {
  auto rng = dt::make_rng(1007);
  const Rational one(1);
  std::size_t confirmed = 0;
  for (int i = 0; i < 500; ++i) {
    const auto inst = random_a2_instance(rng, 6);
    require(inst.omega.dim() <= 6, "instance dimension above 6");
    const auto v = lemma_a2_check(inst.alphas, inst.omega, inst.beta, one);
    require(v.outcome == A2Outcome::confirmed, std::string("kernel-implication instance ") + std::to_string(i) + ": " + to_string(v.outcome));
    ++confirmed;
  }
  using E = ExtVector<Rational>;
  auto same = [](const E& a, const E& b) { return (a.is_zero() && b.is_zero()) || a == b; };
  for (int i = 0; i < 1000; ++i) {
    const std::size_t dim = static_cast<std::size_t>(dt::uniform(rng, 1, 6));
    const int top = std::min<int>(3, static_cast<int>(dim));
    const unsigned p = static_cast<unsigned>(dt::uniform(rng, 0, top));
    const unsigned q = static_cast<unsigned>(dt::uniform(rng, 0, top));
    const E a = dt::random_ext(rng, dim, p), b = dt::random_ext(rng, dim, q), c = dt::random_ext(rng, dim, q);
    const Rational s = dt::random_rational(rng);
    require(same(wedge(a, b + c), wedge(a, b) + wedge(a, c)), "additivity");
    require(same(wedge(s * a, b), s * wedge(a, b)), "homogeneity");
    const E ba = wedge(b, a);
    require(same(wedge(a, b), (p * q) % 2 == 0 ? ba : -ba), "graded commutation");
    const E v = dt::random_ext(rng, dim, 1);
    require(wedge(v, v).is_zero(), "alternation");
  }
  return std::to_string(confirmed) + " kernel-implication instances, 1000 axiom instances";
}

// 8
std::string desk_heights() {
  const Signature xyt({"x", "y", "t"});
  const OdePoly riccati(cli::parse_multipoly(xyt, "y + x^2"));
  const OdePoly expo(cli::parse_multipoly(xyt, "y - x"));
  std::size_t samples = 0;
  for (unsigned D = 1; D <= 3; ++D) {
    const auto start = std::chrono::steady_clock::now();
    const auto r = rational_solution_search(riccati, D);
    require(r.N_obs == 1, "y + x^2: N_obs = " + std::to_string(r.N_obs) + " at D=" + std::to_string(D));
    for (const auto& g : r.solutions) require(verify_ode_solution(riccati, g), "unverified sample " + g.to_string());
    samples += r.solutions.size();
    const auto e = rational_solution_search(expo, D);
    require(e.solutions.size() == 1 && e.solutions[0].is_zero(), "y - x: expected only 0 at D=" + std::to_string(D));
    const auto s = std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - start).count();
    require(s < 120, "D=" + std::to_string(D) + " exceeded 2 min");
  }
  return "N_obs = 1 for D = 1..3, " + std::to_string(samples) + " samples verified";
}

// 9
std::string height_axioms() {
  auto rng = dt::make_rng(1009);
  const Signature t({"t"});
  std::vector<RatFunc> samples;
  for (int i = 0; i < 500; ++i) samples.push_back(dt::random_ratfunc(t, rng, 6));
  const auto v = height_axioms_check(samples);
  require(v.ok, v.failure);
  return std::to_string(v.checks) + " checks";
}

int run_binary(const std::string& args, const std::string& out_path) {
  const std::string cmd = std::string(DELTAK_BINARY) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 10
std::string cli_round_trip() {
  auto rng = dt::make_rng(1010);
  const std::vector<DiffRingPtr> rings{make_diff_ring(1, 1), make_diff_ring(2, 2), make_diff_ring(3, 1),
                                       make_diff_ring(2, 1, CoefficientField::partial_derivatives({"t"}, 2))};
  for (int i = 0; i < 500; ++i) {
    const DiffRingPtr& ring = rings[static_cast<std::size_t>(i) % rings.size()];
    const DiffPoly p = dt::random_diffpoly(ring, rng);
    const std::string text = p.to_string();
    require(cli::parse_diffpoly(ring, text) == p, "round trip fails for " + text);
  }

  const auto pf = cli::parse_problem(dt::sample_problem());
  cli::RunOptions o;
  o.seed = dt::seed();
  std::size_t validated = 0;
  for (const auto& q : pf.queries) {
    const std::string violation = dt::schema_violation(cli::run_command(q.command, q.args, pf, o).to_json().dump());
    require(violation.empty(), q.name + ": " + violation);
    ++validated;
  }

  const std::string dir = std::filesystem::temp_directory_path().string();
  const std::string in = dir + "/deltak_acceptance.dk", a = dir + "/deltak_acceptance_a.json",
                    b = dir + "/deltak_acceptance_b.json";
  std::ofstream(in) << dt::sample_problem();
  const std::string args = "--json --seed " + std::to_string(o.seed) + " " + in + " run";
  require(run_binary(args, a) == 0 && run_binary(args, b) == 0, "binary exited nonzero");
  const std::string first = slurp(a);
  require(!first.empty() && first == slurp(b), "output bytes differ between runs");
  const std::string violation = dt::schema_violation(first);
  require(violation.empty(), "binary output: " + violation);
  ++validated;
  return "500 round trips, " + std::to_string(validated) + " reports validated, identical bytes";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "differential-ring laws", 60, diff_ring_laws},
      {2, "Ritt-reduction certificates", 120, ritt_certificates},
      {3, "basis oracle equivalence", 300, basis_oracle},
      {4, "prolongation-bound values", 10, bound_values},
      {5, "removable-point brute force", 60, removable_equivalence},
      {6, "Darboux engine", 60, darboux_engine},
      {7, "exterior lemma suite", 60, appendix_suite},
      {8, "desk-scale heights", 360, desk_heights},
      {9, "height axioms", 30, height_axioms},
      {10, "CLI round trip and schema", 60, cli_round_trip},
  };
  std::cout << "seed " << dt::seed() << '\n';
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.body();
    } catch (const Failure& f) {
      ok = false;
      detail = f.what;
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const long ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    if (ok && ms >= c.limit_s * 1000) {
      ok = false;
      detail += "; time limit exceeded";
    }
    failures += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << c.id << ". " << c.title << " [" << ms << " ms / " << c.limit_s
              << " s] " << detail << '\n';
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed")) << '\n';
  return failures ? 1 : 0;
}
