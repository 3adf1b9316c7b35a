#include "deltak/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "deltak/cli/expr.hpp"
#include "deltak/exterior.hpp"
#include "deltak/initial_sets.hpp"
#include "deltak/prolongation.hpp"

namespace deltak::cli {

Json Report::to_json() const {
  Json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["results"] = results;
  j["assumptions"] = assumptions;
  j["timings"] = timings;
  return j;
}

namespace {

const std::set<std::string> kFlags{"no-check", "no-commute-check"};

}  // namespace

CommandArgs CommandArgs::parse(const std::vector<std::string>& words) {
  CommandArgs a;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string& w = words[i];
    if (w.size() > 2 && w.rfind("--", 0) == 0) {
      std::string key = w.substr(2);
      if (auto eq = key.find('='); eq != std::string::npos) {
        a.options[key.substr(0, eq)] = key.substr(eq + 1);
      } else if (kFlags.count(key)) {
        a.flags.insert(key);
      } else {
        if (i + 1 >= words.size()) throw UsageError("option --" + key + " needs a value");
        a.options[key] = words[++i];
      }
    } else {
      a.positional.push_back(w);
    }
  }
  return a;
}

std::optional<std::string> CommandArgs::option(const std::string& key) const {
  auto it = options.find(key);
  if (it == options.end()) return std::nullopt;
  return it->second;
}

unsigned CommandArgs::unsigned_option(const std::string& key, unsigned fallback) const {
  auto v = option(key);
  if (!v) return fallback;
  if (v->empty() || v->size() > 6 || !std::all_of(v->begin(), v->end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw UsageError("option --" + key + " expects a non-negative integer, got '" + *v + "'");
  }
  return static_cast<unsigned>(std::stoul(*v));
}

std::string CommandArgs::joined() const {
  std::string s;
  for (const auto& p : positional) s += (s.empty() ? "" : " ") + p;
  return s;
}

std::vector<std::string> command_names() {
  return {"analyze", "bound",     "dimfn",  "prolong",   "extract-dvariety", "darboux", "integrals",
          "height",  "solve-ode", "reduce", "wedge-check", "run"};
}

namespace {

Json point_json(const ExpPoint& p) {
  Json a = Json::array();
  for (auto x : p.r) a.push_back(x);
  a.push_back(p.var + 1);
  return a;
}

Json strings(const std::vector<MultiPoly>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

/// Resolves the object a command acts on.
std::string resolve_target(const ProblemFile& pf, CommandArgs& args, const RunOptions& opts,
                           const std::vector<std::string>& kinds, const std::string& command) {
  auto accepts = [&](const std::string& k) { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); };
  std::optional<std::string> name = args.option("target");
  if (!name) name = opts.target;
  if (!name && !args.positional.empty() && !pf.kind_of(args.positional.front()).empty()) {
    name = args.positional.front();
    args.positional.erase(args.positional.begin());
  }
  if (name) {
    const std::string kind = pf.kind_of(*name);
    if (kind.empty()) throw UsageError("unknown target '" + *name + "'");
    if (!accepts(kind)) throw UsageError(command + " expects a " + join(kinds, " or ") + ", but '" + *name + "' is a " + kind);
    return *name;
  }
  std::vector<std::string> candidates;
  for (const auto& n : pf.names) {
    if (accepts(pf.kind_of(n))) candidates.push_back(n);
  }
  if (candidates.size() == 1) return candidates.front();
  if (candidates.empty()) throw UsageError(command + " needs a " + join(kinds, " or ") + " in the problem file");
  throw UsageError(command + ": several candidates (" + join(candidates) + "); choose one with --target");
}

std::vector<DiffPoly> system_of(const ProblemFile& pf, const std::string& name) {
  if (auto it = pf.polys.find(name); it != pf.polys.end()) return {it->second};
  return pf.systems.at(name);
}

AutoreducedSet lambda_of(const ProblemFile& pf, const std::string& name) {
  return AutoreducedSet(system_of(pf, name));
}

// --- combinatorial commands ------------------------------------------------

void cmd_analyze(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions& o) {
  const std::string target = resolve_target(pf, args, o, {"system", "poly"}, "analyze");
  const auto sys = system_of(pf, target);
  r.inputs["target"] = target;
  Json elems = Json::array();
  for (const auto& f : sys) {
    Json e;
    e["poly"] = f.to_string();
    if (f.is_constant()) {
      e["leader"] = nullptr;
    } else {
      e["leader"] = f.leader().to_string();
      e["rank"] = {{"leader", f.leader().to_string()}, {"degree", f.leading_degree()}};
      e["order"] = f.order();
      e["separant"] = f.separant().to_string();
      e["initial"] = f.initial().to_string();
    }
    r.text.push_back(f.to_string() + ": leader " + (f.is_constant() ? "none" : f.leader().to_string() + ", degree " +
                                                     std::to_string(f.leading_degree()) + ", separant " + f.separant().to_string() +
                                                     ", initial " + f.initial().to_string()));
    elems.push_back(std::move(e));
  }
  const auto check = is_autoreduced(sys);
  r.results["elements"] = std::move(elems);
  r.results["autoreduced"] = check.ok;
  r.results["violation"] = check.violation ? Json(check.violation->describe()) : Json(nullptr);
  r.results["module"] = "diff_ring";
  r.text.push_back(std::string("autoreduced: ") + (check.ok ? "yes" : "no (" + check.violation->describe() + ")"));
  r.assumptions.push_back(kCharSetAssumption);
}

void cmd_bound(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions& o) {
  const std::string target = resolve_target(pf, args, o, {"system", "poly"}, "bound");
  const AutoreducedSet lambda = lambda_of(pf, target);
  const ProlongationBound b = prolongation_bound(lambda);
  r.inputs["target"] = target;
  Json rem = Json::array();
  std::vector<std::string> rem_s;
  for (const auto& p : b.removable) {
    rem.push_back(point_json(p));
    rem_s.push_back(p.to_string());
  }
  r.results["l"] = b.ell;
  r.results["l1"] = b.ell1;
  r.results["l2"] = b.ell2;
  r.results["removable"] = std::move(rem);
  r.results["module"] = "initial_sets";
  r.text.push_back("l = " + std::to_string(b.ell) + " (l1 = " + std::to_string(b.ell1) + ", l2 = " + std::to_string(b.ell2) + ")");
  r.text.push_back("removable points: " + (rem_s.empty() ? std::string("none") : join(rem_s)));
  r.assumptions.push_back(kCharSetAssumption);
}

void cmd_dimfn(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions& o) {
  const std::string target = resolve_target(pf, args, o, {"system", "poly"}, "dimfn");
  const AutoreducedSet lambda = lambda_of(pf, target);
  const ProlongationBound b = prolongation_bound(lambda);
  const unsigned T = args.unsigned_option("max-t", b.ell + 2);
  const InitialSetRep B = leaders_to_E(lambda);
  const DimensionFunction df = dimension_function(B, T);
  r.inputs["target"] = target;
  r.inputs["max_t"] = T;
  Json table = Json::array();
  bool all_ok = true;
  const bool check = !args.flags.count("no-check");
  for (unsigned t = 0; t <= T; ++t) {
    Json row;
    row["t"] = t;
    row["count"] = df.values[t];
    std::string line = "t = " + std::to_string(t) + ": |B_t| = " + std::to_string(df.values[t]);
    if (check && t >= b.ell1) {
      const int dim = saturate(prolong_ideal(lambda, t)).dimension;
      row["groebner_dimension"] = dim;
      all_ok = all_ok && dim >= 0 && static_cast<std::size_t>(dim) == df.values[t];
      line += ", saturated dimension " + std::to_string(dim);
    } else {
      row["groebner_dimension"] = nullptr;
    }
    table.push_back(std::move(row));
    r.text.push_back(line);
  }
  r.results["table"] = std::move(table);
  r.results["eventual_polynomial"] = df.eventual_polynomial.to_string("t");
  r.results["onset"] = df.onset;
  r.results["groebner_check"] = check ? Json(all_ok) : Json(nullptr);
  r.results["module"] = "initial_sets";
  r.text.push_back("eventual polynomial " + df.eventual_polynomial.to_string("t") + " for t >= " + std::to_string(df.onset));
  if (check) r.text.push_back(std::string("groebner cross-check: ") + (all_ok ? "agrees" : "DISAGREES"));
  r.assumptions.push_back(kCharSetAssumption);
}

void cmd_prolong(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions& o) {
  const std::string target = resolve_target(pf, args, o, {"system", "poly"}, "prolong");
  const AutoreducedSet lambda = lambda_of(pf, target);
  const ProlongationBound b = prolongation_bound(lambda);
  const unsigned t = args.unsigned_option("t", b.ell);
  const ProlongedIdeal ideal = prolong_ideal(lambda, t);
  const SaturatedIdeal sat = saturate(ideal);
  r.inputs["target"] = target;
  r.inputs["t"] = t;
  Json gens = Json::array();
  for (const auto& g : ideal.generators) gens.push_back(g.source.to_string());
  Json satur = Json::array();
  for (const auto& s : ideal.saturating) satur.push_back(s.to_string());
  r.results["frame_size"] = ideal.frame.coords.size();
  r.results["generators"] = std::move(gens);
  r.results["saturating"] = std::move(satur);
  r.results["saturated_dimension"] = sat.dimension;
  r.results["basis"] = strings(sat.basis.generators);
  r.results["module"] = "prolongation";
  r.text.push_back("level " + std::to_string(t) + ": " + std::to_string(ideal.generators.size()) + " generators in " +
                   std::to_string(ideal.frame.coords.size()) + " coordinates");
  for (const auto& g : ideal.generators) r.text.push_back("  " + g.source.to_string());
  r.text.push_back("saturated dimension: " + std::to_string(sat.dimension));
  r.assumptions.push_back(kCharSetAssumption);
}

void cmd_extract(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions& o) {
  const std::string target = resolve_target(pf, args, o, {"system", "poly"}, "extract-dvariety");
  const AutoreducedSet lambda = lambda_of(pf, target);
  const DVarietyData d = extract_dvariety(lambda);
  r.inputs["target"] = target;
  r.results["l"] = d.bound.ell;
  r.results["r"] = d.r;
  r.results["dimension"] = d.V_saturated.dimension;
  Json coords = Json::array();
  for (const auto& c : d.V.frame.coords) coords.push_back(c.to_string());
  Json gens = Json::array();
  for (const auto& g : d.V.generators) gens.push_back(g.source.to_string());
  Json basis = Json::array();
  for (const auto& b : d.S.basis) basis.push_back(b.to_string());
  Json fiber = Json::array();
  for (const auto& e : d.S.entries) fiber.push_back({{"coordinate", e.coordinate.to_string()}, {"value", e.value.to_string()}});
  Json section = Json::array();
  for (std::size_t k = 0; k < d.section.size(); ++k) {
    Json row = Json::array();
    for (std::size_t i = 0; i < d.section[k].size(); ++i) {
      row.push_back({{"coordinate", d.V.frame.coords[i].to_string()}, {"value", d.section[k][i].to_string()}});
    }
    section.push_back(std::move(row));
  }
  r.results["coordinates"] = std::move(coords);
  r.results["V_generators"] = std::move(gens);
  r.results["S_basis"] = std::move(basis);
  r.results["fiber"] = std::move(fiber);
  r.results["section"] = std::move(section);
  r.results["module"] = "prolongation";
  r.text.push_back("l = " + std::to_string(d.bound.ell) + ", r = " + std::to_string(d.r) + ", dim V = " +
                   std::to_string(d.V_saturated.dimension));
  for (const auto& e : d.S.entries) r.text.push_back("  " + e.coordinate.to_string() + " = " + e.value.to_string());
  for (std::size_t k = 0; k < d.section.size(); ++k) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < d.section[k].size(); ++i) {
      parts.push_back("d" + std::to_string(k + 1) + "(" + d.V.frame.coords[i].to_string() + ") = " + d.section[k][i].to_string());
    }
    r.text.push_back("  " + join(parts, "; "));
  }
  r.assumptions.push_back(kCharSetAssumption);
}

void cmd_reduce(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions&) {
  const auto modulo = args.option("modulo");
  if (!modulo) throw UsageError("reduce needs --modulo <system>");
  const std::string kind = pf.kind_of(*modulo);
  if (kind != "system" && kind != "poly") {
    throw UsageError(kind.empty() ? "unknown target '" + *modulo + "'" : "reduce --modulo expects a system, but '" + *modulo + "' is a " + kind);
  }
  if (args.positional.empty()) throw UsageError("reduce needs a polynomial");
  const std::string text = args.joined();
  DiffPoly g = pf.polys.count(text) ? pf.polys.at(text) : parse_diffpoly(pf.ring, text);
  const AutoreducedSet lambda = lambda_of(pf, *modulo);
  const RittResult res = ritt_reduce(g, lambda);
  r.inputs["poly"] = g.to_string();
  r.inputs["modulo"] = *modulo;
  Json steps = Json::array();
  for (const auto& s : res.certificate.steps) {
    steps.push_back({{"q", s.q.to_string()}, {"theta", s.theta.e}, {"element", s.element}});
  }
  r.results["remainder"] = res.remainder.to_string();
  r.results["certificate"] = {{"separant_exponents", res.certificate.separant_exponents},
                              {"initial_exponents", res.certificate.initial_exponents},
                              {"steps", std::move(steps)}};
  r.results["verified"] = verify_certificate(g, lambda, res);
  r.results["partially_reduced"] = is_partially_reduced(res.remainder, lambda);
  r.results["module"] = "diff_ring";
  r.text.push_back("remainder: " + res.remainder.to_string());
  r.text.push_back(std::string("certificate verified: ") + (r.results["verified"].get<bool>() ? "yes" : "no"));
  r.assumptions.push_back(kCharSetAssumption);
}

// --- D-spec commands ---------------------------------------------------------

DarbouxOptions darboux_options(const CommandArgs& args) {
  DarbouxOptions d;
  const std::string m = args.option("method").value_or("auto");
  if (m == "auto") {
    d.method = DarbouxMethod::automatic;
  } else if (m == "eigen") {
    d.method = DarbouxMethod::eigen;
  } else if (m == "groebner") {
    d.method = DarbouxMethod::groebner;
  } else {
    throw UsageError("--method expects eigen, groebner or auto");
  }
  d.check_commuting = !args.flags.count("no-commute-check");
  return d;
}

Json cofactor_json(const std::vector<MultiPoly>& k) { return strings(k); }

void darboux_results(Report& r, const DarbouxReport& rep) {
  Json results = Json::array();
  for (const auto& d : rep.results) {
    results.push_back({{"f", d.f.to_string()},
                       {"cofactors", cofactor_json(d.cofactors)},
                       {"degree", d.degree},
                       {"irreducibility", to_string(d.irreducibility)}});
    std::vector<std::string> ks;
    for (const auto& k : d.cofactors) ks.push_back(k.to_string());
    r.text.push_back("  " + d.f.to_string() + "  cofactor " + join(ks) + "  [" + to_string(d.irreducibility) + "]");
  }
  Json groups = Json::array();
  for (const auto& g : rep.groups) groups.push_back({{"cofactors", cofactor_json(g.cofactors)}, {"basis", strings(g.basis)}});
  r.results["method"] = to_string(rep.method);
  r.results["results"] = std::move(results);
  r.results["groups"] = std::move(groups);
  r.results["non_rational_cofactors"] = rep.non_rational_cofactors;
  if (rep.non_rational_cofactors) r.text.push_back("  (cofactors outside Q exist and are not listed)");
}

void cmd_darboux(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions& o) {
  const std::string target = resolve_target(pf, args, o, {"dspec"}, "darboux");
  const unsigned d = args.unsigned_option("deg", 2);
  const auto opts = darboux_options(args);
  const DarbouxReport rep = darboux_search(pf.dspecs.at(target).spec, d, opts);
  r.inputs["target"] = target;
  r.inputs["deg"] = d;
  r.inputs["method"] = to_string(opts.method);
  r.text.push_back("Darboux polynomials of degree <= " + std::to_string(d) + " (" + to_string(rep.method) + " path):");
  darboux_results(r, rep);
  r.results["module"] = "dvariety";
  r.assumptions.push_back("cofactor degree bounded by max_j deg d_k(x_j) - 1");
  r.assumptions.push_back("multivariate results are not factored; irreducibility is checked for univariate results only");
}

void cmd_integrals(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions& o) {
  const std::string target = resolve_target(pf, args, o, {"dspec"}, "integrals");
  const unsigned d = args.unsigned_option("deg", 2);
  const auto opts = darboux_options(args);
  const FirstIntegralReport rep = first_integral_search(pf.dspecs.at(target).spec, d, opts);
  r.inputs["target"] = target;
  r.inputs["deg"] = d;
  Json rat = Json::array();
  for (const auto& q : rep.rational) rat.push_back(q.to_string());
  r.results["polynomial"] = strings(rep.polynomial);
  r.results["rational"] = std::move(rat);
  r.results["darboux_count"] = rep.darboux.results.size();
  r.results["module"] = "dvariety";
  r.text.push_back("polynomial first integrals: " + (rep.polynomial.empty() ? std::string("none") : [&] {
    std::vector<std::string> s;
    for (const auto& p : rep.polynomial) s.push_back(p.to_string());
    return join(s);
  }()));
  r.text.push_back("rational first integrals: " + (rep.rational.empty() ? std::string("none") : [&] {
    std::vector<std::string> s;
    for (const auto& p : rep.rational) s.push_back(p.to_string());
    return join(s);
  }()));
  r.assumptions.push_back("rational integrals are built from Darboux polynomials of degree <= deg");
}

// --- heights ---------------------------------------------------------------------

void cmd_height(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions&) {
  if (args.positional.empty()) throw UsageError("height needs an expression");
  const std::string text = args.joined();
  const RatFunc g = parse_ratfunc(pf.height_params(), text);
  r.inputs["expr"] = text;
  r.results["value"] = g.to_string();
  r.results["height"] = height_ratfunc(g);
  r.results["module"] = "heights";
  r.text.push_back("h(" + g.to_string() + ") = " + std::to_string(height_ratfunc(g)));
}

void cmd_solve_ode(Report& r, const ProblemFile& pf, CommandArgs& args, const RunOptions& o) {
  const std::string target = resolve_target(pf, args, o, {"ode"}, "solve-ode");
  const unsigned D = args.unsigned_option("deg", 2);
  const unsigned wrt = args.unsigned_option("wrt", 1);
  const OdePoly& base = pf.odes.at(target);
  if (wrt == 0 || wrt > base.nparams()) throw UsageError("--wrt must name a parameter index 1.." + std::to_string(base.nparams()));
  const OdePoly P(base.poly(), wrt - 1);
  const HeightReport rep = rational_solution_search(P, D);
  r.inputs["target"] = target;
  r.inputs["P"] = P.to_string();
  r.inputs["deg"] = D;
  Json fams = Json::array();
  for (const auto& f : rep.families) {
    Json samples = Json::array();
    for (std::size_t i = 0; i < f.samples.size(); ++i) samples.push_back({{"solution", f.samples[i].to_string()}, {"height", f.heights[i]}});
    fams.push_back({{"denominator_lead", f.denominator_lead},
                    {"dimension", f.dimension},
                    {"coefficient_ideal", strings(f.coefficient_ideal.generators)},
                    {"samples", std::move(samples)},
                    {"sampled", f.sampled}});
  }
  Json sols = Json::array();
  std::vector<std::string> ss;
  for (const auto& g : rep.solutions) {
    sols.push_back({{"solution", g.to_string()}, {"height", height_ratfunc(g)}});
    ss.push_back(g.to_string());
  }
  Json sv = Json::array();
  for (const auto& v : rep.sample_values) sv.push_back(to_string(v));
  r.results["families"] = std::move(fams);
  r.results["solutions"] = std::move(sols);
  r.results["N_obs"] = rep.N_obs;
  r.results["experimental"] = rep.experimental;
  r.results["sample_values"] = std::move(sv);
  r.results["module"] = "heights";
  r.text.push_back("verified rational solutions (ansatz degree " + std::to_string(D) + "): " + join(ss));
  r.text.push_back("observed height bound N_obs = " + std::to_string(rep.N_obs));
  r.assumptions.push_back("ground field Q; only solutions in the rational function field are searched, algebraic solutions are out of scope");
  r.assumptions.push_back("positive-dimensional families are sampled at fixed parameter values");
  if (rep.experimental) r.assumptions.push_back("several parameters: experimental multivariate extension");
}

// --- exterior ---------------------------------------------------------------------

void cmd_wedge_check(Report& r, const ProblemFile&, CommandArgs& args, const RunOptions& o) {
  const unsigned count = args.unsigned_option("instances", 500);
  const Rational one(1);
  using E = ExtVector<Rational>;
  auto e = [](std::size_t i) { return E::basis(4, i, Rational(1)); };
  const std::vector<E> alphas{e(0), e(1)};
  const E omega = wedge(e(0), e(1));
  Json fixed = Json::array();
  const std::vector<std::pair<std::string, A2Verdict>> cases{
      {"beta = e1 + e2", lemma_a2_check(alphas, omega, e(0) + e(1), one)},
      {"beta = e3", lemma_a2_check(alphas, omega, e(2), one)},
      {"omega = 0", lemma_a2_check(alphas, E(4, 2), e(2), one)},
  };
  for (const auto& [name, v] : cases) {
    fixed.push_back({{"case", name}, {"verdict", to_string(v.outcome)}, {"holds", v.holds()}});
    r.text.push_back("kernel implication, " + name + ": " + to_string(v.outcome));
  }
  std::mt19937_64 rng(o.seed);
  std::map<std::string, unsigned> tally;
  bool all = true;
  for (unsigned i = 0; i < count; ++i) {
    const A2Instance inst = random_a2_instance(rng, 6);
    const A2Verdict v = lemma_a2_check(inst.alphas, inst.omega, inst.beta, one);
    ++tally[to_string(v.outcome)];
    all = all && v.holds();
  }
  Json t = Json::object();
  for (const auto& [k, v] : tally) t[k] = v;

  const Signature ts({"t"});
  const RatFunc T = RatFunc::variable(ts, 0), uno = RatFunc::constant(ts, 1);
  using R = ExtVector<RatFunc>;
  Json probes = Json::array();
  auto probe = [&](const std::string& name, const std::vector<R>& U, unsigned ell) {
    const A1Report a = lemma_a1_span_probe(U, ell);
    probes.push_back({{"case", name},  {"ell", ell},           {"dim_k_U", a.dim_k_U},       {"dim_K_U", a.dim_K_U},
                      {"dim_B", a.dim_B}, {"dim_A", a.dim_A},   {"kernel_dim", a.kernel_dim}, {"containment", a.containment}});
    r.text.push_back("span probe, " + name + ": dim_Q U = " + std::to_string(a.dim_k_U) + ", dim_Q(t) U = " +
                     std::to_string(a.dim_K_U) + ", dim B = " + std::to_string(a.dim_B) +
                     ", containment " + (a.containment ? "ok" : "FAILED"));
  };
  probe("U = <e1, e2>, l = 2", {R::basis(3, 0, uno), R::basis(3, 1, uno)}, 2);
  probe("U = <e1, t e1>, l = 1", {R::basis(3, 0, uno), R::basis(3, 0, T)}, 1);
  probe("U = 0, l = 1", {}, 1);

  r.inputs["instances"] = count;
  r.inputs["seed"] = o.seed;
  r.results["kernel_examples"] = std::move(fixed);
  r.results["kernel_random"] = {{"instances", count}, {"all_hold", all}, {"verdicts", std::move(t)}};
  r.results["span_probes"] = std::move(probes);
  r.results["module"] = "exterior";
  r.text.push_back(std::to_string(count) + " random kernel-implication instances: " + (all ? "all confirmed" : "COUNTEREXAMPLE FOUND"));
}

using Handler = void (*)(Report&, const ProblemFile&, CommandArgs&, const RunOptions&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"analyze", cmd_analyze},     {"bound", cmd_bound},         {"dimfn", cmd_dimfn},
      {"prolong", cmd_prolong},     {"extract-dvariety", cmd_extract}, {"darboux", cmd_darboux},
      {"integrals", cmd_integrals}, {"height", cmd_height},       {"solve-ode", cmd_solve_ode},
      {"reduce", cmd_reduce},       {"wedge-check", cmd_wedge_check},
  };
  return h;
}

}  // namespace

Report run_command(const std::string& command, const std::vector<std::string>& words, const ProblemFile& pf,
                   const RunOptions& options) {
  Report r;
  r.command = command;
  const auto start = std::chrono::steady_clock::now();
  CommandArgs args = CommandArgs::parse(words);
  if (command == "run") {
    Json subs = Json::array();
    for (const auto& q : pf.queries) {
      RunOptions sub = options;
      sub.target.reset();
      Report s = run_command(q.command, q.args, pf, sub);
      s.inputs["query"] = q.name;
      r.text.push_back("== " + q.name + ": " + q.command + (q.args.empty() ? "" : " " + join(q.args, " ")));
      for (auto& l : s.text) r.text.push_back(std::move(l));
      s.text.clear();
      subs.push_back(s.to_json());
      for (const auto& a : s.assumptions) {
        if (std::find(r.assumptions.begin(), r.assumptions.end(), a) == r.assumptions.end()) r.assumptions.push_back(a);
      }
    }
    r.inputs["queries"] = pf.queries.size();
    r.results["reports"] = std::move(subs);
  } else {
    auto it = handlers().find(command);
    if (it == handlers().end()) throw UsageError("unknown command '" + command + "'; expected one of " + join(command_names()));
    it->second(r, pf, args, options);
  }
  if (options.timings) {
    r.timings["total_us"] =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

std::string render_text(const Report& r) {
  std::ostringstream out;
  for (const auto& l : r.text) out << l << '\n';
  for (const auto& a : r.assumptions) out << "assumption: " << a << '\n';
  if (!r.timings.empty()) out << "timings: " << r.timings.dump() << '\n';
  return out.str();
}

}  // namespace deltak::cli
