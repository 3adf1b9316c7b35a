#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "deltak/diff_ring.hpp"
#include "deltak/dvariety.hpp"
#include "deltak/heights.hpp"

namespace deltak::cli {

struct Query {
  std::string name;
  std::string command;
  std::vector<std::string> args;  // whitespace-separated words after the command
  std::size_t line = 0;
};

struct NamedDSpec {
  DSpec spec;
  std::vector<std::string> source;  // statement text, for reports
};

/// A parsed problem file.
///
///   m=<int> n=<int> coeffs=Q|Q(t)|Q(t1,t2)|Q(t1..ts)
///   action d<k> t<i> = <expr in t>
///   poly NAME = <differential polynomial>
///   system NAME = <item>, <item>, ...          items are expressions or poly names
///   dspec NAME(x,y): d1 x = -y; d1 y = x [where <poly>, ...]
///   ode NAME: <expr in x, y and the parameters>
///   query NAME: <command> <args...>
///
/// '#' starts a comment. Without action lines Q(t1..ts) carries
/// d_k t_i = [k == i].
struct ProblemFile {
  std::size_t m = 1;
  std::size_t n = 1;
  std::string coeffs = "Q";
  DiffRingPtr ring;

  std::vector<std::string> names;  // declaration order
  std::map<std::string, DiffPoly> polys;
  std::map<std::string, std::vector<DiffPoly>> systems;
  std::map<std::string, NamedDSpec> dspecs;
  std::map<std::string, OdePoly> odes;
  std::vector<Query> queries;

  /// Parameter signature for height and ode expressions (t when coeffs=Q).
  Signature height_params() const;
  /// What a name denotes: "poly", "system", "dspec", "ode", "query" or "".
  std::string kind_of(const std::string& name) const;
};

ProblemFile parse_problem(std::string_view text);

/// Header line "m=.. n=.. coeffs=.." on its own.
ProblemFile parse_header(std::string_view line, std::size_t line_no = 1);

}  // namespace deltak::cli
