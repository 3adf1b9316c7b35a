#include "deltak/cli/problem.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "deltak/cli/expr.hpp"
#include "deltak/cli/lexer.hpp"

namespace deltak::cli {

namespace {

/// A slice of a source line together with the 1-based column of its start.
struct Span {
  std::string_view text;
  std::size_t column;
};

Span trim(Span s) {
  std::size_t b = 0, e = s.text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s.text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s.text[e - 1]))) --e;
  return {s.text.substr(b, e - b), s.column + b};
}

/// Splits at `sep` outside parentheses.
std::vector<Span> split_top(Span s, char sep) {
  std::vector<Span> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i) {
    const char c = i < s.text.size() ? s.text[i] : sep;
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth <= 0) {
      out.push_back(trim({s.text.substr(start, i - start), s.column + start}));
      start = i + 1;
    }
  }
  return out;
}

/// Position of the first occurrence of `word` as a whole identifier.
std::size_t find_word(std::string_view text, std::string_view word) {
  auto is_id = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  std::size_t pos = 0;
  while ((pos = text.find(word, pos)) != std::string_view::npos) {
    const bool left = pos == 0 || !is_id(text[pos - 1]);
    const bool right = pos + word.size() >= text.size() || !is_id(text[pos + word.size()]);
    if (left && right) return pos;
    pos += word.size();
  }
  return std::string_view::npos;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::vector<std::string> parse_param_names(TokenStream& ts) {
  std::vector<std::string> names;
  ts.expect('(');
  while (true) {
    const Token t = ts.next();
    if (t.kind != Tok::ident) TokenStream::fail_at(t, "expected a parameter name");
    if (ts.is_symbol('.')) {
      // t1..ts range
      ts.expect('.');
      ts.expect('.');
      const Token last = ts.next();
      auto suffix = [](const std::string& s) -> std::optional<std::size_t> {
        if (s.size() < 2 || s[0] != 't') return std::nullopt;
        for (std::size_t i = 1; i < s.size(); ++i) {
          if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        }
        return std::stoul(s.substr(1));
      };
      auto a = suffix(t.text);
      auto b = last.kind == Tok::ident ? suffix(last.text) : std::nullopt;
      if (!a || !b || *a != 1 || *b < 1 || *b > 64) TokenStream::fail_at(last, "expected a range t1..ts");
      for (std::size_t i = 1; i <= *b; ++i) names.push_back("t" + std::to_string(i));
    } else {
      names.push_back(t.text);
    }
    if (ts.accept(')')) break;
    ts.expect(',');
  }
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) ts.fail("duplicate parameter name");
  return names;
}

struct Header {
  std::size_t m = 1, n = 1;
  std::string coeffs = "Q";
  std::vector<std::string> params;
};

Header read_header(std::string_view line, std::size_t line_no) {
  Header h;
  TokenStream ts(tokenize(line, line_no));
  std::set<std::string> seen;
  while (!ts.at_end()) {
    const Token key = ts.next();
    if (key.kind != Tok::ident || (key.text != "m" && key.text != "n" && key.text != "coeffs")) {
      TokenStream::fail_at(key, "expected header field m=, n= or coeffs=");
    }
    if (!seen.insert(key.text).second) TokenStream::fail_at(key, "duplicate header field");
    ts.expect('=');
    if (key.text == "coeffs") {
      const Token q = ts.next();
      if (q.kind != Tok::ident || q.text != "Q") TokenStream::fail_at(q, "coefficient field must be Q or Q(...)");
      if (ts.is_symbol('(')) h.params = parse_param_names(ts);
      h.coeffs = "Q";
      if (!h.params.empty()) {
        h.coeffs += "(";
        for (std::size_t i = 0; i < h.params.size(); ++i) h.coeffs += (i ? "," : "") + h.params[i];
        h.coeffs += ")";
      }
      continue;
    }
    const Token v = ts.next();
    if (v.kind != Tok::number || v.text.size() > 3) TokenStream::fail_at(v, "expected a small positive integer");
    const std::size_t x = std::stoul(v.text);
    if (x == 0) TokenStream::fail_at(v, key.text + " must be positive");
    (key.text == "m" ? h.m : h.n) = x;
  }
  if (!seen.count("m") || !seen.count("n")) throw ParseError("header must declare m= and n=", line_no, 1);
  return h;
}

DiffRingPtr build_ring(const Header& h, const std::vector<std::pair<Span, std::size_t>>& actions) {
  if (h.params.empty()) {
    if (!actions.empty()) throw ParseError("action lines need a coefficient field Q(...)", actions.front().second, 1);
    return make_diff_ring(h.m, h.n, CoefficientField::rationals());
  }
  if (actions.empty()) return make_diff_ring(h.m, h.n, CoefficientField::partial_derivatives(h.params, h.m));
  const Signature params(h.params);
  std::vector<std::vector<RatFunc>> act(h.m, std::vector<RatFunc>(params.size(), RatFunc::zero(params)));
  const NameTable table = name_table(params);
  for (const auto& [span, line_no] : actions) {
    // d<k> t<i> = expr
    const std::size_t eq = span.text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'action d<k> <param> = <expr>'", line_no, span.column);
    TokenStream ts(tokenize(span.text.substr(0, eq), line_no, span.column));
    const Token d = ts.next();
    const Token p = ts.next();
    if (!ts.at_end() || d.kind != Tok::ident || p.kind != Tok::ident || d.text.size() < 2 || d.text[0] != 'd' ||
        !std::all_of(d.text.begin() + 1, d.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      TokenStream::fail_at(d, "expected 'action d<k> <param> = <expr>'");
    }
    const std::size_t k = std::stoul(d.text.substr(1));
    if (k == 0 || k > h.m) {
      throw ParseError("derivation index " + std::to_string(k) + " exceeds m=" + std::to_string(h.m), line_no, d.column);
    }
    auto it = table.find(p.text);
    if (it == table.end()) TokenStream::fail_at(p, "unknown parameter");
    act[k - 1][it->second] = parse_ratfunc(params, span.text.substr(eq + 1), line_no, span.column + eq + 1);
  }
  CoefficientField field(params, act);
  for (std::size_t k = 0; k < h.m; ++k) {
    for (std::size_t l = k + 1; l < h.m; ++l) {
      for (std::size_t i = 0; i < params.size(); ++i) {
        if (!(field.derive(field.action(l, i), k) == field.derive(field.action(k, i), l))) {
          throw PreconditionError("declared actions of d" + std::to_string(k + 1) + " and d" + std::to_string(l + 1) +
                                  " do not commute on " + params.name(i));
        }
      }
    }
  }
  return make_diff_ring(h.m, h.n, std::move(field));
}

}  // namespace

Signature ProblemFile::height_params() const {
  if (ring->field.is_rationals()) return Signature({"t"});
  return ring->field.params();
}

std::string ProblemFile::kind_of(const std::string& name) const {
  if (polys.count(name)) return "poly";
  if (systems.count(name)) return "system";
  if (dspecs.count(name)) return "dspec";
  if (odes.count(name)) return "ode";
  for (const auto& q : queries) {
    if (q.name == name) return "query";
  }
  return "";
}

ProblemFile parse_header(std::string_view line, std::size_t line_no) {
  const Header h = read_header(line, line_no);
  ProblemFile pf;
  pf.m = h.m;
  pf.n = h.n;
  pf.coeffs = h.coeffs;
  pf.ring = build_ring(h, {});
  return pf;
}

ProblemFile parse_problem(std::string_view text) {
  // split into lines with comments removed
  std::vector<std::pair<std::string_view, std::size_t>> lines;
  {
    std::size_t start = 0, no = 1;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view l = text.substr(start, end - start);
      if (auto hash = l.find('#'); hash != std::string_view::npos) l = l.substr(0, hash);
      if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
      if (!trim({l, 1}).text.empty()) lines.emplace_back(l, no);
      if (end == text.size()) break;
      start = end + 1;
      ++no;
    }
  }
  if (lines.empty()) throw ParseError("empty problem file: expected a header 'm=<int> n=<int> coeffs=...'", 1, 1);

  const Header h = read_header(lines.front().first, lines.front().second);
  std::size_t idx = 1;
  std::vector<std::pair<Span, std::size_t>> actions;
  auto keyword = [](std::string_view l) {
    const Span s = trim({l, 1});
    std::size_t e = 0;
    while (e < s.text.size() && (std::isalnum(static_cast<unsigned char>(s.text[e])) || s.text[e] == '_')) ++e;
    return std::pair<std::string_view, Span>{s.text.substr(0, e), trim({s.text.substr(e), s.column + e})};
  };
  for (; idx < lines.size(); ++idx) {
    auto [kw, rest] = keyword(lines[idx].first);
    if (kw != "action") break;
    actions.emplace_back(rest, lines[idx].second);
  }

  ProblemFile pf;
  pf.m = h.m;
  pf.n = h.n;
  pf.coeffs = h.coeffs;
  pf.ring = build_ring(h, actions);

  auto declare = [&](const std::string& name, std::size_t line_no, std::size_t col) {
    if (!is_identifier(name)) throw ParseError("invalid name '" + name + "'", line_no, col);
    if (std::find(pf.names.begin(), pf.names.end(), name) != pf.names.end()) {
      throw ParseError("duplicate name '" + name + "'", line_no, col);
    }
    pf.names.push_back(name);
  };
  /// "NAME <sep> rest" with sep '=' or ':'.
  auto named = [](Span rest, char sep, std::size_t line_no) {
    const std::size_t p = rest.text.find(sep);
    if (p == std::string_view::npos) throw ParseError(std::string("expected '") + sep + "'", line_no, rest.column);
    return std::pair<Span, Span>{trim({rest.text.substr(0, p), rest.column}),
                                 trim({rest.text.substr(p + 1), rest.column + p + 1})};
  };

  for (; idx < lines.size(); ++idx) {
    const std::size_t line_no = lines[idx].second;
    auto [kw, rest] = keyword(lines[idx].first);
    const std::size_t kw_col = trim({lines[idx].first, 1}).column;
    if (kw == "action") throw ParseError("action lines must directly follow the header", line_no, kw_col);
    if (kw == "poly") {
      auto [name, body] = named(rest, '=', line_no);
      declare(std::string(name.text), line_no, name.column);
      pf.polys.emplace(std::string(name.text), parse_diffpoly(pf.ring, body.text, line_no, body.column));
    } else if (kw == "system") {
      auto [name, body] = named(rest, '=', line_no);
      declare(std::string(name.text), line_no, name.column);
      std::vector<DiffPoly> items;
      for (const Span& item : split_top(body, ',')) {
        if (item.text.empty()) throw ParseError("empty system item", line_no, item.column);
        auto it = pf.polys.find(std::string(item.text));
        items.push_back(it != pf.polys.end() ? it->second : parse_diffpoly(pf.ring, item.text, line_no, item.column));
      }
      pf.systems.emplace(std::string(name.text), std::move(items));
    } else if (kw == "dspec") {
      auto [head, body] = named(rest, ':', line_no);
      TokenStream ts(tokenize(head.text, line_no, head.column));
      const Token nm = ts.next();
      if (nm.kind != Tok::ident) TokenStream::fail_at(nm, "expected a dspec name");
      declare(nm.text, line_no, nm.column);
      std::vector<std::string> vars;
      ts.expect('(');
      while (true) {
        const Token v = ts.next();
        if (v.kind != Tok::ident) TokenStream::fail_at(v, "expected a variable name");
        if (std::find(vars.begin(), vars.end(), v.text) != vars.end()) TokenStream::fail_at(v, "duplicate variable");
        vars.push_back(v.text);
        if (ts.accept(')')) break;
        ts.expect(',');
      }
      if (!ts.at_end()) ts.fail("unexpected input after the variable list");
      const Signature sig(vars);
      Span fields_part = body, where_part{{}, 0};
      if (auto w = find_word(body.text, "where"); w != std::string_view::npos) {
        fields_part = trim({body.text.substr(0, w), body.column});
        where_part = trim({body.text.substr(w + 5), body.column + w + 5});
      }
      std::vector<std::vector<MultiPoly>> fields(pf.m, std::vector<MultiPoly>(vars.size(), MultiPoly(sig)));
      std::vector<std::vector<bool>> given(pf.m, std::vector<bool>(vars.size(), false));
      for (const Span& st : split_top(fields_part, ';')) {
        if (st.text.empty()) continue;
        const std::size_t eq = st.text.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'd<k> <var> = <expr>'", line_no, st.column);
        TokenStream lhs(tokenize(st.text.substr(0, eq), line_no, st.column));
        const Token d = lhs.next();
        const Token v = lhs.next();
        if (!lhs.at_end() || d.kind != Tok::ident || v.kind != Tok::ident || d.text.size() < 2 || d.text[0] != 'd' ||
            !std::all_of(d.text.begin() + 1, d.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          TokenStream::fail_at(d, "expected 'd<k> <var> = <expr>'");
        }
        const std::size_t k = std::stoul(d.text.substr(1));
        if (k == 0 || k > pf.m) {
          throw ParseError("derivation index " + std::to_string(k) + " exceeds m=" + std::to_string(pf.m), line_no, d.column);
        }
        auto vi = std::find(vars.begin(), vars.end(), v.text);
        if (vi == vars.end()) TokenStream::fail_at(v, "unknown variable");
        const std::size_t j = static_cast<std::size_t>(vi - vars.begin());
        if (given[k - 1][j]) TokenStream::fail_at(v, "field given twice");
        given[k - 1][j] = true;
        fields[k - 1][j] = parse_multipoly(sig, st.text.substr(eq + 1), line_no, st.column + eq + 1);
      }
      std::vector<MultiPoly> ideal;
      if (where_part.column != 0) {
        for (const Span& g : split_top(where_part, ',')) ideal.push_back(parse_multipoly(sig, g.text, line_no, g.column));
      }
      pf.dspecs.emplace(nm.text, NamedDSpec{DSpec(sig, std::move(fields), std::move(ideal)), {std::string(body.text)}});
    } else if (kw == "ode") {
      auto [name, body] = named(rest, ':', line_no);
      declare(std::string(name.text), line_no, name.column);
      std::vector<std::string> all{"x", "y"};
      const Signature hp = pf.height_params();
      for (const auto& p : hp.names()) {
        if (p == "x" || p == "y") throw ParseError("parameter names x and y clash with the ode variables", line_no, name.column);
        all.push_back(p);
      }
      const Signature sig(all);
      const RatFunc P = parse_ratfunc(sig, body.text, line_no, body.column);
      if (P.is_zero()) throw ParseError("P must be nonzero", line_no, body.column);
      if (P.den().involves(0) || P.den().involves(1)) throw ParseError("P must be polynomial in x and y", line_no, body.column);
      pf.odes.emplace(std::string(name.text), OdePoly(P.num()));
    } else if (kw == "query") {
      auto [name, body] = named(rest, ':', line_no);
      declare(std::string(name.text), line_no, name.column);
      Query q;
      q.name = std::string(name.text);
      q.line = line_no;
      std::size_t i = 0;
      const std::string_view b = body.text;
      while (i < b.size()) {
        while (i < b.size() && std::isspace(static_cast<unsigned char>(b[i]))) ++i;
        std::size_t j = i;
        while (j < b.size() && !std::isspace(static_cast<unsigned char>(b[j]))) ++j;
        if (j > i) {
          if (q.command.empty()) {
            q.command = std::string(b.substr(i, j - i));
          } else {
            q.args.emplace_back(b.substr(i, j - i));
          }
        }
        i = j;
      }
      if (q.command.empty()) throw ParseError("query needs a command", line_no, body.column);
      pf.queries.push_back(std::move(q));
    } else {
      throw ParseError("unknown statement '" + std::string(kw) + "'", line_no, kw_col);
    }
  }
  return pf;
}

}  // namespace deltak::cli
