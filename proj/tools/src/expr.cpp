#include "deltak/cli/expr.hpp"

#include <cctype>

namespace deltak::cli {

namespace {

/// Positive decimal suffix after `prefix`, e.g. "d12" -> 12.
std::optional<std::size_t> indexed(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  }
  if (name.size() > 7) return std::nullopt;
  return std::stoul(name.substr(1));
}

}  // namespace

NameTable name_table(const Signature& sig) {
  NameTable t;
  for (std::size_t i = 0; i < sig.size(); ++i) t.emplace(sig.name(i), i);
  // t and t1 name the same parameter when only one of them is declared
  if (auto it = t.find("t"); it != t.end()) t.emplace("t1", it->second);
  if (auto it = t.find("t1"); it != t.end()) t.emplace("t", it->second);
  return t;
}

DiffPolicy::DiffPolicy(DiffRingPtr r) : ring(std::move(r)), params(name_table(ring->field.params())) {}

std::optional<DiffPoly> DiffPolicy::identifier(const Token& t) const {
  if (t.text == "u") return DiffPoly::indet(ring, std::vector<std::uint32_t>(ring->m, 0), 0);
  if (auto j = indexed(t.text, 'u')) {
    if (*j == 0 || *j > ring->n) {
      throw ParseError("variable index " + std::to_string(*j) + " exceeds n=" + std::to_string(ring->n), t.line, t.column);
    }
    return DiffPoly::indet(ring, std::vector<std::uint32_t>(ring->m, 0), *j - 1);
  }
  if (auto it = params.find(t.text); it != params.end()) return DiffPoly::constant(ring, ring->field.param(it->second));
  return std::nullopt;
}

std::optional<std::size_t> DiffPolicy::derivation(const Token& t) const {
  auto k = indexed(t.text, 'd');
  if (!k) return std::nullopt;
  if (*k == 0 || *k > ring->m) {
    throw ParseError("derivation index " + std::to_string(*k) + " exceeds m=" + std::to_string(ring->m), t.line, t.column);
  }
  return *k - 1;
}

DiffPoly DiffPolicy::derive(const DiffPoly& v, std::size_t k, unsigned e) const {
  DiffPoly r = v;
  for (unsigned i = 0; i < e; ++i) r = r.derive(k);
  return r;
}

DiffPoly DiffPolicy::divide(const DiffPoly& a, const DiffPoly& b, const Token& at) const {
  if (!b.is_constant()) throw ParseError("division by a non-constant differential polynomial", at.line, at.column);
  const RatFunc c = b.constant_term();
  if (c.is_zero()) throw ParseError("division by zero", at.line, at.column);
  return c.inverse() * a;
}

std::optional<RatFunc> RatPolicy::identifier(const Token& t) const {
  if (auto it = names.find(t.text); it != names.end()) return RatFunc::variable(sig, it->second);
  return std::nullopt;
}

RatFunc RatPolicy::divide(const RatFunc& a, const RatFunc& b, const Token& at) const {
  if (b.is_zero()) throw ParseError("division by zero", at.line, at.column);
  return a / b;
}

std::optional<MultiPoly> PolyPolicy::identifier(const Token& t) const {
  if (auto it = names.find(t.text); it != names.end()) return MultiPoly::variable(sig, it->second);
  return std::nullopt;
}

MultiPoly PolyPolicy::divide(const MultiPoly& a, const MultiPoly& b, const Token& at) const {
  if (!b.is_constant()) throw ParseError("division by a non-constant polynomial", at.line, at.column);
  if (b.is_zero()) throw ParseError("division by zero", at.line, at.column);
  return a * MultiPoly::constant(sig, 1 / b.leading_coefficient());
}

DiffPoly parse_diffpoly(const DiffRingPtr& ring, std::string_view text, std::size_t line, std::size_t column) {
  return parse_with(DiffPolicy(ring), text, line, column);
}

RatFunc parse_ratfunc(const Signature& sig, std::string_view text, std::size_t line, std::size_t column) {
  return parse_with(RatPolicy(sig), text, line, column);
}

MultiPoly parse_multipoly(const Signature& sig, std::string_view text, std::size_t line, std::size_t column) {
  return parse_with(PolyPolicy(sig), text, line, column);
}

}  // namespace deltak::cli
